//! Two-qubit entanglement via the concurrence.
//!
//! For a two-qubit density matrix ρ the concurrence is
//! max(0, λ₁ − λ₂ − λ₃ − λ₄), where the λ_i (descending) are the square
//! roots of the eigenvalues of ρρ̃ and ρ̃ = (σ_y⊗σ_y)ρ*(σ_y⊗σ_y) is the
//! spin-flipped state, conjugation taken in the fixed product basis of
//! [`crate::hamiltonian`]. It is 0 exactly for separable states and 1
//! for maximally entangled ones.
//!
//! ρρ̃ is not Hermitian, but it is similar to √ρ·ρ̃·√ρ, which is — so the
//! spectrum comes out of the Hermitian eigensolver and the crate needs
//! no general-purpose eigenroutine.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::eig::{hermitian_eig, spectral_function};
use crate::error::{Result, SpinError};
use crate::matrix::ComplexMatrix;
use crate::tol;

/// Concurrence value with the spin-flip spectrum behind it.
#[derive(Clone, Copy, Debug)]
pub struct ConcurrenceResult {
    /// max(0, λ₁ − λ₂ − λ₃ − λ₄), clamped into [0, 1].
    pub value: f64,
    /// The λ_i, square roots of the ρρ̃ spectrum, sorted descending.
    pub lambdas: [f64; 4],
}

/// σ_y ⊗ σ_y, which is real in the product basis.
fn spin_flip_operator() -> ComplexMatrix {
    let mut y = ComplexMatrix::zeros(4);
    let one = Complex64::new(1.0, 0.0);
    y.set(0, 3, -one);
    y.set(1, 2, one);
    y.set(2, 1, one);
    y.set(3, 0, -one);
    y
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// The input must be 4x4, Hermitian to [`tol::DENSITY_TOL`], of unit
/// trace to the same tolerance, and positive semidefinite up to
/// −[`tol::DENSITY_TOL`] eigenvalue slack; anything else is rejected as
/// [`SpinError::InvalidDensityMatrix`]. Computation proceeds on the
/// exactly Hermitian part of the input with negative rounding
/// eigenvalues clamped to zero.
pub fn concurrence(rho: &ComplexMatrix) -> Result<ConcurrenceResult> {
    if rho.dim() != 4 {
        return Err(SpinError::DimensionMismatch);
    }
    if !rho.is_finite() {
        return Err(SpinError::InvalidDensityMatrix("non-finite entries"));
    }
    if !rho.is_hermitian(tol::DENSITY_TOL) {
        return Err(SpinError::InvalidDensityMatrix("not Hermitian"));
    }
    if (rho.trace().re - 1.0).abs() > tol::DENSITY_TOL {
        return Err(SpinError::InvalidDensityMatrix("trace differs from one"));
    }

    // Symmetrize so the strict eigensolver gate cannot trip over the
    // looser admission slack granted to callers.
    let symmetrized = (rho + &rho.adjoint()).scaled(Complex64::new(0.5, 0.0));
    let spectrum = hermitian_eig(&symmetrized)?;
    if spectrum.eigenvalues.iter().any(|&x| x < -tol::DENSITY_TOL) {
        return Err(SpinError::InvalidDensityMatrix("negative eigenvalue"));
    }

    let sqrt_rho = spectral_function(&symmetrized, |x| {
        Complex64::new(Float::sqrt(f64::max(x, 0.0)), 0.0)
    })?;
    let flip = spin_flip_operator();
    let rho_tilde = &(&flip * &symmetrized.conjugate()) * &flip;
    let core = &(&sqrt_rho * &rho_tilde) * &sqrt_rho;

    let mut mu = hermitian_eig(&core)?.eigenvalues;
    if mu.iter().any(|&x| x < -tol::SPIN_FLIP_SLACK) {
        return Err(SpinError::InvalidDensityMatrix("spin-flip spectrum below slack"));
    }
    let mut lambdas_vec: Vec<f64> = mu
        .drain(..)
        .map(|x| Float::sqrt(f64::max(x, 0.0)))
        .collect();
    lambdas_vec.sort_by(|a, b| b.partial_cmp(a).expect("spectrum is finite"));
    let lambdas = [lambdas_vec[0], lambdas_vec[1], lambdas_vec[2], lambdas_vec[3]];

    let raw = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    let value = raw.clamp(0.0, 1.0);
    Ok(ConcurrenceResult { value, lambdas })
}
