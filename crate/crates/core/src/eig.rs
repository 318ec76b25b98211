//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, plus
//! spectral matrix functions built on it.
//!
//! Jacobi is quadratically convergent, unconditionally stable, and needs
//! nothing beyond 2x2 rotations, which makes it a good fit for the 4x4
//! matrices this crate lives on. The implementation sweeps the strict
//! upper triangle in a fixed order, so identical inputs produce
//! bit-identical output.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::error::{Result, SpinError};
use crate::matrix::ComplexMatrix;
use crate::tol;

/// Eigenvalues and eigenvectors of a Hermitian matrix.
///
/// Column `k` of `eigenvectors` pairs with `eigenvalues[k]`. Fresh output
/// of [`hermitian_eig`] is sorted ascending, has V†V = 1 and VΛV† = M to
/// [`tol::RECONSTRUCTION_TOL`], and is gauge fixed: in every column the
/// entry of largest modulus is real and nonnegative (ties broken by the
/// lowest row index). Thermal states reuse this container with their own
/// documented ordering (populations descending).
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Iteration controls for [`hermitian_eig_with`].
#[derive(Clone, Copy, Debug)]
pub struct JacobiSettings {
    /// Termination threshold on the off-diagonal Frobenius norm, scaled
    /// by max(1, ‖input‖_F).
    pub offdiag_tol: f64,
    /// Sweep budget before reporting non-convergence.
    pub max_sweeps: usize,
}

impl Default for JacobiSettings {
    fn default() -> Self {
        JacobiSettings {
            offdiag_tol: tol::EIG_OFFDIAG_TOL,
            max_sweeps: tol::EIG_MAX_SWEEPS,
        }
    }
}

/// Frobenius norm of the strict off-diagonal part.
fn offdiag_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a.get(p, q).norm_sqr();
            }
        }
    }
    Float::sqrt(s)
}

/// Diagonalizes a Hermitian matrix with default settings.
///
/// Requires `is_hermitian(tol::HERMITICITY_TOL)` and dimension at most
/// [`tol::EIG_MAX_DIM`]. Deterministic: two calls on the identical matrix
/// return bit-identical results.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    hermitian_eig_with(m, &JacobiSettings::default())
}

/// [`hermitian_eig`] with caller-chosen iteration controls.
pub fn hermitian_eig_with(m: &ComplexMatrix, settings: &JacobiSettings) -> Result<SpectralDecomposition> {
    let n = m.dim();
    if n > tol::EIG_MAX_DIM {
        return Err(SpinError::DimensionMismatch);
    }
    if !m.is_finite() || !m.is_hermitian(tol::HERMITICITY_TOL) {
        return Err(SpinError::NonHermitianInput);
    }

    // Work on the exactly Hermitian part so admission slack cannot leak
    // into the rotations.
    let mut a = ComplexMatrix::zeros(n);
    for p in 0..n {
        a.set(p, p, Complex64::new(m.get(p, p).re, 0.0));
        for q in (p + 1)..n {
            let avg = (m.get(p, q) + m.get(q, p).conj()).scale(0.5);
            a.set(p, q, avg);
            a.set(q, p, avg.conj());
        }
    }

    let mut v = ComplexMatrix::identity(n);
    let stop = settings.offdiag_tol * f64::max(1.0, a.frobenius_norm());
    let mut converged = false;

    for _ in 0..settings.max_sweeps {
        if offdiag_norm(&a) <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && offdiag_norm(&a) > stop {
        return Err(SpinError::ConvergenceFailure);
    }

    // Sort ascending; the sort is stable so exact ties keep sweep order.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("eigenvalues are finite"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &v.column(src));
    }
    gauge_fix_columns(&mut eigenvectors);

    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

/// One complex Jacobi rotation zeroing A[p][q] (and A[q][p]), accumulated
/// into V.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    // Nothing to annihilate; rotating here would divide by zero.
    if r == 0.0 {
        return;
    }
    let phase = apq.unscale(r);
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + Float::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + Float::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / Float::sqrt(1.0 + t * t);
    let s = t * c;

    let n = a.dim();
    // Column update: col_p ← c·col_p − s·e^{−iθ}·col_q,
    //                col_q ← s·e^{+iθ}·col_p + c·col_q.
    for j in 0..n {
        let ajp = a.get(j, p);
        let ajq = a.get(j, q);
        a.set(j, p, ajp * c - ajq * phase.conj() * s);
        a.set(j, q, ajp * phase * s + ajq * c);
    }
    // Row update with the conjugate coefficients.
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * phase * s);
        a.set(q, j, apj * phase.conj() * s + aqj * c);
    }
    // The 2x2 core lands on a real diagonal and zero off-diagonal up to
    // rounding; pin both exactly to keep the iteration clean.
    a.set(p, p, Complex64::new(c * c * app + s * s * aqq - 2.0 * c * s * r, 0.0));
    a.set(q, q, Complex64::new(s * s * app + c * c * aqq + 2.0 * c * s * r, 0.0));
    a.set(p, q, Complex64::zero());
    a.set(q, p, Complex64::zero());

    for j in 0..n {
        let vjp = v.get(j, p);
        let vjq = v.get(j, q);
        v.set(j, p, vjp * c - vjq * phase.conj() * s);
        v.set(j, q, vjp * phase * s + vjq * c);
    }
}

/// Multiplies each column by a unit phase so its largest-modulus entry is
/// real and nonnegative; ties pick the lowest row index.
fn gauge_fix_columns(v: &mut ComplexMatrix) {
    let n = v.dim();
    for col in 0..n {
        let mut best_row = 0;
        let mut best = -1.0;
        for row in 0..n {
            let mag = v.get(row, col).norm();
            if mag > best {
                best = mag;
                best_row = row;
            }
        }
        if best <= 0.0 {
            continue;
        }
        let anchor = v.get(best_row, col);
        let phase = anchor.unscale(anchor.norm()).conj();
        for row in 0..n {
            let z = v.get(row, col) * phase;
            v.set(row, col, z);
        }
        // The anchor entry is now exactly real by construction.
        let fixed = v.get(best_row, col);
        v.set(best_row, col, Complex64::new(fixed.norm() * fixed.re.signum(), 0.0));
    }
}

/// Applies a scalar function to a Hermitian matrix through its spectrum:
/// returns V·diag(f(λ₁)…f(λₙ))·V†.
///
/// The result is Hermitian when `f` is real-valued on the spectrum and
/// unitary (within [`tol::UNITARITY_TOL`]) when |f| ≡ 1. Fails with
/// [`SpinError::NonFiniteFunctionValue`] if `f` returns NaN or infinity
/// at any eigenvalue.
pub fn spectral_function<F>(m: &ComplexMatrix, f: F) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> Complex64,
{
    let decomp = hermitian_eig(m)?;
    let values: Vec<Complex64> = decomp.eigenvalues.iter().map(|&x| f(x)).collect();
    if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(SpinError::NonFiniteFunctionValue);
    }
    Ok(apply_spectrum(&decomp.eigenvectors, &values))
}

/// Builds V·diag(w)·V† directly from an eigenbasis and per-eigenvalue
/// weights. Shared by the spectral function and the thermal-state
/// constructor, which already hold a decomposition.
pub(crate) fn apply_spectrum(v: &ComplexMatrix, weights: &[Complex64]) -> ComplexMatrix {
    let n = v.dim();
    assert_eq!(weights.len(), n, "one weight per eigenvector required");
    let mut out = ComplexMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let acc = weights
                .iter()
                .enumerate()
                .map(|(k, w)| w * v.get(r, k) * v.get(c, k).conj())
                .sum();
            out.set(r, c, acc);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::matrix::pauli;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstruction_error(m: &ComplexMatrix, d: &SpectralDecomposition) -> f64 {
        let weights: Vec<Complex64> = d.eigenvalues.iter().map(|&x| c(x, 0.0)).collect();
        apply_spectrum(&d.eigenvectors, &weights).max_abs_diff(m)
    }

    #[test]
    fn identity_has_unit_spectrum_and_identity_vectors() {
        let id = ComplexMatrix::identity(4);
        let d = hermitian_eig(&id).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0; 4]);
        assert!(d.eigenvectors.max_abs_diff(&ComplexMatrix::identity(4)) == 0.0);
    }

    #[test]
    fn pauli_y_spectrum_is_plus_minus_one() {
        let d = hermitian_eig(&pauli::y()).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-15);
        assert!(d.eigenvectors.is_unitary(1e-14));
    }

    #[test]
    fn random_hermitian_reconstructs() {
        // Fixed arbitrary Hermitian matrix with non-trivial complex parts.
        let mut m = ComplexMatrix::zeros(4);
        let entries = [
            (0, 0, 0.7, 0.0),
            (1, 1, -1.3, 0.0),
            (2, 2, 0.2, 0.0),
            (3, 3, 2.1, 0.0),
            (0, 1, 0.4, -0.9),
            (0, 2, -0.1, 0.3),
            (0, 3, 0.8, 0.2),
            (1, 2, 0.5, 0.5),
            (1, 3, -0.6, 0.1),
            (2, 3, 0.05, -0.7),
        ];
        for &(r, cidx, re, im) in &entries {
            m.set(r, cidx, c(re, im));
            if r != cidx {
                m.set(cidx, r, c(re, -im));
            }
        }
        let d = hermitian_eig(&m).unwrap();
        assert!(reconstruction_error(&m, &d) < 1e-12);
        assert!(d.eigenvectors.is_unitary(1e-12));
        for w in d.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn output_is_bit_identical_across_calls() {
        let mut m = ComplexMatrix::zeros(3);
        m.set(0, 0, c(1.0, 0.0));
        m.set(1, 1, c(-0.5, 0.0));
        m.set(2, 2, c(0.25, 0.0));
        m.set(0, 1, c(0.3, 0.4));
        m.set(1, 0, c(0.3, -0.4));
        m.set(1, 2, c(-0.2, 0.1));
        m.set(2, 1, c(-0.2, -0.1));
        let d1 = hermitian_eig(&m).unwrap();
        let d2 = hermitian_eig(&m).unwrap();
        assert_eq!(d1.eigenvalues, d2.eigenvalues);
        assert_eq!(d1.eigenvectors.as_slice(), d2.eigenvectors.as_slice());
    }

    #[test]
    fn gauge_anchor_is_real_nonnegative() {
        let d = hermitian_eig(&pauli::y()).unwrap();
        for col in 0..2 {
            let column = d.eigenvectors.column(col);
            let mut best_row = 0;
            let mut best = -1.0;
            for (row, z) in column.iter().enumerate() {
                if z.norm() > best {
                    best = z.norm();
                    best_row = row;
                }
            }
            let anchor = column[best_row];
            assert!(anchor.im == 0.0 && anchor.re >= 0.0);
        }
    }

    #[test]
    fn rejects_non_hermitian_and_oversized_inputs() {
        let mut m = ComplexMatrix::identity(2);
        m.set(0, 1, c(1.0, 0.0));
        assert_eq!(hermitian_eig(&m).unwrap_err(), SpinError::NonHermitianInput);
        let big = ComplexMatrix::identity(17);
        assert_eq!(hermitian_eig(&big).unwrap_err(), SpinError::DimensionMismatch);
    }

    #[test]
    fn spectral_identity_function_returns_input() {
        let mut m = ComplexMatrix::zeros(2);
        m.set(0, 0, c(2.0, 0.0));
        m.set(1, 1, c(-1.0, 0.0));
        m.set(0, 1, c(0.5, 0.25));
        m.set(1, 0, c(0.5, -0.25));
        let out = spectral_function(&m, |x| c(x, 0.0)).unwrap();
        assert!(out.max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn spectral_phase_function_on_diagonal_matrix() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -2.0, 0.5, 3.0]);
        let t = 0.7;
        let out = spectral_function(&m, |x| Complex64::from_polar(1.0, -x * t)).unwrap();
        for i in 0..4 {
            let want = Complex64::from_polar(1.0, -m.get(i, i).re * t);
            assert!((out.get(i, i) - want).norm() < 1e-14);
        }
        assert!(out.is_unitary(1e-12));
    }

    #[test]
    fn spectral_exp_trace_matches_scalar_sum() {
        let h = crate::hamiltonian::full_hamiltonian(
            &crate::hamiltonian::SpinParams::new(1.0, 1.0, 0.0, 0.0),
            false,
        );
        let out = spectral_function(&h, |x| c(Float::exp(-x), 0.0)).unwrap();
        let want: f64 = crate::hamiltonian::analytic_spectrum(1.0, 1.0)
            .iter()
            .map(|&e| Float::exp(-e))
            .sum();
        assert!((out.trace().re - want).abs() < 1e-12);
        assert!(out.trace().im.abs() < 1e-14);
    }

    #[test]
    fn non_finite_function_values_are_rejected() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        let err = spectral_function(&m, |x| c(1.0 / (x - 1.0), 0.0)).unwrap_err();
        assert_eq!(err, SpinError::NonFiniteFunctionValue);
    }
}
