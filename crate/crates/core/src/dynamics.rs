//! Propagators and unitary evolution of density matrices.
//!
//! Time evolution is computed spectrally — exact for the time-independent
//! Hamiltonians this crate deals in — rather than by ODE stepping. The
//! only step-based integration in the crate is the discretized-connection
//! oracle in [`crate::geomphase`], where the stepping is the point.

use num_complex::Complex64;

use crate::eig::spectral_function;
use crate::error::{Result, SpinError};
use crate::matrix::ComplexMatrix;
use crate::thermal::ThermalState;
use crate::tol;

/// A density matrix evolved to time `t`, along with the propagator that
/// took it there.
#[derive(Clone, Debug)]
pub struct EvolutionResult {
    /// The evolution time the propagator corresponds to.
    pub t: f64,
    /// ρ(t) = U ρ₀ U†: Hermitian, unit trace, same spectrum as ρ₀.
    pub rho_t: ComplexMatrix,
    /// The unitary that produced `rho_t`.
    pub propagator: ComplexMatrix,
}

/// The propagator U = e^{−iHt} of a Hermitian generator, built
/// spectrally. Unitary to [`tol::UNITARITY_TOL`].
pub fn propagator(hamiltonian: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(SpinError::NonFiniteFunctionValue);
    }
    spectral_function(hamiltonian, |x| Complex64::from_polar(1.0, -x * t))
}

/// Conjugates a thermal state by a caller-supplied propagator:
/// ρ(t) = U ρ₀ U†.
///
/// `t` is recorded in the result as the time label of `u`; it does not
/// enter the arithmetic. Fails with [`SpinError::NonUnitaryPropagator`]
/// unless `u` is unitary to [`tol::PROPAGATOR_INPUT_TOL`].
pub fn evolve(state: &ThermalState, u: &ComplexMatrix, t: f64) -> Result<EvolutionResult> {
    if u.dim() != state.dim() {
        return Err(SpinError::DimensionMismatch);
    }
    if !u.is_unitary(tol::PROPAGATOR_INPUT_TOL) {
        return Err(SpinError::NonUnitaryPropagator);
    }
    let rho_t = &(u * &state.rho) * &u.adjoint();
    Ok(EvolutionResult {
        t,
        rho_t,
        propagator: u.clone(),
    })
}

/// Builds U = e^{−iHt} from the given Hamiltonian and applies it to the
/// state in one call.
pub fn evolve_under(state: &ThermalState, hamiltonian: &ComplexMatrix, t: f64) -> Result<EvolutionResult> {
    let u = propagator(hamiltonian, t)?;
    evolve(state, &u, t)
}
