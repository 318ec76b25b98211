//! Numerical core for a two-spin-1/2 hyperfine system driven out of
//! thermal equilibrium by a sudden magnetic-field change.
//!
//! The crate covers the full pipeline:
//!
//! 1. build the exchange and field Hamiltonians ([`hamiltonian`]),
//! 2. prepare a Gibbs state of the pre-quench Hamiltonian ([`thermal`]),
//! 3. evolve it unitarily under the post-quench one ([`dynamics`]),
//! 4. read off the mixed-state geometric phase of that evolution
//!    ([`geomphase`]) and the concurrence of the evolving state
//!    ([`entanglement`]).
//!
//! Everything rests on a dense 4x4 (up to 16x16) complex matrix type and
//! a cyclic Jacobi eigensolver for Hermitian matrices ([`matrix`],
//! [`eig`]); no external linear algebra is linked, and the whole crate is
//! `no_std` + `alloc`, so it can run inside embedded or wasm hosts.
//!
//! All routines are deterministic: the same inputs produce bit-identical
//! outputs on every run and thread count.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dynamics;
pub mod eig;
pub mod entanglement;
pub mod error;
pub mod geomphase;
pub mod hamiltonian;
pub mod matrix;
pub mod thermal;
pub mod tol;

pub use dynamics::{evolve, evolve_under, propagator, EvolutionResult};
pub use eig::{hermitian_eig, hermitian_eig_with, spectral_function, JacobiSettings, SpectralDecomposition};
pub use entanglement::{concurrence, ConcurrenceResult};
pub use error::{Result, SpinError};
pub use geomphase::{
    geometric_phase_closed, geometric_phase_closed_with_reference, geometric_phase_integrated,
    principal_difference, PhaseResult,
};
pub use hamiltonian::{
    analytic_spectrum, commutator_norm, field_to_couplings, full_hamiltonian, hamiltonian_pair,
    heisenberg_coupling, zeeman_term, HydrogenConstants, SpinParams, HYDROGEN,
    PROTON_ELECTRON_MASS_RATIO,
};
pub use matrix::{inner, pauli, ComplexMatrix};
pub use thermal::{gibbs_state, gibbs_state_aligned, ThermalState};
