//! Central table of numerical tolerances.
//!
//! Every hard-coded threshold in the crate lives here so the numerics can
//! be audited in one place. Operations that iterate accept overrides (see
//! [`crate::eig::JacobiSettings`]); the rest treat these as fixed contract
//! values and document them on the functions that enforce them.

/// Maximum elementwise |M - M†| accepted by the eigensolver and every
/// routine that requires a Hermitian input.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Jacobi sweep termination: iteration stops once the off-diagonal
/// Frobenius norm drops below this value scaled by max(1, ‖A‖_F) of the
/// input. The scaling keeps the bound meaningful for matrices with norms
/// far from unity, where an absolute cutoff would sit below the rounding
/// floor of the arithmetic itself.
pub const EIG_OFFDIAG_TOL: f64 = 1e-14;

/// Upper bound on cyclic Jacobi sweeps before giving up. A 4x4 Hermitian
/// matrix converges in well under ten sweeps; hitting this limit means the
/// input was malformed in a way the Hermiticity gate did not catch.
pub const EIG_MAX_SWEEPS: usize = 64;

/// Largest matrix dimension the eigensolver accepts. The crate targets
/// two-qubit (4x4) problems; the headroom covers small experiments without
/// pretending to be a general-purpose solver.
pub const EIG_MAX_DIM: usize = 16;

/// Orthonormality and reconstruction guarantee of a fresh decomposition:
/// ‖V†V − 1‖ and ‖VΛV† − M‖ stay below this elementwise.
pub const RECONSTRUCTION_TOL: f64 = 1e-12;

/// Elementwise |U†U − 1| bound certified for spectrally built propagators.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Looser unitarity gate applied to caller-supplied propagators in
/// [`crate::dynamics::evolve`].
pub const PROPAGATOR_INPUT_TOL: f64 = 1e-8;

/// Validation slack for density matrices entering the concurrence:
/// Hermiticity, |trace − 1|, and eigenvalue negativity are each allowed
/// this much rounding error.
pub const DENSITY_TOL: f64 = 1e-8;

/// The spin-flip spectrum is mathematically nonnegative; eigenvalues may
/// sit below zero by at most this much before the input is rejected as an
/// invalid density matrix. Anything in (−SPIN_FLIP_SLACK, 0) clamps to 0.
pub const SPIN_FLIP_SLACK: f64 = 1e-10;

/// A phase sum with modulus below this threshold has no meaningful
/// argument; results flag themselves as not well defined instead of
/// reporting arg(≈0).
pub const PHASE_THRESHOLD: f64 = 1e-9;

/// Thermal populations whose consecutive gap is at most this are treated
/// as one degenerate cluster by the basis-alignment policy.
pub const DEGENERACY_TOL: f64 = 1e-6;

/// Largest accepted inverse temperature. Beyond this every population but
/// the ground state's underflows to zero and the state is numerically a
/// ground-state projector; callers asking for colder states almost
/// certainly want a different tool.
pub const BETA_MAX: f64 = 1e4;

/// Minimum step count for the discretized-connection phase evaluation;
/// fewer steps make the O(1/steps²) discretization error useless as an
/// oracle.
pub const MIN_INTEGRATION_STEPS: usize = 100;
