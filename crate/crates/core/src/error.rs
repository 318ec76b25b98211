//! Error type shared by every fallible operation in the crate.

use core::fmt;

/// Everything that can go wrong in the numerical kernel and the physics
/// layers built on it.
#[derive(Clone, Debug, PartialEq)]
pub enum SpinError {
    /// An operation requiring a Hermitian matrix received one whose
    /// |M − M†| exceeds the admission tolerance.
    NonHermitianInput,
    /// The Jacobi iteration failed to reach its off-diagonal target within
    /// the sweep budget.
    ConvergenceFailure,
    /// A spectral function produced a NaN or infinity at some eigenvalue.
    NonFiniteFunctionValue,
    /// Inverse temperature outside [0, BETA_MAX] (or not finite).
    BetaOutOfRange { beta: f64 },
    /// A caller-supplied propagator failed the unitarity gate.
    NonUnitaryPropagator,
    /// The discretized-connection evaluation was asked for fewer steps
    /// than the permitted minimum.
    StepCountTooSmall { steps: usize },
    /// Operands have incompatible (or unsupported) dimensions.
    DimensionMismatch,
    /// The matrix handed to the concurrence is not a density matrix; the
    /// payload names the violated requirement.
    InvalidDensityMatrix(&'static str),
}

impl fmt::Display for SpinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinError::NonHermitianInput => write!(f, "input matrix is not Hermitian within tolerance"),
            SpinError::ConvergenceFailure => write!(f, "eigensolver did not converge within the sweep budget"),
            SpinError::NonFiniteFunctionValue => {
                write!(f, "spectral function produced a non-finite value at an eigenvalue")
            }
            SpinError::BetaOutOfRange { beta } => {
                write!(f, "inverse temperature {beta:e} outside the supported range [0, 1e4]")
            }
            SpinError::NonUnitaryPropagator => write!(f, "propagator is not unitary within tolerance"),
            SpinError::StepCountTooSmall { steps } => {
                write!(f, "{steps} integration steps requested; at least 100 required")
            }
            SpinError::DimensionMismatch => write!(f, "matrix dimensions are incompatible with the operation"),
            SpinError::InvalidDensityMatrix(reason) => write!(f, "invalid density matrix: {reason}"),
        }
    }
}

impl core::error::Error for SpinError {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, SpinError>;
