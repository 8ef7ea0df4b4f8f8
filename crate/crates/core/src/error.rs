use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    /// A root failed to reach the residual tolerance; raise the precision and retry.
    #[error("root {index} did not converge (relative residual {residual:e})")]
    ConvergenceFailure { index: usize, residual: f64 },
    #[error("mode n={n} ({family}): root {index} did not converge (relative residual {residual:e})")]
    ModeConvergenceFailure { n: usize, family: String, index: usize, residual: f64 },
    #[error("argument must be non-zero")]
    ZeroArgument,
    #[error("argument {0} lies in the open lower half-plane")]
    LowerHalfPlane(String),
    #[error("mode index must be at least 1, got {0}")]
    InvalidMode(usize),
    #[error("coupling must be positive, got {0}")]
    InvalidCoupling(f64),
    #[error("gamma must be different from 1")]
    GammaIsOne,
    #[error("invalid gamma: {0}")]
    InvalidGamma(String),
    #[error("invalid probe point: {0}")]
    InvalidProbe(String),
    #[error("branch violation: {0}")]
    BranchViolation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty input")]
    EmptyInput,
    #[error("mode n={n} ({family}): boundary residual {residual:e} exceeds {tol:e}")]
    CertificationFailure { n: usize, family: String, residual: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
