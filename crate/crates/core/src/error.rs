use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NonHermitianInput { deviation: f64 },
    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NonUnitaryInput { deviation: f64 },
    #[error("pole of {function} at {at}")]
    PoleError { function: &'static str, at: String },
    #[error("{what} did not converge within {budget} iterations")]
    NoConvergence { what: &'static str, budget: usize },
    #[error("accuracy loss in {what}: estimated relative error {estimate:.3e}")]
    AccuracyLoss { what: &'static str, estimate: f64 },
    #[error("step size underflow at t = {t} (h = {h:.3e})")]
    StepUnderflow { t: f64, h: f64 },
    #[error("non-finite state at t = {t}")]
    NonFiniteState { t: f64 },
    #[error("ill-conditioned linear system (condition estimate {estimate:.3e})")]
    IllConditioned { estimate: f64 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("QR iteration did not converge after {sweeps} sweeps")]
    QrNoConvergence { sweeps: usize },
    #[error("kernel is degenerate: {count} singular values below threshold")]
    DegenerateKernel { count: usize },
    #[error("trajectory grids do not match")]
    GridMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable identifier used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonHermitianInput { .. } => "NonHermitianInput",
            Error::NonUnitaryInput { .. } => "NonUnitaryInput",
            Error::PoleError { .. } => "PoleError",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::AccuracyLoss { .. } => "AccuracyLoss",
            Error::StepUnderflow { .. } => "StepUnderflow",
            Error::NonFiniteState { .. } => "NonFiniteState",
            Error::IllConditioned { .. } => "IllConditioned",
            Error::DomainError(_) => "DomainError",
            Error::QrNoConvergence { .. } => "QRNoConvergence",
            Error::DegenerateKernel { .. } => "DegenerateKernel",
            Error::GridMismatch => "GridMismatch",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
