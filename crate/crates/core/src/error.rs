use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Integer Bessel orders need logarithmic limits, which are not supported.
    #[error("integer order {0} is not supported")]
    IntegerOrder(f64),

    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not unitary (defect {defect:e} > tolerance {tol:e})")]
    NotUnitary { defect: f64, tol: f64 },

    #[error("matrix is not Hermitian (defect {defect:e} > tolerance {tol:e})")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("matrix is singular or ill-conditioned (condition number {cond:e})")]
    Singular { cond: f64 },

    #[error("grid resolution: {0}")]
    Resolution(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotUnitary { .. } | Error::NotHermitian { .. } => 3,
            Error::NoConvergence(_) | Error::Singular { .. } => 4,
            _ => 2,
        }
    }
}
