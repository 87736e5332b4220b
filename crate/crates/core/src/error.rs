use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("subsystem `{label}` has invalid dimension {dim}")]
    InvalidDimension { label: String, dim: usize },

    #[error("matrix of size {rows}x{cols} does not match layout dimension {expected}")]
    ShapeMismatch { rows: usize, cols: usize, expected: usize },

    #[error("operator is not Hermitian (|M - M^dag|_F = {0:.3e})")]
    NotHermitian(f64),

    #[error("operator has a negative eigenvalue {0:.3e}")]
    NotPositive(f64),

    #[error("Pauli expansion requires qubit subsystems, `{label}` has dimension {dim}")]
    NonQubit { label: String, dim: usize },

    #[error("expected layout {expected}, got {found}")]
    WrongLayout { expected: String, found: String },

    #[error("invalid process matrix: {0}")]
    InvalidProcess(String),

    #[error("invalid comb: {0}")]
    InvalidComb(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("conditioning on an outcome of probability {0:.3e}")]
    NullOutcome(f64),

    #[error("coefficient nullspace check failed: {0}")]
    Nullspace(String),

    #[error("coefficients violate the positivity bound (N + sqrt(N^2 - 4|P|^2) = {0:.6} > 1/8)")]
    PositivityBound(f64),

    #[error("ill-formed conic program: {0}")]
    Program(String),

    #[error("solver failed: {0}")]
    Solver(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
