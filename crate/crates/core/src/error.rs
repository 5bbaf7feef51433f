use thiserror::Error;

/// Errors raised by the operator algebra, the Landau model and the verification driver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FwError {
    #[error("matrix is not square: {entries} entries do not form a {dim}x{dim} matrix")]
    NotSquare { dim: usize, entries: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (relative residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("split Hamiltonian violates beta-parity: {0}")]
    ParityViolation(String),

    #[error("unknown Dirac matrix kind `{0}`")]
    UnknownKind(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("inadmissible quantum numbers: {0}")]
    Inadmissible(String),

    #[error("level n={n} lies in the truncation edge (interior levels are n <= {max_interior})")]
    EdgeLevel { n: usize, max_interior: usize },

    #[error("state is not a positive-energy eigenstate (energy {energy})")]
    NegativeEnergy { energy: f64 },

    #[error("state and record disagree (eigen-residual {residual:e})")]
    InconsistentRecord { residual: f64 },

    #[error("could not isolate a unique eigenstate: {0}")]
    Ambiguous(String),

    #[error("upper spinor is identically zero")]
    ZeroSpinor,

    #[error("invalid radial grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, FwError>;
