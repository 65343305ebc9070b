use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {0}: only 2 (one qubit) and 4 (two qubits) are supported")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("non-finite value in input")]
    NonFinite,
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (max deviation of U·U† from I is {0:e})")]
    NotUnitary(f64),
    #[error("trace is {0}, expected 1")]
    NotUnitTrace(f64),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("state vector has norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("Jacobi eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("operator has zero Hilbert-Schmidt norm")]
    ZeroNorm,
    #[error("observable is not dichotomic (max deviation of O² from I is {0:e})")]
    NotDichotomic(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("circuit has no gates")]
    EmptyCircuit,
    #[error("reference signal {0:e} is too small to normalize against")]
    ReferenceTooSmall(f64),
    #[error("result list is empty")]
    EmptyResults,
    #[error("unknown wire `{0}` (expected `probe` or `system`)")]
    UnknownWire(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
