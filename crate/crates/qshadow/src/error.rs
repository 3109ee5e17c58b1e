use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("{role} limited to {limit} qubits, got {n}")]
    QubitLimit {
        role: &'static str,
        limit: usize,
        n: usize,
    },

    #[error("state vector is not normalized: |norm^2 - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("matrix is not Hermitian: max |A - A^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("density operator has trace {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("density operator has negative eigenvalue {eigenvalue:e}")]
    NotPositive { eigenvalue: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("weight bound violated: sum |w_j(x)| = {actual} exceeds declared bound {bound}")]
    WeightBound { actual: f64, bound: f64 },

    #[error("invalid Pauli letter '{0}' (expected I, X, Y or Z)")]
    BadPauliLetter(char),

    #[error("prime search exhausted after {attempts} attempts")]
    PrimeSearchExhausted { attempts: usize },

    #[error("{0} is not a valid modulus candidate: {1}")]
    BadModulus(String, String),

    #[error("failed to factor {0} within the iteration budget")]
    FactoringFailed(String),

    #[error("dataset of size {got} is below the required training size {required}")]
    InsufficientData { got: usize, required: usize },

    #[error("model is malformed: {0}")]
    MalformedModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
