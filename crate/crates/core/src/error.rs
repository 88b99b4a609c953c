use thiserror::Error;

/// Errors produced by state construction, measures and surveys.
#[derive(Debug, Error)]
pub enum QcError {
    #[error("degenerate sample: amplitude vector has zero norm")]
    DegenerateSample,

    #[error("amplitude vector length {0} is not a power of two >= 2")]
    BadDimension(usize),

    #[error("state is not normalized: norm deficit |1 - ||psi||^2| = {0:.3e}")]
    NotNormalized(f64),

    #[error("qubit index {index} out of range 1..={n}")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("qubit subset must be nonempty")]
    EmptySubset,

    #[error("qubit subset must be a proper subset")]
    NotProperSubset,

    #[error("matrix is not Hermitian: max |M[i,j] - conj(M[j,i])| = {0:.3e}")]
    NotHermitian(f64),

    #[error("measurement basis covers {basis} qubits but {measured} qubits are measured")]
    BasisSizeMismatch { basis: usize, measured: usize },

    #[error("unsupported: mixed-state input must be a two-qubit density matrix, got dim {0}")]
    UnsupportedDimension(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("missing column: {0}")]
    MissingColumn(String),

    #[error("empty input")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, QcError>;
