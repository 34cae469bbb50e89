use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("basis index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("qubit {qubit} out of range 1..={n}")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("qubit {0} used more than once in a gate")]
    OverlappingQubits(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid basis tuple: {0}")]
    InvalidTuple(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix has a significantly negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient samples: need at least {required}, found {found}")]
    InsufficientSamples { required: usize, found: usize },

    #[error("degenerate test input: {0}")]
    Degenerate(String),

    #[error("circuit does not implement the 2-bit multiplier")]
    UnverifiedCircuit,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
