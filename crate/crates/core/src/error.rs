use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range for a {n}-qubit state")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("control and target coincide on qubit {0}")]
    SameControlTarget(usize),
    #[error("invalid qubit count {0}")]
    InvalidQubitCount(usize),
    #[error("invalid Dicke parameters n={n}, k={k}")]
    InvalidDicke { n: usize, k: usize },
    #[error("subsystem size {l} out of range for n={n}")]
    SubsystemSizeOutOfRange { l: usize, n: usize },
    #[error("subsystem must be a non-empty proper subset of the qubits")]
    InvalidSubsystem,
    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    EigenNoConvergence(usize),
    #[error("reduced density matrix has eigenvalue {0} below the clamping window")]
    NegativeEigenvalue(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("entropy vector has the wrong form: expected {expected}, found {found}")]
    WrongForm { expected: &'static str, found: &'static str },
    #[error("entropy vector is missing entries: {0}")]
    MissingEntries(String),
    #[error("exhaustive scan beyond the {cap}-qubit cap (n={n})")]
    ScanCapExceeded { n: usize, cap: usize },
    #[error("enumeration exceeded the configured cap of {0} elements")]
    CapExceeded(usize),
    #[error("binomial coefficient overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
