use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("pauli strings support at most {max} qubits, got {n_qubits}")]
    TooManyQubits { n_qubits: usize, max: usize },

    #[error("dense representation of {n_qubits} qubits exceeds the cap of {cap} (set SYK_DENSE_QUBIT_CAP to override)")]
    DenseCapExceeded { n_qubits: usize, cap: usize },

    #[error("invalid pauli string {0:?}")]
    PauliParse(String),

    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("invalid fermion index: {0}")]
    InvalidIndex(String),

    #[error("unsupported term shape: {0}")]
    UnsupportedShape(String),

    #[error("operator acts on ancilla qubit {0}")]
    ActsOnAncilla(usize),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
