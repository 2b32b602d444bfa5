use thiserror::Error;

/// Errors produced by synthesis, verification and file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("malformed circuit: {0}")]
    Structure(String),

    #[error("vector length {len} does not match 2^{n}")]
    Length { n: usize, len: usize },

    #[error("realization `{0}` is not supported here")]
    UnsupportedRealization(String),

    #[error("gate `{0}` has no simulable realization")]
    Unsimulable(String),

    #[error("{qubits} qubits exceeds the simulation cap of {cap}")]
    Resource { qubits: usize, cap: usize },

    #[error("spectral support has weight {found}, declared bound is {declared}")]
    SupportExceeded { found: usize, declared: usize },

    #[error("group of control states is linearly dependent")]
    DependentGroup,

    #[error("ancilla left the |0> sector at basis column {0}")]
    AncillaLeak(usize),

    #[error("input error: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
