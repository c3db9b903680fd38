use thiserror::Error;

/// Errors shared by state construction, partition handling, optimization,
/// the oracles and file IO.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {n} out of range (supported: 1..={max})")]
    QubitCountOutOfRange { n: usize, max: usize },

    #[error("amplitude vector has length {got}, expected {expected}")]
    AmplitudeLengthMismatch { expected: usize, got: usize },

    #[error("state is not normalized: sum of squared magnitudes is {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("cannot derive parameters from a zero vector")]
    ZeroVector,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("party count {m} out of range for {n} qubits")]
    PartyCountOutOfRange { m: usize, n: usize },

    #[error("partition is over {partition_qubits} qubits but the state has {state_qubits}")]
    SizeMismatch {
        state_qubits: usize,
        partition_qubits: usize,
    },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    Domain(String),

    #[error("grid search refused: {required} parameters exceed the budget of {budget}")]
    ParameterBudgetExceeded { required: usize, budget: usize },

    #[error(
        "partition enumeration refused: {required} partitions exceed the budget of {budget}; \
         raise the budget to at least {required} to run this sweep"
    )]
    EnumerationBudgetExceeded { required: u64, budget: u64 },

    #[error("state file error: {0}")]
    StateFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
