use crate::domination::HallWitness;

/// Crate-wide error type.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    /// A construction or operation was called with invalid parameters.
    /// The message names the violated precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Exhaustive verification would exceed the configured work budget.
    /// The caller must either raise the budget or switch to sampled mode;
    /// the verifier never silently downgrades.
    #[error(
        "exhaustive verification refused: {required} elementary checks exceed the budget of {budget}"
    )]
    BudgetExceeded { required: u128, budget: u64 },

    /// A word handed to a decoder is not a codeword of the given code.
    #[error("malformed codeword: {0}")]
    MalformedCodeword(String),

    /// Error-correction failed: the corruption exceeds the decodable budget.
    #[error("decoding failure: {0}")]
    DecodeFailure(String),

    /// No domination mapping exists for the requested partition; the witness
    /// is a Hall-condition violator (more inputs than compatible images).
    #[error("no domination mapping for this partition: {witness}")]
    MappingInfeasible { witness: HallWitness },

    /// A persisted code or mapping file violates its schema or invariants.
    #[error("invalid file: {0}")]
    InvalidFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
