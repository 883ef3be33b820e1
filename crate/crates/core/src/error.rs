use thiserror::Error;

/// Errors raised by model construction, parsing, and search.
#[derive(Debug, Error)]
pub enum Error {
    #[error("species sets belong to different species tables")]
    SpeciesMismatch,

    #[error("unknown species: {0}")]
    UnknownSpecies(String),

    #[error("duplicate species: {0}")]
    DuplicateSpecies(String),

    #[error("invalid name {0:?}: names match [A-Za-z][A-Za-z0-9_]*")]
    InvalidName(String),

    #[error("species index {index} out of range for {len} species")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid reaction system: {}", .0.join("; "))]
    InvalidSystem(Vec<String>),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("empty context sequence")]
    EmptyContextSequence,

    #[error("name collision: {0}")]
    NameCollision(String),

    #[error("no recurrence within {0} steps")]
    NoRecurrence(usize),

    #[error("context universe has {count} sets, over the limit of {limit}")]
    TooManyContexts { count: u128, limit: u128 },

    #[error("input set has {size} species; at most {limit} allowed")]
    InputSetTooLarge { size: usize, limit: usize },

    #[error("exhaustive decision refused: {species} species exceeds the ceiling of {ceiling} ({pairs} candidate pairs)")]
    ExhaustiveRefused {
        species: usize,
        ceiling: usize,
        pairs: u128,
    },

    #[error("start frontier has {size} states, over the limit of {limit}")]
    FrontierTooLarge { size: u128, limit: u128 },

    #[error("visited-state budget of {0} exhausted")]
    BudgetExhausted(usize),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("unknown golden trace: {0}")]
    UnknownTrace(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
