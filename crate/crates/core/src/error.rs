use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("range error: {0}")]
    Range(String),

    #[error("window of {requested} positions exceeds the materialization limit of {limit}")]
    ResourceLimit { requested: u64, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("depth {requested} exceeds the cap of {cap} for {generator}")]
    DepthCap {
        generator: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("element 0 has no reciprocal")]
    ZeroElement,

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
