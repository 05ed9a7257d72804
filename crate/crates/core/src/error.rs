use crate::rules::Move;

/// Errors produced by the engine, solver, and harness.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("rule error: {0}")]
    Rule(String),

    #[error("state error: {0}")]
    State(String),

    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: Move, reason: String },

    #[error("path error: {0}")]
    Path(String),

    #[error("capacity exceeded: visited {visited} nodes, cap is {cap}")]
    Capacity { visited: u64, cap: u64 },

    #[error("trace error: {0}")]
    Trace(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
