use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An ant reached a node with no permitted unvisited successor.
    #[error("dead end at node {node}")]
    DeadEnd { node: usize },

    #[error("invalid objective value {0}: pheromone deposits require a positive objective")]
    InvalidObjective(f64),

    #[error("all {ants} ants dead-ended in iteration {iteration}")]
    ColonyExhausted { iteration: usize, ants: usize },

    #[error("infeasible problem: {0}")]
    Infeasible(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("benchmark G{0} is registered but its definition is not identified")]
    Unidentified(u8),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
