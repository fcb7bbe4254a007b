use thiserror::Error;

use crate::mixed_graph::{GraphError, ParseError};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A documented resource cap was exceeded; the input itself is fine.
    #[error("refused: {0}")]
    Refused(String),
    /// The caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Something that the algorithms guarantee did not hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
