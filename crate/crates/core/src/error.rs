use thiserror::Error;

/// Errors raised by the pipeline.
///
/// Input errors (bad braid words, malformed grids) are separated from
/// internal consistency failures, which indicate a bug or a convention
/// mismatch rather than a user mistake.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: i32, strands: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("X marker row is not a permutation: {0}")]
    XNotPermutation(String),
    #[error("O marker row is not a permutation: {0}")]
    ONotPermutation(String),
    #[error("X and O share the cell in column {column}")]
    SharedCell { column: usize },
    #[error("index {index} out of range for grid of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("illegal commutation at column {column}: {reason}")]
    IllegalCommutation { column: usize, reason: String },
    #[error("expected a knot, got a link with {components} components")]
    NotAKnot { components: usize },
    #[error("grid size {size} exceeds the configured limit {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("component counts differ ({left} vs {right})")]
    ComponentMismatch { left: usize, right: usize },
    #[error("inconsistent complex: {0}")]
    Inconsistent(String),
    #[error("generating polynomial is not divisible by the stabilization factor: {0}")]
    NotDivisible(String),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
}

impl Error {
    /// Internal consistency failures, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_) | Error::NotDivisible(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
