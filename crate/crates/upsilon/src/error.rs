use thiserror::Error;

/// Errors surfaced by the algebra and its front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("tie partition has {got} points but the closure has {expected} components")]
    ComponentMismatch { got: usize, expected: usize },

    #[error("word of degree zero cannot be resolved")]
    DegreeZero,

    #[error("resolution vector has length {got}, expected the singular degree {expected}")]
    ResolutionLength { got: usize, expected: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
