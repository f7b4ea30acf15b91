use thiserror::Error;

/// Errors produced while reading programs or evaluating them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("non-rational numeric literal `{literal}` at {line}:{column}")]
    NonRationalLiteral {
        literal: String,
        line: usize,
        column: usize,
    },

    #[error("duplicate #signature declaration at {line}:{column}")]
    DuplicateSignature { line: usize, column: usize },

    #[error("atom `{0}` is not in the signature")]
    AtomOutsideSignature(String),

    #[error("signature has {count} atoms, the limit is {limit}")]
    TooManyAtoms { count: usize, limit: usize },

    #[error("the program has no soft stable models, so its distribution is undefined")]
    EmptyModelSet,

    #[error("rule {index} has non-integer weight {weight}; ASP emission needs integer weights")]
    NonIntegerWeight { index: usize, weight: String },

    #[error("atom `{0}` is not a valid ASP identifier")]
    InvalidAspName(String),

    #[error("generated name `{0}` collides with an atom of the program")]
    NameCollision(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
