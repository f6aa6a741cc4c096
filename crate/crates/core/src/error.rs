use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Tables that do not even describe a category: indices out of range,
    /// unknown labels, duplicate names.
    #[error("structural error: {0}")]
    Structure(String),

    /// Well-formed tables whose composition violates the category axioms.
    #[error("category axioms violated: {}", .0.join("; "))]
    Axioms(Vec<String>),

    #[error("functor is not functorial: {}", .0.join("; "))]
    Functoriality(Vec<String>),

    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity { what: String, needed: usize, limit: usize },

    #[error("nerve is infinite dimensional: non-identity cycle {cycle}")]
    InfiniteDimension { cycle: String },

    /// A declared connectivity that the vertex does not have.
    #[error("annotation does not hold: {0}")]
    Annotation(String),

    #[error("chain data: {0}")]
    Chain(String),

    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit status for command-line front ends: 1 when the input is well
    /// formed but fails a property it claims, 2 otherwise.
    pub fn is_verification_failure(&self) -> bool {
        matches!(self, Error::Axioms(_) | Error::Functoriality(_) | Error::Annotation(_))
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { context: context.into(), message: message.into() }
    }
}
