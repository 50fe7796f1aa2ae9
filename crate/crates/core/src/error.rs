use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised while reading, validating or analysing a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid specification{}: {message}", location.as_ref().map(|l| format!(" ({l})")).unwrap_or_default())]
    Spec {
        location: Option<String>,
        message: String,
    },

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("color Lie axioms fail: {0}")]
    AxiomsFailed(String),

    #[error("color Lie ring is not purely positive: {0}")]
    NotPurelyPositive(String),

    #[error("bicharacter value is not a unit: {0}")]
    NonUnitEpsilon(String),

    #[error("symbolic parameter `{0}` has no instantiation")]
    SymbolicParameter(String),

    #[error("epsilon(|x|,|x|) is not a sign for {0}")]
    ValueNotSign(String),
}

impl Error {
    pub fn spec(message: impl Into<String>) -> Self {
        Error::Spec {
            location: None,
            message: message.into(),
        }
    }

    pub fn spec_at(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Spec {
            location: Some(location.into()),
            message: message.into(),
        }
    }

    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Shifts a parse error produced on a sub-string to its position in the
    /// enclosing file.
    pub fn relocate(self, line: usize, column_offset: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column: column + column_offset,
                message,
            },
            Error::NotAUnit(m) => Error::Parse {
                line,
                column: column_offset + 1,
                message: format!("not a unit: {m}"),
            },
            other => other,
        }
    }
}
