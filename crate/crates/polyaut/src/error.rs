use crate::parse::ParseError;

/// Failure while reading one of the text formats.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {error}")]
    Parse { line: usize, error: ParseError },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] polyaut_core::Error),
}

impl FormatError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        FormatError::Syntax { line, message: message.into() }
    }
}
