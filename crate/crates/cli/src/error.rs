use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at column {}: {msg}", pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at column {}", pos + 1)]
    UnknownIdentifier { pos: usize, name: String },
    #[error("in {context}: {source}")]
    In { context: String, source: Box<CliError> },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] planefol_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        CliError::Syntax { pos, msg: msg.into() }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        CliError::In {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// Module the error originates from.
    pub fn layer(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.layer(),
            CliError::In { source, .. } => source.layer(),
            _ => "cli",
        }
    }
}
