use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid lasso {0}")]
    Lasso(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] omtrace::Error),
}

impl CliError {
    /// Name of the failure case, printed with every diagnostic.
    pub fn case(&self) -> String {
        match self {
            CliError::Parse { .. } => "ParseError".into(),
            CliError::Lasso(_) => "LassoError".into(),
            CliError::Io { .. } => "IoError".into(),
            CliError::Usage(_) => "UsageError".into(),
            CliError::Core(e) => {
                let debug = format!("{e:?}");
                debug
                    .split([' ', '(', '{'])
                    .next()
                    .unwrap_or("Error")
                    .to_string()
            }
        }
    }
}
