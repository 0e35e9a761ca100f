use std::fmt;

/// Everything that ends a command with exit status 2.
#[derive(Debug)]
pub enum CliError {
    /// Schema or value problems, one message per offending field.
    Invalid(Vec<String>),
    Library(polyclone::Error),
    Io(String, std::io::Error),
    Json(String, serde_json::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msgs) => {
                for (k, m) in msgs.iter().enumerate() {
                    if k > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Json(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<polyclone::Error> for CliError {
    fn from(e: polyclone::Error) -> Self {
        CliError::Library(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(vec![msg.into()])
}
