use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}{}: {message}", column.as_ref().map(|c| format!(", column {c}")).unwrap_or_default())]
    Parse { line: usize, column: Option<String>, message: String },
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] dssurv_core::Error),
}

impl CliError {
    pub(crate) fn parse(line: usize, column: Option<&str>, message: impl Into<String>) -> Self {
        CliError::Parse { line, column: column.map(str::to_string), message: message.into() }
    }

    /// 2 for parse or configuration problems, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numeric() => 3,
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dssurv_core::Error;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::parse(2, Some("time"), "bad").exit_code(), 2);
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(Error::InvalidArgument("x".into())).exit_code(), 2);
        assert_eq!(CliError::Core(Error::Domain("x".into())).exit_code(), 3);
        assert_eq!(CliError::Core(Error::Convergence("x".into())).exit_code(), 3);
        assert_eq!(CliError::parse(2, Some("time"), "bad").to_string(), "line 2, column time: bad");
    }
}
