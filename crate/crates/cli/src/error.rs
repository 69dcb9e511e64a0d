use std::fmt;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values or malformed input: exit 2.
    Usage(String),
    /// A request over a size limit: exit 3.
    Budget(String),
    /// A runtime cross-check failed: exit 4.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Invariant(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Budget(m) => write!(f, "budget exceeded: {m}"),
            CliError::Invariant(m) => write!(f, "internal check failed: {m}"),
        }
    }
}

impl From<generacci::Error> for CliError {
    fn from(e: generacci::Error) -> Self {
        use generacci::Error;
        match e {
            Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            Error::NotCovered { .. } | Error::RngFault { .. } | Error::InvariantViolation(_) => {
                CliError::Invariant(e.to_string())
            }
        }
    }
}

/// Fail with exit 4 unless `ok`.
pub fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Invariant(what()))
    }
}
