use lambda_s1::quantum::FrontendError;
use lambda_s1::EvalError;
use thiserror::Error;

pub const NOT_EQUIVALENT: u8 = 1;
pub const USAGE: u8 = 2;
pub const IO: u8 = 10;
pub const PARSE: u8 = 11;
pub const TYPE: u8 = 12;
pub const STUCK: u8 = 13;
pub const STEP_LIMIT: u8 = 14;
pub const FRONTEND: u8 = 15;

/// Everything a command can fail with, already rendered for the user.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Type(String),
    #[error("{0}")]
    Stuck(String),
    #[error("{0}")]
    StepLimit(String),
    #[error("{0}")]
    Frontend(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => IO,
            CliError::Parse(_) => PARSE,
            CliError::Type(_) => TYPE,
            CliError::Stuck(_) => STUCK,
            CliError::StepLimit(_) => STEP_LIMIT,
            CliError::Frontend(_) => FRONTEND,
            CliError::Usage(_) => USAGE,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Type(_) => "type",
            CliError::Stuck(_) => "stuck",
            CliError::StepLimit(_) => "step-limit",
            CliError::Frontend(_) => "frontend",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn io(path: &str, e: std::io::Error) -> CliError {
        CliError::Io { path: path.to_string(), message: e.to_string() }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> CliError {
        match e {
            EvalError::Stuck { .. } => CliError::Stuck(e.to_string()),
            EvalError::StepLimitExceeded(_) => CliError::StepLimit(e.to_string()),
        }
    }
}

impl From<FrontendError> for CliError {
    fn from(e: FrontendError) -> CliError {
        match e {
            FrontendError::Eval(e) => e.into(),
            FrontendError::Io(message) => CliError::Io { path: "circuit".into(), message },
            other => CliError::Frontend(other.to_string()),
        }
    }
}
