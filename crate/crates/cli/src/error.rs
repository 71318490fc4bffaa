use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("membership undecided for {0:?}")]
    Ambiguous(Vec<u64>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Ambiguous(_) => 3,
            CliError::Io(_) | CliError::Internal(_) => 1,
        }
    }

    /// One-line JSON description for stderr.
    pub fn json_line(&self) -> String {
        let kind = match self {
            CliError::Validation(_) => "validation",
            CliError::Ambiguous(_) => "ambiguous",
            CliError::Io(_) => "io",
            CliError::Internal(_) => "internal",
        };
        json!({ "error": kind, "reason": self.to_string() }).to_string()
    }
}

impl From<gpsprimes::Error> for CliError {
    fn from(e: gpsprimes::Error) -> Self {
        use gpsprimes::Error as E;
        match e {
            E::Ambiguous { value } => CliError::Ambiguous(vec![value]),
            E::RangeOrder { .. }
            | E::ZeroSegment
            | E::ZeroArgument
            | E::ModulusTooSmall(_)
            | E::InvalidParams(_)
            | E::NonCoprime { .. } => CliError::Validation(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

pub fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}
