use std::process::ExitCode;

/// Why a command stopped; each kind has its own exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// A check failed (exit 2).
    Verification,
    /// Bad input or an unmet precondition such as `gcd(q, |G|) != 1` (exit 3).
    Precondition,
    /// Outside the supported scope: order bound, non-nilpotent input (exit 4).
    Scope,
}

impl Kind {
    pub fn exit_status(self) -> u8 {
        match self {
            Kind::Verification => 2,
            Kind::Precondition => 3,
            Kind::Scope => 4,
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Self::new(Kind::Precondition, message)
    }

    pub fn scope(message: impl Into<String>) -> Self {
        Self::new(Kind::Scope, message)
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self::new(Kind::Verification, message)
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind.exit_status())
    }
}

impl From<wedd_core::Error> for CliError {
    fn from(e: wedd_core::Error) -> Self {
        use wedd_core::Error as E;
        let kind = match e {
            E::OrderBound(_) | E::NotNilpotent | E::EnumerationBound(_) => Kind::Scope,
            E::Verification(_) | E::Construction(_) => Kind::Verification,
            _ => Kind::Precondition,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::precondition(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::precondition(format!("malformed JSON: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
