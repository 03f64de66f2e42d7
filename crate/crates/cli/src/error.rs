use std::fmt;
use std::process::ExitCode;

use bumac::binary::BinaryError;
use bumac::channel::ChannelError;
use bumac::extremal::ExtremalError;
use bumac::format::FormatError;
use bumac::matroid::MatroidError;
use bumac::quasi::QuasiError;
use bumac::recursion::RecursionError;

/// Failure classes, one exit code each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Io = 1,
    Parse = 2,
    Cap = 3,
    Axiom = 4,
    Refused = 5,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.kind as u8)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn channel_kind(e: &ChannelError) -> Kind {
    match e {
        ChannelError::TooLarge { .. } | ChannelError::DenominatorOverflow | ChannelError::UnsupportedAlphabet(_) => {
            Kind::Cap
        }
        _ => Kind::Parse,
    }
}

fn matroid_kind(e: &MatroidError) -> Kind {
    match e {
        MatroidError::AxiomViolation(_) => Kind::Axiom,
        MatroidError::GroundTooLarge(_) => Kind::Cap,
        _ => Kind::Parse,
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        let kind = match &e {
            FormatError::Matroid(m) => matroid_kind(m),
            FormatError::Channel(c) => channel_kind(c),
            _ => Kind::Parse,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        CliError::new(channel_kind(&e), e.to_string())
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        CliError::new(matroid_kind(&e), e.to_string())
    }
}

impl From<BinaryError> for CliError {
    fn from(e: BinaryError) -> Self {
        CliError::new(Kind::Cap, e.to_string())
    }
}

impl From<ExtremalError> for CliError {
    fn from(e: ExtremalError) -> Self {
        let kind = match &e {
            ExtremalError::Channel(c) => channel_kind(c),
            ExtremalError::AxiomViolation(_) | ExtremalError::NotBinary | ExtremalError::NotExtremal(_) => Kind::Refused,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<QuasiError> for CliError {
    fn from(e: QuasiError) -> Self {
        let kind = match &e {
            QuasiError::Channel(c) => channel_kind(c),
            _ => Kind::Refused,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<RecursionError> for CliError {
    fn from(e: RecursionError) -> Self {
        CliError::new(Kind::Parse, e.to_string())
    }
}
