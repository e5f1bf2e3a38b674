//! One error type for the whole command surface, with a stable kind tag so
//! failures can be emitted as machine-readable JSON.

use std::fmt;

use paramcodes_core::bounds::BoundsError;
use paramcodes_core::build::BuildError;
use paramcodes_core::code::CodeError;
use paramcodes_core::ensemble::EnsembleError;
use paramcodes_core::metrics::MetricsError;
use paramcodes_core::spoil::SpoilError;

use crate::format::FormatError;

#[derive(Debug)]
pub enum CliError {
    Format(FormatError),
    Build(BuildError),
    Code(CodeError),
    Metrics(MetricsError),
    Bounds(BoundsError),
    Spoil(SpoilError),
    Ensemble(EnsembleError),
    Io(std::io::Error),
    Usage(String),
}

impl CliError {
    /// Stable machine-readable tag for the JSON error envelope.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Format(_) => "format",
            CliError::Build(_) => "build",
            CliError::Code(_) => "code",
            CliError::Metrics(_) => "metrics",
            CliError::Bounds(_) => "bounds",
            CliError::Spoil(_) => "spoil",
            CliError::Ensemble(_) => "ensemble",
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Format(e) => e.fmt(f),
            CliError::Build(e) => e.fmt(f),
            CliError::Code(e) => e.fmt(f),
            CliError::Metrics(e) => e.fmt(f),
            CliError::Bounds(e) => e.fmt(f),
            CliError::Spoil(e) => e.fmt(f),
            CliError::Ensemble(e) => e.fmt(f),
            CliError::Io(e) => e.fmt(f),
            CliError::Usage(message) => f.write_str(message),
        }
    }
}

impl std::error::Error for CliError {}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Format(e)
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        CliError::Build(e)
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        CliError::Code(e)
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        CliError::Metrics(e)
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Bounds(e)
    }
}

impl From<SpoilError> for CliError {
    fn from(e: SpoilError) -> Self {
        CliError::Spoil(e)
    }
}

impl From<EnsembleError> for CliError {
    fn from(e: EnsembleError) -> Self {
        CliError::Ensemble(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// The JSON envelope printed to stderr on failure.
pub fn error_json(error: &CliError) -> String {
    serde_json::json!({
        "error": error.kind(),
        "message": error.to_string(),
    })
    .to_string()
}
