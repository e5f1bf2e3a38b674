//! Command-line companion to `paramcodes-core`: table ingestion, the
//! analyze pipeline with deterministic JSON reports, CSV emitters, and the
//! subcommand surface.

pub mod cli;
pub mod emit;
pub mod error;
pub mod format;
pub mod report;

pub use error::CliError;
pub use format::{parse_table, serialize_table, Delimiter, FormatError};
pub use report::{analyze, rerun, report_json, AnalysisReport, AnalyzeOptions};
