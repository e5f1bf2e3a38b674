//! Parameter tables: languages crossed with syntactic parameter values.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Value of one syntactic parameter in one language.
///
/// `Entailed` marks a parameter whose value is forced by another parameter
/// ("0" in source tables); `Missing` marks a gap in the data ("?").
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParamValue {
    Plus,
    Minus,
    Entailed,
    Missing,
}

impl ParamValue {
    /// Maps a source-table cell token to a value. Accepted spellings:
    /// `+`, `+1`, `1` (plus), `-`, `-1` (minus), `0` (entailed), `?` (missing).
    pub fn from_token(token: &str) -> Option<ParamValue> {
        match token {
            "+" | "+1" | "1" => Some(ParamValue::Plus),
            "-" | "-1" => Some(ParamValue::Minus),
            "0" => Some(ParamValue::Entailed),
            "?" => Some(ParamValue::Missing),
            _ => None,
        }
    }

    /// Canonical token used when writing tables back out.
    pub fn canonical_token(&self) -> &'static str {
        match self {
            ParamValue::Plus => "+",
            ParamValue::Minus => "-",
            ParamValue::Entailed => "0",
            ParamValue::Missing => "?",
        }
    }
}

/// One language's row of parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageRecord {
    pub name: String,
    pub values: Vec<ParamValue>,
}

/// A languages-by-parameters table. Row `i` of `languages` has one value per
/// entry of `parameter_ids`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterTable {
    pub parameter_ids: Vec<String>,
    pub languages: Vec<LanguageRecord>,
}

/// Checks the structural invariants of a table and reports every violation
/// found, not just the first. A table that validates once validates again
/// unchanged; no canonicalization is applied.
pub fn validate_table(table: &ParameterTable) -> Result<(), ValidationReport> {
    let mut violations = Vec::new();

    if table.parameter_ids.is_empty() || table.languages.is_empty() {
        violations.push(TableViolation::EmptyTable);
    }
    for (column, id) in table.parameter_ids.iter().enumerate() {
        if id.is_empty() {
            violations.push(TableViolation::EmptyParameterId { column: column + 1 });
        }
        if table.parameter_ids[..column].contains(id) {
            violations.push(TableViolation::DuplicateParameter { id: id.clone() });
        }
    }
    for (row, language) in table.languages.iter().enumerate() {
        if language.name.is_empty() {
            violations.push(TableViolation::EmptyLanguageName { row: row + 1 });
        }
        if table.languages[..row]
            .iter()
            .any(|other| other.name == language.name)
        {
            violations.push(TableViolation::DuplicateLanguage {
                name: language.name.clone(),
            });
        }
        if language.values.len() != table.parameter_ids.len() {
            violations.push(TableViolation::RaggedRow {
                language: language.name.clone(),
                expected: table.parameter_ids.len(),
                found: language.values.len(),
            });
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(ValidationReport { violations })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableViolation {
    EmptyTable,
    DuplicateLanguage { name: String },
    DuplicateParameter { id: String },
    RaggedRow { language: String, expected: usize, found: usize },
    EmptyLanguageName { row: usize },
    EmptyParameterId { column: usize },
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableViolation::EmptyTable => {
                write!(f, "table needs at least one language and one parameter")
            }
            TableViolation::DuplicateLanguage { name } => {
                write!(f, "language {name:?} appears more than once")
            }
            TableViolation::DuplicateParameter { id } => {
                write!(f, "parameter {id:?} appears more than once")
            }
            TableViolation::RaggedRow {
                language,
                expected,
                found,
            } => write!(
                f,
                "row for {language:?} has {found} values, expected {expected}"
            ),
            TableViolation::EmptyLanguageName { row } => {
                write!(f, "row {row} has an empty language name")
            }
            TableViolation::EmptyParameterId { column } => {
                write!(f, "column {column} has an empty parameter id")
            }
        }
    }
}

/// Every violation found in a table, in row-major discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<TableViolation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid table:")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for ValidationReport {}
