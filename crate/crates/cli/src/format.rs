//! Reading and writing parameter tables.
//!
//! The input is a delimiter-separated UTF-8 document: a header row whose
//! first cell labels the language column and whose remaining cells are
//! parameter ids, then one row per language. Body cells must be one of
//! `+`, `+1`, `1`, `-`, `-1`, `0`, `?`. The delimiter is auto-detected
//! from the header line (tab wins over comma) and can be forced.

use std::fmt;

use csv::{ReaderBuilder, Trim};
use paramcodes_core::table::{validate_table, ValidationReport};
use paramcodes_core::{LanguageRecord, ParamValue, ParameterTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Delimiter {
    Tab,
    Comma,
}

impl Delimiter {
    fn byte(self) -> u8 {
        match self {
            Delimiter::Tab => b'\t',
            Delimiter::Comma => b',',
        }
    }
}

/// Picks the delimiter from the header line: tab if present, comma
/// otherwise.
pub fn detect_delimiter(text: &str) -> Delimiter {
    let header = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if header.contains('\t') {
        Delimiter::Tab
    } else {
        Delimiter::Comma
    }
}

/// Parses a table document. `delimiter: None` auto-detects.
pub fn parse_table(
    text: &str,
    delimiter: Option<Delimiter>,
) -> Result<ParameterTable, FormatError> {
    let delimiter = delimiter.unwrap_or_else(|| detect_delimiter(text));
    let mut reader = ReaderBuilder::new()
        .delimiter(delimiter.byte())
        .has_headers(false)
        .flexible(true)
        .quoting(false)
        .trim(Trim::All)
        .from_reader(text.as_bytes());

    let mut rows: Vec<(u64, Vec<String>)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| FormatError::Syntax {
            line: e
                .position()
                .map(|p| p.line())
                .unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let cells: Vec<String> = record.iter().map(str::to_owned).collect();
        if cells.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows.push((line, cells));
    }

    let mut rows = rows.into_iter();
    let (_, header) = rows.next().ok_or(FormatError::EmptyTable)?;
    let parameter_ids: Vec<String> = header.into_iter().skip(1).collect();

    let mut languages = Vec::new();
    for (line, cells) in rows {
        let mut cells = cells.into_iter();
        let name = cells.next().unwrap_or_default();
        let mut values = Vec::new();
        for (i, token) in cells.enumerate() {
            let value =
                ParamValue::from_token(&token).ok_or(FormatError::UnknownCellValue {
                    line,
                    column: i + 2,
                    token: token.clone(),
                })?;
            values.push(value);
        }
        languages.push(LanguageRecord { name, values });
    }
    if languages.is_empty() {
        return Err(FormatError::EmptyTable);
    }

    let table = ParameterTable {
        parameter_ids,
        languages,
    };
    validate_table(&table).map_err(FormatError::Invalid)?;
    Ok(table)
}

/// Canonical tab-separated rendering; `parse_table` reads it back to an
/// equal table.
pub fn serialize_table(table: &ParameterTable) -> String {
    let mut out = String::from("language");
    for id in &table.parameter_ids {
        out.push('\t');
        out.push_str(id);
    }
    out.push('\n');
    for language in &table.languages {
        out.push_str(&language.name);
        for value in &language.values {
            out.push('\t');
            out.push_str(value.canonical_token());
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum FormatError {
    EmptyTable,
    UnknownCellValue {
        line: u64,
        column: usize,
        token: String,
    },
    Syntax {
        line: u64,
        message: String,
    },
    Invalid(ValidationReport),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::EmptyTable => {
                write!(f, "table has a header but no language rows (or is empty)")
            }
            FormatError::UnknownCellValue {
                line,
                column,
                token,
            } => write!(
                f,
                "line {line}, column {column}: unknown cell value {token:?} \
                 (expected one of +, +1, 1, -, -1, 0, ?)"
            ),
            FormatError::Syntax { line, message } => {
                write!(f, "line {line}: {message}")
            }
            FormatError::Invalid(report) => report.fmt(f),
        }
    }
}

impl std::error::Error for FormatError {}
