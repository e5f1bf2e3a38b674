//! Turning validated tables into codes.
//!
//! The binary route maps Plus to letter 1 and Minus to letter 0 and must not
//! see any entailed or missing cells, so those columns are dropped (or the
//! build fails, per policy). The ternary route keeps all columns and maps
//! entailed/missing cells to the extra letter 0, with Plus as 1 and Minus
//! as 2.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::code::{Alphabet, Code, CodeError, Letter};
use crate::table::{validate_table, LanguageRecord, ParamValue, ParameterTable, ValidationReport};

/// What to do with entailed (or missing) cells when building a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueHandling {
    /// Drop every column containing such a cell.
    DropColumns,
    /// Encode the cell as letter 0; requires the ternary alphabet.
    TernaryZero,
    /// Fail the build if such a cell survives.
    Error,
}

/// Build policy: target alphabet plus the handling of entailed and missing
/// cells. [`BuildPolicy::binary`] and [`BuildPolicy::ternary`] give the two
/// conventional configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildPolicy {
    pub alphabet: Alphabet,
    pub entailed: ValueHandling,
    pub missing: ValueHandling,
}

impl BuildPolicy {
    /// Binary code over {0, 1}; entailed and missing columns are dropped.
    pub fn binary() -> BuildPolicy {
        BuildPolicy {
            alphabet: Alphabet::BINARY,
            entailed: ValueHandling::DropColumns,
            missing: ValueHandling::DropColumns,
        }
    }

    /// Ternary code over {0, 1, 2}; entailed and missing cells become 0.
    pub fn ternary() -> BuildPolicy {
        BuildPolicy {
            alphabet: Alphabet::TERNARY,
            entailed: ValueHandling::TernaryZero,
            missing: ValueHandling::TernaryZero,
        }
    }
}

/// A built code plus the column bookkeeping the build performed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltCode {
    pub code: Code,
    pub retained_parameters: Vec<String>,
    pub dropped_parameters: Vec<String>,
}

/// Restricts a table to the given languages and parameters, in the requested
/// order. `None` keeps everything in table order.
pub fn select(
    table: &ParameterTable,
    languages: Option<&[String]>,
    parameters: Option<&[String]>,
) -> Result<ParameterTable, BuildError> {
    let rows: Vec<&LanguageRecord> = match languages {
        None => table.languages.iter().collect(),
        Some(names) => names
            .iter()
            .map(|name| {
                table
                    .languages
                    .iter()
                    .find(|record| &record.name == name)
                    .ok_or_else(|| BuildError::UnknownLanguage { name: name.clone() })
            })
            .collect::<Result<_, _>>()?,
    };
    let columns: Vec<usize> = match parameters {
        None => (0..table.parameter_ids.len()).collect(),
        Some(ids) => ids
            .iter()
            .map(|id| {
                table
                    .parameter_ids
                    .iter()
                    .position(|have| have == id)
                    .ok_or_else(|| BuildError::UnknownParameter { id: id.clone() })
            })
            .collect::<Result<_, _>>()?,
    };

    Ok(ParameterTable {
        parameter_ids: columns
            .iter()
            .map(|&c| table.parameter_ids[c].clone())
            .collect(),
        languages: rows
            .into_iter()
            .map(|record| LanguageRecord {
                name: record.name.clone(),
                values: columns.iter().map(|&c| record.values[c]).collect(),
            })
            .collect(),
    })
}

/// Drops every column containing an entailed cell (and, when
/// `drop_missing` is set, every column containing a missing cell).
/// Returns the surviving table and the dropped parameter ids.
pub fn drop_entailed_columns(
    table: &ParameterTable,
    drop_missing: bool,
) -> Result<(ParameterTable, Vec<String>), BuildError> {
    drop_columns(table, |value| {
        value == ParamValue::Entailed || (drop_missing && value == ParamValue::Missing)
    })
}

fn drop_columns(
    table: &ParameterTable,
    doomed: impl Fn(ParamValue) -> bool,
) -> Result<(ParameterTable, Vec<String>), BuildError> {
    let keep: Vec<usize> = (0..table.parameter_ids.len())
        .filter(|&c| {
            !table
                .languages
                .iter()
                .any(|record| record.values.get(c).copied().is_some_and(&doomed))
        })
        .collect();
    if keep.is_empty() {
        return Err(BuildError::ResultEmpty);
    }

    let dropped = (0..table.parameter_ids.len())
        .filter(|c| !keep.contains(c))
        .map(|c| table.parameter_ids[c].clone())
        .collect();
    let kept = ParameterTable {
        parameter_ids: keep.iter().map(|&c| table.parameter_ids[c].clone()).collect(),
        languages: table
            .languages
            .iter()
            .map(|record| LanguageRecord {
                name: record.name.clone(),
                values: keep.iter().map(|&c| record.values[c]).collect(),
            })
            .collect(),
    };
    Ok((kept, dropped))
}

/// Builds a code from a table under the given policy.
///
/// The table is validated first. Column drops requested by the policy happen
/// before encoding; identical surviving rows collapse onto a shared codeword
/// (see [`Code::collisions`]).
pub fn build_code(table: &ParameterTable, policy: &BuildPolicy) -> Result<BuiltCode, BuildError> {
    validate_table(table).map_err(BuildError::Invalid)?;

    let q = policy.alphabet.size();
    if q != 2 && q != 3 {
        return Err(BuildError::AlphabetMismatch {
            alphabet_size: q,
            reason: "table encoding is defined for alphabets of size 2 or 3",
        });
    }
    if (policy.entailed == ValueHandling::TernaryZero
        || policy.missing == ValueHandling::TernaryZero)
        && q != 3
    {
        return Err(BuildError::AlphabetMismatch {
            alphabet_size: q,
            reason: "TernaryZero handling requires the ternary alphabet",
        });
    }

    // Dropping is column-granular: a column goes away if it contains any
    // cell of a kind the policy drops.
    let (working, dropped) = drop_columns(table, |value| match value {
        ParamValue::Entailed => policy.entailed == ValueHandling::DropColumns,
        ParamValue::Missing => policy.missing == ValueHandling::DropColumns,
        _ => false,
    })?;

    let mut entries: Vec<(String, Vec<Letter>)> = Vec::with_capacity(working.languages.len());
    for record in &working.languages {
        let mut letters = Vec::with_capacity(record.values.len());
        for (column, &value) in record.values.iter().enumerate() {
            let letter = match (value, q) {
                (ParamValue::Plus, _) => 1,
                (ParamValue::Minus, 2) => 0,
                (ParamValue::Minus, _) => 2,
                (ParamValue::Entailed, 3) if policy.entailed == ValueHandling::TernaryZero => 0,
                (ParamValue::Missing, 3) if policy.missing == ValueHandling::TernaryZero => 0,
                (value, _) => {
                    return Err(BuildError::UnhandledValue {
                        language: record.name.clone(),
                        parameter: working.parameter_ids[column].clone(),
                        value,
                    })
                }
            };
            letters.push(letter);
        }
        entries.push((record.name.clone(), letters));
    }

    let code = Code::from_labeled_words(policy.alphabet, working.parameter_ids.len(), entries)
        .map_err(BuildError::Code)?;
    Ok(BuiltCode {
        code,
        retained_parameters: working.parameter_ids,
        dropped_parameters: dropped,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    Invalid(ValidationReport),
    UnknownLanguage { name: String },
    UnknownParameter { id: String },
    ResultEmpty,
    UnhandledValue {
        language: String,
        parameter: String,
        value: ParamValue,
    },
    AlphabetMismatch {
        alphabet_size: u32,
        reason: &'static str,
    },
    Code(CodeError),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Invalid(report) => report.fmt(f),
            BuildError::UnknownLanguage { name } => write!(f, "unknown language {name:?}"),
            BuildError::UnknownParameter { id } => write!(f, "unknown parameter {id:?}"),
            BuildError::ResultEmpty => write!(f, "no parameter columns survive the build policy"),
            BuildError::UnhandledValue {
                language,
                parameter,
                value,
            } => write!(
                f,
                "cell ({language:?}, {parameter:?}) is {:?} and the policy does not handle it",
                value
            ),
            BuildError::AlphabetMismatch {
                alphabet_size,
                reason,
            } => write!(f, "alphabet of size {alphabet_size} rejected: {reason}"),
            BuildError::Code(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for BuildError {}
