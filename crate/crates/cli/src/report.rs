//! The analyze pipeline: parse, select, build, measure, classify, and
//! package everything into a deterministic JSON report.
//!
//! The report embeds its own inputs (table text and every option), so any
//! report can be re-run and must reproduce itself byte for byte. Nothing
//! time- or environment-dependent is recorded.

use paramcodes_core::bounds::{classify, CodePoint, Verdict};
use paramcodes_core::build::{build_code, select, BuildPolicy, ValueHandling};
use paramcodes_core::metrics::{
    code_parameters, distance_matrix, CodeParameters, DistanceMatrix, RateBase,
};
use paramcodes_core::{Alphabet, Code};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::format::{parse_table, Delimiter};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolicyChoice {
    Drop,
    Zero,
    Error,
}

impl PolicyChoice {
    pub fn token(self) -> &'static str {
        match self {
            PolicyChoice::Drop => "drop",
            PolicyChoice::Zero => "zero",
            PolicyChoice::Error => "error",
        }
    }

    pub fn from_token(token: &str) -> Option<PolicyChoice> {
        match token {
            "drop" => Some(PolicyChoice::Drop),
            "zero" => Some(PolicyChoice::Zero),
            "error" => Some(PolicyChoice::Error),
            _ => None,
        }
    }

    pub(crate) fn handling(self) -> ValueHandling {
        match self {
            PolicyChoice::Drop => ValueHandling::DropColumns,
            PolicyChoice::Zero => ValueHandling::TernaryZero,
            PolicyChoice::Error => ValueHandling::Error,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Alphabet size, 2 or 3.
    pub alphabet: u32,
    /// Base for the classified rate; parameters are always reported in both.
    pub rate_base: RateBase,
    /// Defaults by alphabet: drop for q=2, zero for q=3.
    pub entailed: Option<PolicyChoice>,
    pub missing: Option<PolicyChoice>,
    pub languages: Option<Vec<String>>,
    pub parameters: Option<Vec<String>>,
    pub delimiter: Option<Delimiter>,
    /// Report heading; defaults to the selected or full language list.
    pub family: Option<String>,
}

impl AnalyzeOptions {
    pub fn new(alphabet: u32) -> AnalyzeOptions {
        AnalyzeOptions {
            alphabet,
            rate_base: RateBase::Alphabet,
            entailed: None,
            missing: None,
            languages: None,
            parameters: None,
            delimiter: None,
            family: None,
        }
    }

    fn default_choice(&self) -> PolicyChoice {
        if self.alphabet == 3 {
            PolicyChoice::Zero
        } else {
            PolicyChoice::Drop
        }
    }

    fn entailed_choice(&self) -> PolicyChoice {
        self.entailed.unwrap_or_else(|| self.default_choice())
    }

    fn missing_choice(&self) -> PolicyChoice {
        self.missing.unwrap_or_else(|| self.default_choice())
    }
}

/// Everything needed to reproduce a report, embedded in the report itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInputs {
    pub table: String,
    pub alphabet: u32,
    pub rate_base: String,
    pub entailed: String,
    pub missing: String,
    pub languages: Option<Vec<String>>,
    pub parameters: Option<Vec<String>>,
    pub delimiter: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametersJson {
    pub rate_base: String,
    pub block_length: usize,
    pub word_count: usize,
    pub min_distance: usize,
    pub dimension: f64,
    pub rate: f64,
    pub relative_distance: String,
    pub distance_multiset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub bound: String,
    pub inequality: String,
    pub margin: f64,
    pub fired: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub rate_base: String,
    pub singleton_slack: String,
    pub verdict: String,
    pub certificates: Vec<CertificateJson>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub labels: Vec<String>,
    pub absolute: Vec<Vec<usize>>,
    pub relative: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LanguageEntry {
    pub name: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub family: String,
    pub inputs: ReportInputs,
    pub retained_parameters: Vec<String>,
    pub dropped_parameters: Vec<String>,
    pub languages: Vec<LanguageEntry>,
    pub collisions: Vec<Vec<String>>,
    pub parameters_base_q: ParametersJson,
    pub parameters_base_2: ParametersJson,
    pub classification: ClassificationJson,
    pub distance_matrix: MatrixJson,
}

pub fn rate_base_token(base: RateBase) -> &'static str {
    match base {
        RateBase::Alphabet => "q",
        RateBase::Two => "2",
    }
}

pub fn rate_base_from_token(token: &str) -> Option<RateBase> {
    match token {
        "q" => Some(RateBase::Alphabet),
        "2" => Some(RateBase::Two),
        _ => None,
    }
}

fn delimiter_token(d: Delimiter) -> &'static str {
    match d {
        Delimiter::Tab => "tab",
        Delimiter::Comma => "comma",
    }
}

pub fn delimiter_from_token(token: &str) -> Option<Delimiter> {
    match token {
        "tab" => Some(Delimiter::Tab),
        "comma" => Some(Delimiter::Comma),
        _ => None,
    }
}

pub fn word_string(letters: &[u32]) -> String {
    letters
        .iter()
        .map(|&a| char::from_digit(a, 10).unwrap_or('#'))
        .collect()
}

pub fn parameters_json_of(p: &CodeParameters) -> ParametersJson {
    ParametersJson {
        rate_base: rate_base_token(p.rate_base).to_owned(),
        block_length: p.block_length,
        word_count: p.word_count,
        min_distance: p.min_distance,
        dimension: p.dimension,
        rate: p.rate,
        relative_distance: p.relative_distance.to_string(),
        distance_multiset: p.distance_multiset.clone(),
    }
}

pub fn matrix_json(matrix: &DistanceMatrix) -> MatrixJson {
    MatrixJson {
        labels: matrix.labels.clone(),
        absolute: matrix.absolute.clone(),
        relative: matrix
            .relative
            .iter()
            .map(|row| row.iter().map(|r| r.to_string()).collect())
            .collect(),
    }
}

fn verdict_token(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::AboveAsymptotic => "above_asymptotic",
        Verdict::BelowGv => "below_gv",
        Verdict::Indeterminate => "indeterminate",
    }
}

/// Classifies a code's point with Singleton slack 1/n.
pub fn classification_json(
    code: &Code,
    parameters: &CodeParameters,
) -> Result<ClassificationJson, CliError> {
    let point = CodePoint::new(
        parameters.relative_distance,
        parameters.rate,
        code.alphabet(),
    )?;
    let n = code.block_length();
    let result = classify(&point, 1.0 / n as f64)?;
    Ok(ClassificationJson {
        rate_base: rate_base_token(parameters.rate_base).to_owned(),
        singleton_slack: format!("1/{n}"),
        verdict: verdict_token(result.verdict).to_owned(),
        certificates: result
            .certificates
            .iter()
            .map(|c| CertificateJson {
                bound: c.bound.name().to_owned(),
                inequality: c.inequality.clone(),
                margin: c.margin,
                fired: c.fired,
            })
            .collect(),
        notes: result.notes,
    })
}

/// The full pipeline on a table document. Pure: equal text and options give
/// an equal report.
pub fn analyze(text: &str, options: &AnalyzeOptions) -> Result<AnalysisReport, CliError> {
    let alphabet = Alphabet::new(options.alphabet)?;
    let table = parse_table(text, options.delimiter)?;
    let table = if options.languages.is_some() || options.parameters.is_some() {
        select(
            &table,
            options.languages.as_deref(),
            options.parameters.as_deref(),
        )?
    } else {
        table
    };

    let policy = BuildPolicy {
        alphabet,
        entailed: options.entailed_choice().handling(),
        missing: options.missing_choice().handling(),
    };
    let built = build_code(&table, &policy)?;

    let parameters_base_q = code_parameters(&built.code, RateBase::Alphabet)?;
    let parameters_base_2 = code_parameters(&built.code, RateBase::Two)?;
    let classified = match options.rate_base {
        RateBase::Alphabet => &parameters_base_q,
        RateBase::Two => &parameters_base_2,
    };
    let classification = classification_json(&built.code, classified)?;

    let matrix = distance_matrix(&built.code)?;
    let family = options.family.clone().unwrap_or_else(|| {
        table
            .languages
            .iter()
            .map(|l| l.name.as_str())
            .collect::<Vec<_>>()
            .join("-")
    });

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        family,
        inputs: ReportInputs {
            table: text.to_owned(),
            alphabet: options.alphabet,
            rate_base: rate_base_token(options.rate_base).to_owned(),
            entailed: options.entailed_choice().token().to_owned(),
            missing: options.missing_choice().token().to_owned(),
            languages: options.languages.clone(),
            parameters: options.parameters.clone(),
            delimiter: options.delimiter.map(|d| delimiter_token(d).to_owned()),
        },
        retained_parameters: built.retained_parameters.clone(),
        dropped_parameters: built.dropped_parameters.clone(),
        languages: built
            .code
            .labels()
            .iter()
            .map(|(name, idx)| LanguageEntry {
                name: name.clone(),
                word: word_string(&built.code.words()[*idx].letters),
            })
            .collect(),
        collisions: built.code.collisions(),
        parameters_base_q: parameters_json_of(&parameters_base_q),
        parameters_base_2: parameters_json_of(&parameters_base_2),
        classification,
        distance_matrix: matrix_json(&matrix),
    })
}

/// Replays a report from its embedded inputs. Must reproduce the report
/// exactly; used by the determinism checks and available for audits.
pub fn rerun(report: &AnalysisReport) -> Result<AnalysisReport, CliError> {
    let inputs = &report.inputs;
    let rate_base = rate_base_from_token(&inputs.rate_base)
        .ok_or_else(|| CliError::Usage(format!("bad rate_base {:?} in report", inputs.rate_base)))?;
    let entailed = PolicyChoice::from_token(&inputs.entailed)
        .ok_or_else(|| CliError::Usage(format!("bad entailed {:?} in report", inputs.entailed)))?;
    let missing = PolicyChoice::from_token(&inputs.missing)
        .ok_or_else(|| CliError::Usage(format!("bad missing {:?} in report", inputs.missing)))?;
    let delimiter = match &inputs.delimiter {
        Some(token) => Some(delimiter_from_token(token).ok_or_else(|| {
            CliError::Usage(format!("bad delimiter {:?} in report", token))
        })?),
        None => None,
    };
    let options = AnalyzeOptions {
        alphabet: inputs.alphabet,
        rate_base,
        entailed: Some(entailed),
        missing: Some(missing),
        languages: inputs.languages.clone(),
        parameters: inputs.parameters.clone(),
        delimiter,
        family: Some(report.family.clone()),
    };
    analyze(&inputs.table, &options)
}

/// Canonical rendering: pretty JSON with a trailing newline.
pub fn report_json(report: &AnalysisReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}
