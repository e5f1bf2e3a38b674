//! Command definitions and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use paramcodes_core::bounds::{classify, emit_bound_curves, CodePoint};
use paramcodes_core::build::{build_code, select, BuildPolicy};
use paramcodes_core::code::Letter;
use paramcodes_core::ensemble::{
    cloud_from_samples, enumerate_codes, sample_srce, EnsembleConfig,
};
use paramcodes_core::metrics::{distance_matrix, RateBase};
use paramcodes_core::spoil::{
    spoil_extend, spoil_project, spoil_restrict, LawVerdict, SpoilFunction, SpoilReport,
};
use paramcodes_core::{Alphabet, Code, Rational};

use crate::emit::{cloud_csv, cloud_json, curves_csv, matrix_csv, samples_json};
use crate::error::CliError;
use crate::format::{parse_table, Delimiter};
use crate::report::{
    analyze, parameters_json_of, rate_base_from_token, word_string, AnalyzeOptions,
    ParametersJson, PolicyChoice, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(
    name = "paramcodes",
    version,
    about = "Block-code analysis of binary and ternary syntactic parameter tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Parse a table, build the code, measure and classify it, emit JSON
    Analyze(AnalyzeArgs),
    /// Distance matrix of the code built from a table
    Distances(DistancesArgs),
    /// Classify a raw (delta, rate) point against the bounds
    Classify(ClassifyArgs),
    /// Apply extend/project/restrict to the code built from a table
    Spoil(SpoilArgs),
    /// Sample random codes with independent uniform letters
    Sample(SampleArgs),
    /// Enumerate every code of a given shape into a point cloud
    Enumerate(EnumerateArgs),
    /// Emit the GV/Hamming/Singleton/Plotkin curves
    BoundsCurve(BoundsCurveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        _ => Err(format!("unknown format {s:?} (expected json or csv)")),
    }
}

fn parse_policy(s: &str) -> Result<PolicyChoice, String> {
    PolicyChoice::from_token(s)
        .ok_or_else(|| format!("unknown policy {s:?} (expected drop, zero, or error)"))
}

fn parse_delimiter(s: &str) -> Result<Delimiter, String> {
    crate::report::delimiter_from_token(s)
        .ok_or_else(|| format!("unknown delimiter {s:?} (expected tab or comma)"))
}

fn parse_rate_base(s: &str) -> Result<RateBase, String> {
    rate_base_from_token(s).ok_or_else(|| format!("unknown rate base {s:?} (expected q or 2)"))
}

/// Flags shared by every table-consuming subcommand.
#[derive(Args)]
pub struct BuildFlags {
    /// Alphabet size
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub alphabet: u32,
    /// Entailed-cell handling: drop | zero | error (default: drop for q=2, zero for q=3)
    #[arg(long, value_parser = parse_policy)]
    pub entailed: Option<PolicyChoice>,
    /// Missing-cell handling: drop | zero | error (default as for --entailed)
    #[arg(long, value_parser = parse_policy)]
    pub missing: Option<PolicyChoice>,
    /// Keep only these languages, in this order (comma-separated)
    #[arg(long, value_delimiter = ',')]
    pub languages: Option<Vec<String>>,
    /// Keep only these parameter ids, in this order (comma-separated)
    #[arg(long, value_delimiter = ',')]
    pub parameters: Option<Vec<String>>,
    /// Cell delimiter: tab | comma (default: auto-detect)
    #[arg(long, value_parser = parse_delimiter)]
    pub delimiter: Option<Delimiter>,
}

impl BuildFlags {
    fn options(&self, rate_base: RateBase, family: Option<String>) -> AnalyzeOptions {
        AnalyzeOptions {
            alphabet: self.alphabet,
            rate_base,
            entailed: self.entailed,
            missing: self.missing,
            languages: self.languages.clone(),
            parameters: self.parameters.clone(),
            delimiter: self.delimiter,
            family,
        }
    }

    /// Parse + select + build, for the subcommands that want the code itself.
    fn build(&self, text: &str) -> Result<Code, CliError> {
        let table = parse_table(text, self.delimiter)?;
        let table = if self.languages.is_some() || self.parameters.is_some() {
            select(&table, self.languages.as_deref(), self.parameters.as_deref())?
        } else {
            table
        };
        let policy = BuildPolicy {
            alphabet: Alphabet::new(self.alphabet)?,
            entailed: self
                .entailed
                .unwrap_or(self.default_choice())
                .handling(),
            missing: self
                .missing
                .unwrap_or(self.default_choice())
                .handling(),
        };
        Ok(build_code(&table, &policy)?.code)
    }

    fn default_choice(&self) -> PolicyChoice {
        if self.alphabet == 3 {
            PolicyChoice::Zero
        } else {
            PolicyChoice::Drop
        }
    }
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Table file
    pub table: PathBuf,
    #[command(flatten)]
    pub build: BuildFlags,
    /// Rate base used for classification: q | 2
    #[arg(long, default_value = "q", value_parser = parse_rate_base)]
    pub rate_base: RateBase,
    /// Report heading (default: the language list)
    #[arg(long)]
    pub family: Option<String>,
    /// Output format (analyze emits json only)
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: OutputFormat,
    /// Write here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct DistancesArgs {
    /// Table file
    pub table: PathBuf,
    #[command(flatten)]
    pub build: BuildFlags,
    /// Emit the relative (fractional) matrix instead of counts (csv only)
    #[arg(long)]
    pub relative: bool,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ClassifyArgs {
    /// Relative distance, decimal ("0.52") or fraction ("13/25")
    #[arg(long)]
    pub delta: String,
    /// Rate in [0, 1]
    #[arg(long)]
    pub rate: f64,
    /// Alphabet size
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub alphabet: u32,
    /// Known block length; sets the Singleton slack to 1/n (default: no slack)
    #[arg(long)]
    pub block_length: Option<usize>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct SpoilArgs {
    /// Table file
    pub table: PathBuf,
    #[command(flatten)]
    pub build: BuildFlags,
    /// Operation: extend | project | restrict
    #[arg(long)]
    pub op: String,
    /// 1-based position (extend: 1..=n+1, others: 1..=n)
    #[arg(long)]
    pub position: usize,
    /// Letter for restrict
    #[arg(long)]
    pub letter: Option<Letter>,
    /// Extension function: constant-<letter> | parity | @<file> (lines: word letter)
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct SampleArgs {
    /// Alphabet size
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub alphabet: u32,
    /// Word length n
    #[arg(long)]
    pub block_length: usize,
    /// Number of distinct words per code
    #[arg(long)]
    pub word_count: usize,
    /// Number of codes to draw
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// RNG seed; equal seeds give equal output
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// json: per-trial words and parameters; csv: aggregated point cloud
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct EnumerateArgs {
    /// Alphabet size
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub alphabet: u32,
    /// Word length n
    #[arg(long)]
    pub block_length: usize,
    /// Number of distinct words per code
    #[arg(long)]
    pub word_count: usize,
    /// Refuse to enumerate more codes than this
    #[arg(long, default_value_t = 1_000_000)]
    pub cap: u64,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct BoundsCurveArgs {
    /// Alphabet size
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub alphabet: u32,
    /// Number of evenly spaced sample points on [0, 1]
    #[arg(long, default_value_t = 512)]
    pub samples: usize,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Relative --output paths resolve against PARAMCODES_OUTPUT_DIR when set.
fn resolve_output(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("PARAMCODES_OUTPUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

fn write_out(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            let path = resolve_output(path);
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("value serializes");
    out.push('\n');
    out
}

/// "13/25" or "0.52" to an exact nonnegative rational.
pub fn parse_ratio(s: &str) -> Result<Rational, CliError> {
    let bad = |s: &str| CliError::Usage(format!("cannot parse {s:?} as a fraction or decimal"));
    if let Some((numer, denom)) = s.split_once('/') {
        let numer: u64 = numer.trim().parse().map_err(|_| bad(s))?;
        let denom: u64 = denom.trim().parse().map_err(|_| bad(s))?;
        if denom == 0 {
            return Err(bad(s));
        }
        return Ok(Rational::new(numer, denom));
    }
    let (whole, frac) = match s.split_once('.') {
        Some((w, f)) => (w, f),
        None => (s, ""),
    };
    if !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 18 {
        return Err(bad(s));
    }
    let whole: u64 = if whole.is_empty() {
        0
    } else {
        whole.parse().map_err(|_| bad(s))?
    };
    let scale = 10u64.pow(frac.len() as u32);
    let frac: u64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad(s))?
    };
    let numer = whole
        .checked_mul(scale)
        .and_then(|w| w.checked_add(frac))
        .ok_or_else(|| bad(s))?;
    Ok(Rational::new(numer, scale))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyJson {
    pub schema_version: u32,
    pub alphabet: u32,
    pub delta: String,
    pub delta_decimal: f64,
    pub rate: f64,
    pub singleton_slack: f64,
    pub verdict: String,
    pub certificates: Vec<crate::report::CertificateJson>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpoilOpJson {
    pub kind: String,
    pub position: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub letter: Option<Letter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpoilJson {
    pub schema_version: u32,
    pub op: SpoilOpJson,
    pub before: ParametersJson,
    pub after: ParametersJson,
    pub word_collision: bool,
    pub law: String,
    pub languages: Vec<crate::report::LanguageEntry>,
    pub collisions: Vec<Vec<String>>,
}

pub fn law_token(verdict: &LawVerdict) -> String {
    match verdict {
        LawVerdict::ExtendConstant => "extend_constant".into(),
        LawVerdict::ExtendSeparating => "extend_separating".into(),
        LawVerdict::ExtendGeneral => "extend_general".into(),
        LawVerdict::ProjectDistanceDropped => "project_distance_dropped".into(),
        LawVerdict::ProjectDistanceKept => "project_distance_kept".into(),
        LawVerdict::ProjectMerged => "project_merged".into(),
        LawVerdict::RestrictConstantColumn => "restrict_constant_column".into(),
        LawVerdict::RestrictMajority => "restrict_majority".into(),
        LawVerdict::RestrictMinority => "restrict_minority".into(),
        LawVerdict::Violation(message) => format!("violation: {message}"),
    }
}

fn spoil_json(args: &SpoilArgs, code: &Code, report: &SpoilReport) -> SpoilJson {
    SpoilJson {
        schema_version: SCHEMA_VERSION,
        op: SpoilOpJson {
            kind: args.op.clone(),
            position: args.position,
            letter: args.letter,
            function: args.function.clone(),
        },
        before: parameters_json_of(&report.before),
        after: parameters_json_of(&report.after),
        word_collision: report.word_collision,
        law: law_token(&report.law),
        languages: code
            .labels()
            .iter()
            .map(|(name, idx)| crate::report::LanguageEntry {
                name: name.clone(),
                word: word_string(&code.words()[*idx].letters),
            })
            .collect(),
        collisions: code.collisions(),
    }
}

/// Parses --function: "constant-<letter>", "parity", or "@file" with one
/// "word letter" pair per line.
fn parse_function(spec: &str, alphabet: Alphabet) -> Result<SpoilFunction, CliError> {
    if let Some(rest) = spec.strip_prefix("constant-") {
        let letter: Letter = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("bad constant letter {rest:?}")))?;
        if !alphabet.contains(letter) {
            return Err(CliError::Usage(format!(
                "letter {letter} is outside the {}-letter alphabet",
                alphabet.size()
            )));
        }
        return Ok(SpoilFunction::Constant(letter));
    }
    if spec == "parity" {
        return Ok(SpoilFunction::WordParity);
    }
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)?;
        let mut map = std::collections::BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (word, letter) = match (parts.next(), parts.next(), parts.next()) {
                (Some(w), Some(l), None) => (w, l),
                _ => {
                    return Err(CliError::Usage(format!(
                        "{path}:{}: expected \"word letter\"",
                        i + 1
                    )))
                }
            };
            let word: Vec<Letter> = word
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| alphabet.contains(d))
                        .ok_or_else(|| {
                            CliError::Usage(format!("{path}:{}: bad word {word:?}", i + 1))
                        })
                })
                .collect::<Result<_, _>>()?;
            let letter: Letter = letter.parse().map_err(|_| {
                CliError::Usage(format!("{path}:{}: bad letter {letter:?}", i + 1))
            })?;
            map.insert(word, letter);
        }
        return Ok(SpoilFunction::Table(map));
    }
    Err(CliError::Usage(format!(
        "unknown function {spec:?} (expected constant-<letter>, parity, or @<file>)"
    )))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => {
            if args.format == OutputFormat::Csv {
                return Err(CliError::Usage(
                    "analyze emits a structured report; use --format json \
                     (distances/sample/enumerate/bounds-curve emit csv)"
                        .into(),
                ));
            }
            let text = std::fs::read_to_string(&args.table)?;
            let options = args.build.options(args.rate_base, args.family.clone());
            let report = analyze(&text, &options)?;
            write_out(&args.output, &crate::report::report_json(&report))
        }
        Command::Distances(args) => {
            let text = std::fs::read_to_string(&args.table)?;
            let code = args.build.build(&text)?;
            let matrix = distance_matrix(&code)?;
            let content = match args.format {
                OutputFormat::Csv => matrix_csv(&matrix, args.relative),
                OutputFormat::Json => to_json(&crate::report::matrix_json(&matrix)),
            };
            write_out(&args.output, &content)
        }
        Command::Classify(args) => {
            let delta = parse_ratio(&args.delta)?;
            let alphabet = Alphabet::new(args.alphabet)?;
            let point = CodePoint::new(delta, args.rate, alphabet)?;
            let slack = match args.block_length {
                Some(n) if n > 0 => 1.0 / n as f64,
                Some(_) => {
                    return Err(CliError::Usage("--block-length must be positive".into()))
                }
                None => 0.0,
            };
            let result = classify(&point, slack)?;
            let json = ClassifyJson {
                schema_version: SCHEMA_VERSION,
                alphabet: args.alphabet,
                delta: delta.to_string(),
                delta_decimal: *delta.numer() as f64 / *delta.denom() as f64,
                rate: args.rate,
                singleton_slack: slack,
                verdict: match result.verdict {
                    paramcodes_core::bounds::Verdict::AboveAsymptotic => "above_asymptotic",
                    paramcodes_core::bounds::Verdict::BelowGv => "below_gv",
                    paramcodes_core::bounds::Verdict::Indeterminate => "indeterminate",
                }
                .into(),
                certificates: result
                    .certificates
                    .iter()
                    .map(|c| crate::report::CertificateJson {
                        bound: c.bound.name().to_owned(),
                        inequality: c.inequality.clone(),
                        margin: c.margin,
                        fired: c.fired,
                    })
                    .collect(),
                notes: result.notes,
            };
            if args.format == OutputFormat::Csv {
                return Err(CliError::Usage(
                    "classify emits a structured verdict; use --format json".into(),
                ));
            }
            write_out(&args.output, &to_json(&json))
        }
        Command::Spoil(args) => {
            let text = std::fs::read_to_string(&args.table)?;
            let code = args.build.build(&text)?;
            let alphabet = code.alphabet();
            let (result, report) = match args.op.as_str() {
                "extend" => {
                    let spec = args.function.as_deref().ok_or_else(|| {
                        CliError::Usage("extend needs --function".into())
                    })?;
                    let function = parse_function(spec, alphabet)?;
                    spoil_extend(&code, args.position, &function)?
                }
                "project" => spoil_project(&code, args.position)?,
                "restrict" => {
                    let letter = args.letter.ok_or_else(|| {
                        CliError::Usage("restrict needs --letter".into())
                    })?;
                    spoil_restrict(&code, letter, args.position)?
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown op {other:?} (expected extend, project, or restrict)"
                    )))
                }
            };
            if args.format == OutputFormat::Csv {
                return Err(CliError::Usage(
                    "spoil emits a structured report; use --format json".into(),
                ));
            }
            let json = spoil_json(&args, &result, &report);
            write_out(&args.output, &to_json(&json))
        }
        Command::Sample(args) => {
            let config = EnsembleConfig {
                alphabet: Alphabet::new(args.alphabet)?,
                block_length: args.block_length,
                word_count: args.word_count,
                trials: args.trials,
                seed: args.seed,
            };
            let samples = sample_srce(&config)?;
            let content = match args.format {
                OutputFormat::Json => to_json(&serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "alphabet": args.alphabet,
                    "block_length": args.block_length,
                    "word_count": args.word_count,
                    "trials": args.trials,
                    "seed": args.seed,
                    "samples": samples_json(&samples),
                })),
                OutputFormat::Csv => {
                    let cloud = cloud_from_samples(&samples).ok_or_else(|| {
                        CliError::Usage("no samples to aggregate".into())
                    })?;
                    cloud_csv(&cloud)
                }
            };
            write_out(&args.output, &content)
        }
        Command::Enumerate(args) => {
            let cloud = enumerate_codes(
                Alphabet::new(args.alphabet)?,
                args.block_length,
                args.word_count,
                args.cap,
            )?;
            let content = match args.format {
                OutputFormat::Json => to_json(&cloud_json(&cloud)),
                OutputFormat::Csv => cloud_csv(&cloud),
            };
            write_out(&args.output, &content)
        }
        Command::BoundsCurve(args) => {
            let curves = emit_bound_curves(Alphabet::new(args.alphabet)?, args.samples)?;
            let content = match args.format {
                OutputFormat::Csv => curves_csv(&curves),
                OutputFormat::Json => to_json(&serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "alphabet": args.alphabet,
                    "samples": curves.samples.iter().map(|s| serde_json::json!({
                        "delta": s.delta,
                        "gv": s.gv,
                        "hamming": s.hamming,
                        "singleton": s.singleton,
                        "plotkin_zero": s.plotkin_zero,
                    })).collect::<Vec<_>>(),
                })),
            };
            write_out(&args.output, &content)
        }
    }
}
