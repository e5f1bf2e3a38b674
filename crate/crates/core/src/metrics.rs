//! Distances and code parameters.
//!
//! For a code C of m distinct words of length n over a q-letter alphabet:
//!
//! * d  = minimum Hamming distance over all unordered word pairs
//! * k  = log_base(m), base q by default, base 2 on request
//! * R  = k / n
//! * delta = d / n, kept as an exact rational
//!
//! `logua_distance` is the table-level alternative: disagreements divided by
//! the number of positions where both records carry a definite (+/-) value.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::code::{Code, Codeword};
use crate::table::{LanguageRecord, ParamValue};
use crate::Rational;

/// Base used for the dimension k = log(m) and hence the rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateBase {
    /// log base q: the full space F_q^n has rate exactly 1.
    Alphabet,
    /// log base 2: bits, comparable across alphabets.
    Two,
}

/// The classical parameters of a block code.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeParameters {
    pub block_length: usize,
    pub word_count: usize,
    pub min_distance: usize,
    /// k = log(m) in the chosen base. Real-valued: codes here are plain sets.
    pub dimension: f64,
    pub rate: f64,
    pub relative_distance: Rational,
    pub rate_base: RateBase,
    /// All m(m-1)/2 pairwise distances, ascending.
    pub distance_multiset: Vec<usize>,
}

/// Hamming distance between two codewords of equal length.
pub fn hamming_distance(a: &Codeword, b: &Codeword) -> Result<usize, MetricsError> {
    hamming_distance_letters(&a.letters, &b.letters)
}

/// Hamming distance between two equal-length letter slices.
pub fn hamming_distance_letters(a: &[u32], b: &[u32]) -> Result<usize, MetricsError> {
    if a.len() != b.len() {
        return Err(MetricsError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Hamming distance divided by block length, as an exact rational.
pub fn relative_hamming(a: &Codeword, b: &Codeword) -> Result<Rational, MetricsError> {
    let d = hamming_distance(a, b)?;
    if a.letters.is_empty() {
        return Err(MetricsError::LengthMismatch { left: 0, right: 0 });
    }
    Ok(Rational::new(d as u64, a.letters.len() as u64))
}

/// Computes (n, m, k, d, R, delta) for a code with at least two words.
pub fn code_parameters(code: &Code, rate_base: RateBase) -> Result<CodeParameters, MetricsError> {
    let words = code.words();
    let m = words.len();
    if m < 2 {
        return Err(MetricsError::TooFewWords { found: m });
    }
    let n = code.block_length();

    let mut distances = Vec::with_capacity(m * (m - 1) / 2);
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            let d = a
                .letters
                .iter()
                .zip(&b.letters)
                .filter(|(x, y)| x != y)
                .count();
            distances.push(d);
        }
    }
    distances.sort_unstable();
    let min_distance = distances[0];

    let dimension = log_in_base(m as f64, rate_base, code.alphabet().size());
    let rate = dimension / n as f64;
    Ok(CodeParameters {
        block_length: n,
        word_count: m,
        min_distance,
        dimension,
        rate,
        relative_distance: Rational::new(min_distance as u64, n as u64),
        rate_base,
        distance_multiset: distances,
    })
}

fn log_in_base(x: f64, rate_base: RateBase, q: u32) -> f64 {
    match rate_base {
        RateBase::Alphabet => libm::log2(x) / libm::log2(q as f64),
        RateBase::Two => libm::log2(x),
    }
}

/// Pairwise distances between the labeled languages of a code.
///
/// Rows and columns follow the language order of the code's label map, so
/// two languages that share a word produce an off-diagonal zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub absolute: Vec<Vec<usize>>,
    pub relative: Vec<Vec<Rational>>,
}

pub fn distance_matrix(code: &Code) -> Result<DistanceMatrix, MetricsError> {
    let labels: Vec<&str> = code.labels().iter().map(|(name, _)| name.as_str()).collect();
    if labels.is_empty() {
        return Err(MetricsError::TooFewWords { found: 0 });
    }
    let n = code.block_length() as u64;
    let rows: Vec<&[u32]> = code
        .labels()
        .iter()
        .map(|&(_, idx)| code.words()[idx].letters.as_slice())
        .collect();

    let mut absolute = Vec::with_capacity(rows.len());
    let mut relative = Vec::with_capacity(rows.len());
    for a in &rows {
        let mut abs_row = Vec::with_capacity(rows.len());
        let mut rel_row = Vec::with_capacity(rows.len());
        for b in &rows {
            let d = hamming_distance_letters(a, b)?;
            abs_row.push(d);
            rel_row.push(Rational::new(d as u64, n));
        }
        absolute.push(abs_row);
        relative.push(rel_row);
    }
    Ok(DistanceMatrix {
        labels: labels.into_iter().map(String::from).collect(),
        absolute,
        relative,
    })
}

/// Normalized disagreement between two table rows, counting only positions
/// where both carry a definite +/- value.
pub fn logua_distance(
    a: &LanguageRecord,
    b: &LanguageRecord,
) -> Result<Rational, MetricsError> {
    if a.values.len() != b.values.len() {
        return Err(MetricsError::LengthMismatch {
            left: a.values.len(),
            right: b.values.len(),
        });
    }
    let definite =
        |v: ParamValue| v == ParamValue::Plus || v == ParamValue::Minus;
    let mut shared = 0u64;
    let mut differing = 0u64;
    for (&x, &y) in a.values.iter().zip(&b.values) {
        if definite(x) && definite(y) {
            shared += 1;
            if x != y {
                differing += 1;
            }
        }
    }
    if shared == 0 {
        return Err(MetricsError::NoSharedParameters);
    }
    Ok(Rational::new(differing, shared))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricsError {
    LengthMismatch { left: usize, right: usize },
    TooFewWords { found: usize },
    NoSharedParameters,
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            MetricsError::TooFewWords { found } => write!(
                f,
                "need at least 2 distinct words for code parameters, got {found}"
            ),
            MetricsError::NoSharedParameters => {
                write!(f, "no position carries a definite value in both records")
            }
        }
    }
}

impl core::error::Error for MetricsError {}
