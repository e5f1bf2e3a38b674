//! Random and exhaustive code ensembles, plus an independent parameter
//! oracle for cross-checking the metrics module.
//!
//! Sampling follows the Shannon random-code ensemble: every letter of every
//! word is an independent uniform draw from the alphabet. The generator is
//! ChaCha8 seeded via `seed_from_u64`, letters are drawn word by word, left
//! to right, through rejection sampling on the top 32-bit range (the largest
//! multiple of q below 2^32 is accepted). A draw that repeats an existing
//! word is discarded and counted, so a sample always contains exactly the
//! requested number of distinct words. This mapping from seed to words is
//! part of the interface and must not change.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use crate::code::{Alphabet, Code, CodeError, Letter};
use crate::metrics::{CodeParameters, RateBase};
use crate::Rational;

/// What to sample: m distinct words of length n over the given alphabet,
/// `trials` times, deterministically from `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleConfig {
    pub alphabet: Alphabet,
    pub block_length: usize,
    pub word_count: usize,
    pub trials: usize,
    pub seed: u64,
}

/// One sampled code with its parameters (rate base q) and the number of
/// duplicate draws that were rejected while collecting it.
#[derive(Clone, Debug, PartialEq)]
pub struct SrceSample {
    pub code: Code,
    pub parameters: CodeParameters,
    pub redraws: u64,
}

/// Where the points of a [`PointCloud`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Enumerated,
    Sampled,
}

/// A (delta, R) point observed with some multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct CloudPoint {
    pub relative_distance: Rational,
    pub rate: f64,
    pub multiplicity: u64,
    pub provenance: Provenance,
}

/// Aggregated (delta, R) points of an ensemble, sorted by delta.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub alphabet: Alphabet,
    pub block_length: usize,
    pub word_count: usize,
    pub points: Vec<CloudPoint>,
}

/// Draws `trials` random codes. See the module docs for the exact
/// seed-to-words mapping.
pub fn sample_srce(config: &EnsembleConfig) -> Result<Vec<SrceSample>, EnsembleError> {
    validate_shape(config.alphabet, config.block_length, config.word_count)?;
    if config.trials == 0 {
        return Err(EnsembleError::InfeasibleConfig {
            reason: String::from("trials must be at least 1"),
        });
    }

    let q = config.alphabet.size();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut samples = Vec::with_capacity(config.trials);
    for _ in 0..config.trials {
        let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
        let mut words: Vec<Vec<Letter>> = Vec::with_capacity(config.word_count);
        let mut redraws = 0u64;
        while words.len() < config.word_count {
            let word: Vec<Letter> = (0..config.block_length)
                .map(|_| uniform_letter(&mut rng, q))
                .collect();
            if seen.insert(word.clone()) {
                words.push(word);
            } else {
                redraws += 1;
            }
        }
        let code = Code::from_words(config.alphabet, config.block_length, words)
            .map_err(EnsembleError::Code)?;
        let parameters = oracle_code_parameters(&code, RateBase::Alphabet)?;
        samples.push(SrceSample {
            code,
            parameters,
            redraws,
        });
    }
    Ok(samples)
}

fn uniform_letter(rng: &mut ChaCha8Rng, q: u32) -> Letter {
    // accept only below the largest multiple of q, then reduce: exact
    // uniformity, no modulo bias
    let zone = (1u64 << 32) / q as u64 * q as u64;
    loop {
        let v = rng.next_u32();
        if (v as u64) < zone {
            return v % q;
        }
    }
}

/// Visits every code with exactly m distinct words of length n, in
/// lexicographic order of the word-index sets. Refuses to start if the
/// total count exceeds `cap`; the error carries the exact count so the
/// caller can decide what to do about it.
pub fn enumerate_codes_visit(
    alphabet: Alphabet,
    block_length: usize,
    word_count: usize,
    cap: u64,
    mut visit: impl FnMut(&Code) -> Result<(), EnsembleError>,
) -> Result<u64, EnsembleError> {
    validate_shape(alphabet, block_length, word_count)?;
    let space = space_size(alphabet.size(), block_length);
    let count = binomial(space, word_count).ok_or(EnsembleError::CountOverflow)?;
    if count > cap as u128 {
        return Err(EnsembleError::CapExceeded {
            required: count,
            cap,
        });
    }

    let m = word_count;
    let q = alphabet.size();
    let mut indices: Vec<u128> = (0..m as u128).collect();
    loop {
        let words = indices
            .iter()
            .map(|&i| word_from_index(i, q, block_length))
            .collect();
        let code =
            Code::from_words(alphabet, block_length, words).map_err(EnsembleError::Code)?;
        visit(&code)?;

        // odometer step over m-subsets of 0..space
        let mut at = m;
        loop {
            if at == 0 {
                return Ok(count as u64);
            }
            at -= 1;
            if indices[at] < space - (m - at) as u128 {
                indices[at] += 1;
                for j in at + 1..m {
                    indices[j] = indices[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Enumerates every m-word code and aggregates the (delta, R) points.
pub fn enumerate_codes(
    alphabet: Alphabet,
    block_length: usize,
    word_count: usize,
    cap: u64,
) -> Result<PointCloud, EnsembleError> {
    let mut histogram: BTreeMap<Rational, u64> = BTreeMap::new();
    let mut rate = 0.0;
    enumerate_codes_visit(alphabet, block_length, word_count, cap, |code| {
        let params = oracle_code_parameters(code, RateBase::Alphabet)?;
        rate = params.rate;
        *histogram.entry(params.relative_distance).or_insert(0) += 1;
        Ok(())
    })?;
    Ok(PointCloud {
        alphabet,
        block_length,
        word_count,
        points: histogram
            .into_iter()
            .map(|(relative_distance, multiplicity)| CloudPoint {
                relative_distance,
                rate,
                multiplicity,
                provenance: Provenance::Enumerated,
            })
            .collect(),
    })
}

/// Aggregates sampled codes into a point cloud.
pub fn cloud_from_samples(samples: &[SrceSample]) -> Option<PointCloud> {
    let first = samples.first()?;
    let mut histogram: BTreeMap<Rational, u64> = BTreeMap::new();
    for sample in samples {
        *histogram
            .entry(sample.parameters.relative_distance)
            .or_insert(0) += 1;
    }
    Some(PointCloud {
        alphabet: first.code.alphabet(),
        block_length: first.code.block_length(),
        word_count: first.code.word_count(),
        points: histogram
            .into_iter()
            .map(|(relative_distance, multiplicity)| CloudPoint {
                relative_distance,
                rate: first.parameters.rate,
                multiplicity,
                provenance: Provenance::Sampled,
            })
            .collect(),
    })
}

/// Independent reimplementation of the parameter computation, kept as plain
/// index loops on purpose: this is the oracle the metrics module is checked
/// against, so it must not share code with it.
pub fn oracle_code_parameters(
    code: &Code,
    rate_base: RateBase,
) -> Result<CodeParameters, EnsembleError> {
    let words = code.words();
    let m = words.len();
    if m < 2 {
        return Err(EnsembleError::TooFewWords { found: m });
    }
    let n = code.block_length();

    let mut multiset = Vec::with_capacity(m * (m - 1) / 2);
    let mut min_distance = usize::MAX;
    for a in 0..m {
        for b in a + 1..m {
            let mut d = 0usize;
            for i in 0..n {
                if words[a].letters[i] != words[b].letters[i] {
                    d += 1;
                }
            }
            if d < min_distance {
                min_distance = d;
            }
            multiset.push(d);
        }
    }
    multiset.sort_unstable();

    // natural logarithms here; the metrics module uses log2
    let dimension = match rate_base {
        RateBase::Alphabet => {
            libm::log(m as f64) / libm::log(code.alphabet().size() as f64)
        }
        RateBase::Two => libm::log(m as f64) / libm::log(2.0),
    };
    Ok(CodeParameters {
        block_length: n,
        word_count: m,
        min_distance,
        dimension,
        rate: dimension / n as f64,
        relative_distance: Rational::new(min_distance as u64, n as u64),
        rate_base,
        distance_multiset: multiset,
    })
}

fn validate_shape(
    alphabet: Alphabet,
    block_length: usize,
    word_count: usize,
) -> Result<(), EnsembleError> {
    if block_length == 0 {
        return Err(EnsembleError::InfeasibleConfig {
            reason: String::from("block length must be at least 1"),
        });
    }
    if word_count < 2 {
        return Err(EnsembleError::InfeasibleConfig {
            reason: String::from("need at least 2 words"),
        });
    }
    let space = space_size(alphabet.size(), block_length);
    if word_count as u128 > space {
        return Err(EnsembleError::InfeasibleConfig {
            reason: format!(
                "{word_count} distinct words cannot fit in a space of {space}"
            ),
        });
    }
    Ok(())
}

/// q^n, saturating; the saturation point is far beyond any enumerable space.
fn space_size(q: u32, n: usize) -> u128 {
    let mut size: u128 = 1;
    for _ in 0..n {
        size = size.saturating_mul(q as u128);
    }
    size
}

fn binomial(n: u128, k: usize) -> Option<u128> {
    let k = k as u128;
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        // exact at every step: the running product is always a binomial
        result = result.checked_mul(n - i)? / (i + 1);
    }
    Some(result)
}

fn word_from_index(index: u128, q: u32, n: usize) -> Vec<Letter> {
    let mut letters = Vec::with_capacity(n);
    let mut rest = index;
    for _ in 0..n {
        letters.push((rest % q as u128) as Letter);
        rest /= q as u128;
    }
    letters.reverse();
    letters
}

#[derive(Clone, Debug, PartialEq)]
pub enum EnsembleError {
    InfeasibleConfig { reason: String },
    CapExceeded { required: u128, cap: u64 },
    CountOverflow,
    TooFewWords { found: usize },
    Code(CodeError),
}

impl fmt::Display for EnsembleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleError::InfeasibleConfig { reason } => {
                write!(f, "infeasible ensemble config: {reason}")
            }
            EnsembleError::CapExceeded { required, cap } => write!(
                f,
                "enumeration needs {required} codes, cap is {cap}"
            ),
            EnsembleError::CountOverflow => {
                write!(f, "code count does not fit in 128 bits")
            }
            EnsembleError::TooFewWords { found } => write!(
                f,
                "need at least 2 distinct words for code parameters, got {found}"
            ),
            EnsembleError::Code(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for EnsembleError {}
