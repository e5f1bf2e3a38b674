//! The three spoiling operations and their parameter laws.
//!
//! Spoiling turns a good code into a worse one in a controlled way. For a
//! code with parameters (n, k, d), positions counted from 1:
//!
//! * extend at i with f: every word (x_1..x_n) becomes
//!   (x_1..x_{i-1}, f(w), x_i..x_n). Always (n+1, k, d') with d' = d for a
//!   constant f and d' = d+1 when f separates every minimal pair.
//! * project at i: the letter at i is deleted. (n-1, k, d') with
//!   d' in {d-1, d}; words at distance 1 differing exactly at i merge, which
//!   is flagged rather than treated as an error.
//! * restrict to (a, i): keep the words with letter a at position i, block
//!   length unchanged. The level-set size m' obeys max_a m' >= m/q, and for
//!   a level set with m/q <= m' < m the dimension drops by at most one while
//!   the minimum distance cannot shrink.
//!
//! Every operation returns a [`SpoilReport`]; [`check_spoiling_law`]
//! re-derives the allowed parameter set from the report and flags anything
//! outside it, so the laws are checked on every call rather than assumed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::code::{Alphabet, Code, CodeError, Letter};
use crate::metrics::{code_parameters, CodeParameters, MetricsError, RateBase};

/// A total map from codewords to alphabet letters, used by extend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpoilFunction {
    Constant(Letter),
    /// Sum of the word's letters mod q.
    WordParity,
    /// Explicit word-to-letter table; must cover every word of the code.
    Table(BTreeMap<Vec<Letter>, Letter>),
}

impl SpoilFunction {
    fn evaluate(&self, word: &[Letter], alphabet: Alphabet) -> Result<Letter, SpoilError> {
        let letter = match self {
            SpoilFunction::Constant(letter) => *letter,
            SpoilFunction::WordParity => {
                word.iter().fold(0u64, |acc, &l| acc + l as u64) as Letter
                    % alphabet.size()
            }
            SpoilFunction::Table(map) => {
                *map.get(word).ok_or_else(|| SpoilError::PartialFunction {
                    word: word.to_vec(),
                })?
            }
        };
        if !alphabet.contains(letter) {
            return Err(SpoilError::LetterOutOfRange {
                letter,
                alphabet_size: alphabet.size(),
            });
        }
        Ok(letter)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpoilKind {
    Extend,
    Project,
    Restrict,
}

/// How the extend function acted on the code it was applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionTag {
    Constant(Letter),
    /// f(w) != f(w') for every pair at the minimum distance.
    SeparatesMinimalPairs,
    General,
}

/// What was done: operation kind, 1-based position, restriction letter and
/// the behaviour of the extend function, where applicable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpoilOp {
    pub kind: SpoilKind,
    pub position: usize,
    pub letter: Option<Letter>,
    pub function: Option<FunctionTag>,
    pub alphabet: Alphabet,
}

/// Before/after parameters of one spoiling step plus the law verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct SpoilReport {
    pub op: SpoilOp,
    pub before: CodeParameters,
    pub after: CodeParameters,
    /// Projection merged at least two words.
    pub word_collision: bool,
    pub law: LawVerdict,
}

/// Outcome of checking a report against the allowed parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawVerdict {
    ExtendConstant,
    ExtendSeparating,
    ExtendGeneral,
    ProjectDistanceDropped,
    ProjectDistanceKept,
    ProjectMerged,
    RestrictConstantColumn,
    RestrictMajority,
    RestrictMinority,
    Violation(String),
}

impl LawVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, LawVerdict::Violation(_))
    }
}

/// Inserts f(w) at position i (1 <= i <= n+1) in every word.
pub fn spoil_extend(
    code: &Code,
    position: usize,
    function: &SpoilFunction,
) -> Result<(Code, SpoilReport), SpoilError> {
    let n = code.block_length();
    if position == 0 || position > n + 1 {
        return Err(SpoilError::PositionOutOfRange {
            position,
            block_length: n,
        });
    }
    let before = code_parameters(code, RateBase::Alphabet)?;

    let mut entries = Vec::with_capacity(code.labels().len());
    for &(ref label, idx) in code.labels() {
        let word = &code.words()[idx].letters;
        let inserted = function.evaluate(word, code.alphabet())?;
        let mut letters = Vec::with_capacity(n + 1);
        letters.extend_from_slice(&word[..position - 1]);
        letters.push(inserted);
        letters.extend_from_slice(&word[position - 1..]);
        entries.push((label.clone(), letters));
    }

    let tag = tag_function(code, function, before.min_distance)?;
    let spoiled = Code::from_labeled_words(code.alphabet(), n + 1, entries)
        .map_err(SpoilError::Code)?;
    let after = code_parameters(&spoiled, RateBase::Alphabet)?;
    let mut report = SpoilReport {
        op: SpoilOp {
            kind: SpoilKind::Extend,
            position,
            letter: None,
            function: Some(tag),
            alphabet: code.alphabet(),
        },
        before,
        after,
        word_collision: false,
        law: LawVerdict::ExtendGeneral,
    };
    report.law = check_spoiling_law(&report);
    Ok((spoiled, report))
}

fn tag_function(
    code: &Code,
    function: &SpoilFunction,
    min_distance: usize,
) -> Result<FunctionTag, SpoilError> {
    let words = code.words();
    let outputs: Vec<Letter> = words
        .iter()
        .map(|w| function.evaluate(&w.letters, code.alphabet()))
        .collect::<Result<_, _>>()?;
    if outputs.iter().all(|&l| l == outputs[0]) {
        return Ok(FunctionTag::Constant(outputs[0]));
    }
    let separates_all = (0..words.len()).all(|i| {
        (i + 1..words.len()).all(|j| {
            let d = words[i]
                .letters
                .iter()
                .zip(&words[j].letters)
                .filter(|(x, y)| x != y)
                .count();
            d != min_distance || outputs[i] != outputs[j]
        })
    });
    if separates_all {
        Ok(FunctionTag::SeparatesMinimalPairs)
    } else {
        Ok(FunctionTag::General)
    }
}

/// Deletes the letter at position i (1 <= i <= n) from every word. Words
/// that merge are recorded in the report; the result must keep at least two
/// distinct words.
pub fn spoil_project(code: &Code, position: usize) -> Result<(Code, SpoilReport), SpoilError> {
    let n = code.block_length();
    if n < 2 {
        return Err(SpoilError::TooShort { block_length: n });
    }
    if position == 0 || position > n {
        return Err(SpoilError::PositionOutOfRange {
            position,
            block_length: n,
        });
    }
    let before = code_parameters(code, RateBase::Alphabet)?;

    let mut entries = Vec::with_capacity(code.labels().len());
    for &(ref label, idx) in code.labels() {
        let word = &code.words()[idx].letters;
        let mut letters = Vec::with_capacity(n - 1);
        letters.extend_from_slice(&word[..position - 1]);
        letters.extend_from_slice(&word[position..]);
        entries.push((label.clone(), letters));
    }
    let spoiled = Code::from_labeled_words(code.alphabet(), n - 1, entries)
        .map_err(SpoilError::Code)?;
    if spoiled.word_count() < 2 {
        return Err(SpoilError::DegenerateResult {
            words_left: spoiled.word_count(),
        });
    }

    let word_collision = spoiled.word_count() < code.word_count();
    let after = code_parameters(&spoiled, RateBase::Alphabet)?;
    let mut report = SpoilReport {
        op: SpoilOp {
            kind: SpoilKind::Project,
            position,
            letter: None,
            function: None,
            alphabet: code.alphabet(),
        },
        before,
        after,
        word_collision,
        law: LawVerdict::ProjectDistanceKept,
    };
    report.law = check_spoiling_law(&report);
    Ok((spoiled, report))
}

/// Keeps the words with letter a at position i; block length is unchanged.
/// The level set must contain at least two distinct words.
pub fn spoil_restrict(
    code: &Code,
    letter: Letter,
    position: usize,
) -> Result<(Code, SpoilReport), SpoilError> {
    let n = code.block_length();
    if position == 0 || position > n {
        return Err(SpoilError::PositionOutOfRange {
            position,
            block_length: n,
        });
    }
    if !code.alphabet().contains(letter) {
        return Err(SpoilError::LetterOutOfRange {
            letter,
            alphabet_size: code.alphabet().size(),
        });
    }
    let before = code_parameters(code, RateBase::Alphabet)?;

    let entries: Vec<(String, Vec<Letter>)> = code
        .labels()
        .iter()
        .filter(|&&(_, idx)| code.words()[idx].letters[position - 1] == letter)
        .map(|&(ref label, idx)| (label.clone(), code.words()[idx].letters.clone()))
        .collect();
    let distinct = {
        let mut seen: Vec<&[Letter]> = Vec::new();
        for (_, word) in &entries {
            if !seen.contains(&word.as_slice()) {
                seen.push(word);
            }
        }
        seen.len()
    };
    if distinct == 0 {
        return Err(SpoilError::EmptyLevelSet { letter, position });
    }
    if distinct == 1 {
        return Err(SpoilError::SingletonLevelSet { letter, position });
    }

    let spoiled =
        Code::from_labeled_words(code.alphabet(), n, entries).map_err(SpoilError::Code)?;
    let after = code_parameters(&spoiled, RateBase::Alphabet)?;
    let mut report = SpoilReport {
        op: SpoilOp {
            kind: SpoilKind::Restrict,
            position,
            letter: Some(letter),
            function: None,
            alphabet: code.alphabet(),
        },
        before,
        after,
        word_collision: false,
        law: LawVerdict::RestrictMajority,
    };
    report.law = check_spoiling_law(&report);
    Ok((spoiled, report))
}

/// Re-derives the allowed after-parameters for the report's operation and
/// says which case of the law applies, or returns a violation describing
/// what broke. Purely a function of the report.
pub fn check_spoiling_law(report: &SpoilReport) -> LawVerdict {
    let before = &report.before;
    let after = &report.after;
    let violation = |what: &str| {
        LawVerdict::Violation(format!(
            "{what}: ({}, {}, {}) -> ({}, {}, {})",
            before.block_length,
            before.word_count,
            before.min_distance,
            after.block_length,
            after.word_count,
            after.min_distance
        ))
    };

    match report.op.kind {
        SpoilKind::Extend => {
            if after.block_length != before.block_length + 1 {
                return violation("extend must lengthen the block by one");
            }
            if after.word_count != before.word_count {
                return violation("extend must preserve the word count");
            }
            let d = before.min_distance;
            match report.op.function {
                Some(FunctionTag::Constant(_)) => {
                    if after.min_distance != d {
                        return violation("constant extend must keep the distance");
                    }
                    LawVerdict::ExtendConstant
                }
                Some(FunctionTag::SeparatesMinimalPairs) => {
                    if after.min_distance != d + 1 {
                        return violation("separating extend must raise the distance by one");
                    }
                    LawVerdict::ExtendSeparating
                }
                Some(FunctionTag::General) => {
                    if after.min_distance != d && after.min_distance != d + 1 {
                        return violation("extend distance must stay or rise by one");
                    }
                    LawVerdict::ExtendGeneral
                }
                None => violation("extend report is missing its function tag"),
            }
        }
        SpoilKind::Project => {
            if after.block_length + 1 != before.block_length {
                return violation("project must shorten the block by one");
            }
            if report.word_collision {
                if before.min_distance != 1 {
                    return violation("projection can only merge words at distance one");
                }
                if after.word_count >= before.word_count {
                    return violation("a merging projection must lose words");
                }
                LawVerdict::ProjectMerged
            } else {
                if after.word_count != before.word_count {
                    return violation("word count changed without a collision flag");
                }
                match (before.min_distance, after.min_distance) {
                    (d, d2) if d2 == d => LawVerdict::ProjectDistanceKept,
                    (d, d2) if d2 + 1 == d => LawVerdict::ProjectDistanceDropped,
                    _ => violation("project distance must stay or drop by one"),
                }
            }
        }
        SpoilKind::Restrict => {
            if after.block_length != before.block_length {
                return violation("restrict must keep the block length");
            }
            if after.min_distance < before.min_distance {
                return violation("restrict cannot shrink the distance");
            }
            let m = before.word_count;
            let m_after = after.word_count;
            let q = report.op.alphabet.size() as usize;
            if m_after == m {
                // the level set was the whole code
                if after.min_distance != before.min_distance {
                    return violation("restricting to a constant column must change nothing");
                }
                LawVerdict::RestrictConstantColumn
            } else if m_after > m {
                violation("restrict cannot add words")
            } else if m <= q * m_after {
                // k - 1 <= k' < k, checked exactly: m <= q * m' and m' < m
                LawVerdict::RestrictMajority
            } else {
                // minority level set: only k' < k and d' >= d hold
                LawVerdict::RestrictMinority
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpoilError {
    PositionOutOfRange { position: usize, block_length: usize },
    LetterOutOfRange { letter: Letter, alphabet_size: u32 },
    PartialFunction { word: Vec<Letter> },
    TooShort { block_length: usize },
    DegenerateResult { words_left: usize },
    EmptyLevelSet { letter: Letter, position: usize },
    SingletonLevelSet { letter: Letter, position: usize },
    Parameters(MetricsError),
    Code(CodeError),
}

impl From<MetricsError> for SpoilError {
    fn from(e: MetricsError) -> SpoilError {
        SpoilError::Parameters(e)
    }
}

impl fmt::Display for SpoilError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpoilError::PositionOutOfRange {
                position,
                block_length,
            } => write!(
                f,
                "position {position} out of range for block length {block_length}"
            ),
            SpoilError::LetterOutOfRange {
                letter,
                alphabet_size,
            } => write!(f, "letter {letter} outside alphabet 0..{alphabet_size}"),
            SpoilError::PartialFunction { word } => {
                write!(f, "spoiling function undefined on word ")?;
                for letter in word {
                    write!(f, "{letter}")?;
                }
                Ok(())
            }
            SpoilError::TooShort { block_length } => write!(
                f,
                "cannot project a code of block length {block_length}"
            ),
            SpoilError::DegenerateResult { words_left } => write!(
                f,
                "projection leaves {words_left} distinct word(s), need at least 2"
            ),
            SpoilError::EmptyLevelSet { letter, position } => {
                write!(f, "no word has letter {letter} at position {position}")
            }
            SpoilError::SingletonLevelSet { letter, position } => write!(
                f,
                "only one distinct word has letter {letter} at position {position}"
            ),
            SpoilError::Parameters(e) => e.fmt(f),
            SpoilError::Code(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for SpoilError {}
