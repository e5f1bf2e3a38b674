//! Alphabets, codewords and codes.
//!
//! A [`Code`] is a set of distinct words of equal length over a q-ary
//! alphabet, together with a label map recording which language produced
//! which word. Two languages with identical rows end up sharing a single
//! word; the label map keeps both names so the collision stays visible.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A single symbol of a codeword. Valid letters lie in `0..q`.
pub type Letter = u32;

/// A q-ary alphabet with letters `0..q`, q >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    size: u32,
}

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet { size: 2 };
    pub const TERNARY: Alphabet = Alphabet { size: 3 };

    pub fn new(size: u32) -> Result<Alphabet, CodeError> {
        if size < 2 {
            return Err(CodeError::AlphabetTooSmall { size });
        }
        Ok(Alphabet { size })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter < self.size
    }
}

/// One word of a code plus the label of the first language that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub letters: Vec<Letter>,
    pub label: String,
}

/// A block code: distinct equal-length words over a fixed alphabet.
///
/// Words are stored sorted lexicographically so that two codes with the same
/// word set compare equal regardless of construction order. `labels` keeps
/// every input language in its original order, pointing at the word it maps
/// to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    alphabet: Alphabet,
    block_length: usize,
    words: Vec<Codeword>,
    labels: Vec<(String, usize)>,
}

impl Code {
    /// Builds a code from `(label, word)` pairs.
    ///
    /// Every word must have exactly `block_length` letters drawn from
    /// `alphabet`. Labels must be distinct; words need not be, duplicates
    /// collapse onto one codeword and are reported by [`Code::collisions`].
    pub fn from_labeled_words(
        alphabet: Alphabet,
        block_length: usize,
        entries: Vec<(String, Vec<Letter>)>,
    ) -> Result<Code, CodeError> {
        if block_length == 0 {
            return Err(CodeError::ZeroBlockLength);
        }
        if entries.is_empty() {
            return Err(CodeError::NoWords);
        }
        for (label, word) in &entries {
            if word.len() != block_length {
                return Err(CodeError::WordLengthMismatch {
                    label: label.clone(),
                    expected: block_length,
                    found: word.len(),
                });
            }
            for (pos, &letter) in word.iter().enumerate() {
                if !alphabet.contains(letter) {
                    return Err(CodeError::LetterOutOfRange {
                        label: label.clone(),
                        position: pos + 1,
                        letter,
                        alphabet_size: alphabet.size(),
                    });
                }
            }
        }
        for (i, (label, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(other, _)| other == label) {
                return Err(CodeError::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }

        // Collect distinct words in first-occurrence order, then sort; the
        // label map is rebuilt against the sorted positions.
        let mut words: Vec<Codeword> = Vec::new();
        for (label, letters) in &entries {
            if !words.iter().any(|w| &w.letters == letters) {
                words.push(Codeword {
                    letters: letters.clone(),
                    label: label.clone(),
                });
            }
        }
        words.sort_by(|a, b| a.letters.cmp(&b.letters));
        let labels = entries
            .into_iter()
            .map(|(label, letters)| {
                let idx = words
                    .iter()
                    .position(|w| w.letters == letters)
                    .expect("every entry was copied into the word list");
                (label, idx)
            })
            .collect();

        Ok(Code {
            alphabet,
            block_length,
            words,
            labels,
        })
    }

    /// Builds a code from bare words, labeling them `w1`, `w2`, ... in input
    /// order.
    pub fn from_words(
        alphabet: Alphabet,
        block_length: usize,
        words: Vec<Vec<Letter>>,
    ) -> Result<Code, CodeError> {
        let entries = words
            .into_iter()
            .enumerate()
            .map(|(i, w)| (alloc::format!("w{}", i + 1), w))
            .collect();
        Code::from_labeled_words(alphabet, block_length, entries)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn block_length(&self) -> usize {
        self.block_length
    }

    /// Number of distinct words (the m in an (n, m, d) code).
    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Distinct words, sorted lexicographically.
    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    /// Every input language in original order with the index of its word.
    pub fn labels(&self) -> &[(String, usize)] {
        &self.labels
    }

    pub fn word_for(&self, label: &str) -> Option<&Codeword> {
        self.labels
            .iter()
            .find(|(name, _)| name == label)
            .map(|&(_, idx)| &self.words[idx])
    }

    /// Groups of labels that collapsed onto a shared word. Only groups with
    /// at least two labels are returned, ordered by word.
    pub fn collisions(&self) -> Vec<Vec<String>> {
        let mut groups: Vec<Vec<String>> = Vec::new();
        for idx in 0..self.words.len() {
            let group: Vec<String> = self
                .labels
                .iter()
                .filter(|&&(_, w)| w == idx)
                .map(|(name, _)| name.clone())
                .collect();
            if group.len() >= 2 {
                groups.push(group);
            }
        }
        groups
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeError {
    AlphabetTooSmall {
        size: u32,
    },
    ZeroBlockLength,
    NoWords,
    WordLengthMismatch {
        label: String,
        expected: usize,
        found: usize,
    },
    LetterOutOfRange {
        label: String,
        position: usize,
        letter: Letter,
        alphabet_size: u32,
    },
    DuplicateLabel {
        label: String,
    },
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::AlphabetTooSmall { size } => {
                write!(f, "alphabet must have at least 2 letters, got {size}")
            }
            CodeError::ZeroBlockLength => write!(f, "block length must be at least 1"),
            CodeError::NoWords => write!(f, "a code needs at least one word"),
            CodeError::WordLengthMismatch {
                label,
                expected,
                found,
            } => write!(
                f,
                "word for {label:?} has {found} letters, expected {expected}"
            ),
            CodeError::LetterOutOfRange {
                label,
                position,
                letter,
                alphabet_size,
            } => write!(
                f,
                "word for {label:?} has letter {letter} at position {position}, \
                 alphabet has letters 0..{alphabet_size}"
            ),
            CodeError::DuplicateLabel { label } => {
                write!(f, "label {label:?} appears more than once")
            }
        }
    }
}

impl core::error::Error for CodeError {}
