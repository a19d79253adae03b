//! X-ray words and their transforms.

use std::fmt;
use std::str::FromStr;

/// Which family of matrix lines was summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum XrayKind {
    Antidiagonal,
    Diagonal,
}

/// An X-ray of a permutation of order `n`: a word of `2n - 1` nonnegative
/// entries summing to `n`, with entry `k` bounded by the `min(k, 2n - k)`
/// cells available on that line.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Xray {
    word: Vec<u32>,
    kind: XrayKind,
}

/// Error constructing or parsing an X-ray word.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvalidXray {
    #[error("word length {0} is not of the form 2n - 1")]
    BadLength(usize),
    #[error("word sums to {sum}, expected the order {n}")]
    SumMismatch { sum: u64, n: usize },
    #[error("entry {value} at position {pos} exceeds the {cells} cells on that line")]
    EntryTooLarge { pos: usize, value: u32, cells: u32 },
    #[error("could not read '{0}' as an entry")]
    BadToken(String),
}

/// The word has an entry greater than one, so it has no binary numeral value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("x-ray word is not binary")]
pub struct NonBinaryXray;

impl Xray {
    /// Validates the three word invariants and wraps the word.
    pub fn new(word: Vec<u32>, kind: XrayKind) -> Result<Self, InvalidXray> {
        let len = word.len();
        if len.is_multiple_of(2) || len == 0 {
            return Err(InvalidXray::BadLength(len));
        }
        let n = len.div_ceil(2);
        let sum: u64 = word.iter().map(|&w| w as u64).sum();
        if sum != n as u64 {
            return Err(InvalidXray::SumMismatch { sum, n });
        }
        for (idx, &w) in word.iter().enumerate() {
            let k = idx + 1;
            let cells = k.min(2 * n - k) as u32;
            if w > cells {
                return Err(InvalidXray::EntryTooLarge {
                    pos: k,
                    value: w,
                    cells,
                });
            }
        }
        Ok(Xray { word, kind })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u32>, kind: XrayKind) -> Self {
        debug_assert!(Xray::new(word.clone(), kind).is_ok());
        Xray { word, kind }
    }

    /// Order `n` of the permutations this word could belong to.
    pub fn order(&self) -> usize {
        self.word.len().div_ceil(2)
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn kind(&self) -> XrayKind {
        self.kind
    }

    /// The mirror image of the word; the kind is preserved.
    pub fn reversed(&self) -> Xray {
        let mut word = self.word.clone();
        word.reverse();
        Xray {
            word,
            kind: self.kind,
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.word.iter().eq(self.word.iter().rev())
    }

    pub fn is_binary(&self) -> bool {
        self.word.iter().all(|&w| w <= 1)
    }

    /// The word read as a binary numeral, most significant entry first.
    pub fn decimal_expansion(&self) -> Result<u64, NonBinaryXray> {
        word_decimal_expansion(&self.word)
    }
}

/// Binary-numeral value of a raw word; total on any all-0/1 word, including
/// words that are not valid X-rays.
pub fn word_decimal_expansion(word: &[u32]) -> Result<u64, NonBinaryXray> {
    let mut value = 0u64;
    for &w in word {
        if w > 1 {
            return Err(NonBinaryXray);
        }
        value = (value << 1) | w as u64;
    }
    Ok(value)
}

/// Formats a raw word the way X-rays print: a digit string while every entry
/// fits in one digit, comma-separated otherwise.
pub fn format_word(word: &[u32]) -> String {
    if word.iter().all(|&w| w <= 9) {
        word.iter().map(|w| w.to_string()).collect()
    } else {
        word.iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses a word in either print form.
pub fn parse_word(s: &str) -> Result<Vec<u32>, InvalidXray> {
    let s = s.trim();
    if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| InvalidXray::BadToken(t.trim().to_string()))
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| InvalidXray::BadToken(c.to_string()))
            })
            .collect()
    }
}

impl fmt::Display for Xray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(&self.word))
    }
}

impl fmt::Debug for Xray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            XrayKind::Antidiagonal => "antidiagonal",
            XrayKind::Diagonal => "diagonal",
        };
        write!(f, "Xray({self}, {kind})")
    }
}

impl FromStr for Xray {
    type Err = InvalidXray;

    /// Parses an antidiagonal X-ray; use [`parse_word`] for raw words.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Xray::new(parse_word(s)?, XrayKind::Antidiagonal)
    }
}

impl serde::Serialize for Xray {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
