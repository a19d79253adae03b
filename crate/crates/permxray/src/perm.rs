//! Permutations of `[n] = {1, .., n}` in one-line notation.

use std::fmt;
use std::str::FromStr;

use crate::xray::{Xray, XrayKind};

/// A permutation of `[n]`, stored as its one-line word `p(1) p(2) .. p(n)`.
///
/// Values are 1-based throughout, matching the usual convention. The matrix
/// picture (cell `(i, p(i))` holds a one) is never materialized; the
/// antidiagonal through cell `(i, j)` has index `i + j - 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u8>,
}

/// Error parsing or constructing a permutation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePermutationError {
    #[error("empty permutation")]
    Empty,
    #[error("could not read '{0}' as a value")]
    BadToken(String),
    #[error("values do not form a bijection on 1..={0}")]
    NotABijection(usize),
    #[error("order {0} is too large (at most 255)")]
    TooLarge(usize),
}

impl Permutation {
    /// Builds a permutation from 1-based values, checking the bijection
    /// invariant.
    pub fn new(values: Vec<u8>) -> Result<Self, ParsePermutationError> {
        let n = values.len();
        if n == 0 {
            return Err(ParsePermutationError::Empty);
        }
        if n > u8::MAX as usize {
            return Err(ParsePermutationError::TooLarge(n));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(ParsePermutationError::NotABijection(n));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { values })
    }

    /// The identity permutation `1 2 .. n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        Permutation {
            values: (1..=n as u8).collect(),
        }
    }

    /// Order `n`.
    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// The one-line word as a slice of 1-based values.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// `p(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1] as usize
    }

    /// The inverse permutation `q` with `q(p(i)) = i`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation { values: inv }
    }

    /// The mirror image: the one-line word read right to left. Equivalently,
    /// the matrix rows written in reverse order.
    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// The matrix columns written in reverse order: `i -> n + 1 - p(i)`.
    pub fn complement(&self) -> Self {
        let n = self.values.len() as u8;
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// True iff `p` equals its own inverse.
    pub fn is_involution(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| self.values[v as usize - 1] as usize == i + 1)
    }

    /// The antidiagonal X-ray: entry `k` counts rows `i` with `i + p(i) = k + 1`.
    pub fn xray(&self) -> Xray {
        let n = self.order();
        let mut word = vec![0u32; 2 * n - 1];
        for (i, &v) in self.values.iter().enumerate() {
            word[i + v as usize - 1] += 1;
        }
        Xray::from_word_unchecked(word, XrayKind::Antidiagonal)
    }

    /// The diagonal X-ray: entry `k` counts rows `i` with `p(i) - i = k - n`,
    /// so the main diagonal sits at the central entry.
    pub fn diagonal_xray(&self) -> Xray {
        let n = self.order();
        let mut word = vec![0u32; 2 * n - 1];
        for (i, &v) in self.values.iter().enumerate() {
            word[v as usize - 1 + n - 1 - i] += 1;
        }
        Xray::from_word_unchecked(word, XrayKind::Diagonal)
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9` (e.g. `73142865`), comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order() <= 9 {
            for &v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = ParsePermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParsePermutationError::Empty);
        }
        let values: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| ParsePermutationError::BadToken(t.trim().to_string()))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| ParsePermutationError::BadToken(c.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Advances `v` to the lexicographically next arrangement; false once
/// exhausted.
pub(crate) fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Visits every permutation of `[n]` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[u8])) {
    let mut v: Vec<u8> = (1..=n as u8).collect();
    loop {
        f(&v);
        if !next_permutation(&mut v) {
            break;
        }
    }
}

/// Visits, in lexicographic order, every permutation of `[n]` whose first
/// value is `first`. Together with ascending `first` this reproduces the full
/// lexicographic sweep, which is how parallel sweeps split their work.
pub fn for_each_permutation_with_first(n: usize, first: u8, mut f: impl FnMut(&[u8])) {
    debug_assert!((1..=n as u8).contains(&first));
    let mut v: Vec<u8> = Vec::with_capacity(n);
    v.push(first);
    v.extend((1..=n as u8).filter(|&x| x != first));
    loop {
        f(&v);
        if !next_permutation(&mut v[1..]) {
            break;
        }
    }
}

/// Iterator form of the lexicographic sweep, for callers that want one.
pub struct Permutations {
    next: Option<Vec<u8>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        Permutations {
            next: Some((1..=n as u8).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { values: current })
    }
}

/// Seeded random permutation for test inputs; Fisher-Yates over a splitmix
/// stream.
#[cfg(test)]
pub(crate) fn random_perm(n: usize, seed: u64) -> Permutation {
    let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let mut v: Vec<u8> = (1..=n as u8).collect();
    for i in (1..n).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        v.swap(i, j);
    }
    Permutation::new(v).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(p("73142865").to_string(), "73142865");
        assert_eq!(p("1,2,3").to_string(), "123");
        let long = Permutation::identity(11);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
    }

    #[test]
    fn parse_rejects_non_bijections() {
        assert!("41351".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("120".parse::<Permutation>().is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("2413").inverse(), p("3142"));
        // 73142865 and 72413865 are not mutual inverses.
        assert_ne!(p("73142865").inverse(), p("72413865"));
        // 1267534 is an involution.
        assert_eq!(p("1267534").inverse(), p("1267534"));
        assert!(p("1267534").is_involution());
        assert!(!p("2413").is_involution());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p("25143").reverse(), p("34152"));
        assert_eq!(Permutation::identity(5).reverse(), p("54321"));
    }

    #[test]
    fn complement_is_column_reversal() {
        assert_eq!(p("3124").complement(), p("2431"));
        assert_eq!(p("3124").complement().complement(), p("3124"));
    }

    #[test]
    fn lexicographic_sweep_visits_n_factorial() {
        let mut count = 0u64;
        let mut prev: Option<Vec<u8>> = None;
        for_each_permutation(5, |v| {
            if let Some(ref q) = prev {
                assert!(q.as_slice() < v);
            }
            prev = Some(v.to_vec());
            count += 1;
        });
        assert_eq!(count, 120);
    }

    #[test]
    fn prefix_sweep_partitions_sn() {
        let mut count = 0u64;
        for first in 1..=4u8 {
            for_each_permutation_with_first(4, first, |v| {
                assert_eq!(v[0], first);
                count += 1;
            });
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn iterator_matches_the_visitor() {
        let from_iterator: Vec<Permutation> = Permutations::new(4).collect();
        let mut from_visitor = Vec::new();
        for_each_permutation(4, |v| {
            from_visitor.push(Permutation::new(v.to_vec()).unwrap())
        });
        assert_eq!(from_iterator, from_visitor);
    }

    proptest! {
        #[test]
        fn reverse_is_an_involution(n in 1usize..10, seed in any::<u64>()) {
            let q = random_perm(n, seed);
            prop_assert_eq!(q.reverse().reverse(), q);
        }

        #[test]
        fn inverse_is_an_involution(n in 1usize..10, seed in any::<u64>()) {
            let q = random_perm(n, seed);
            prop_assert_eq!(q.inverse().inverse(), q);
        }

        #[test]
        fn display_parse_round_trip(n in 1usize..14, seed in any::<u64>()) {
            let q = random_perm(n, seed);
            prop_assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
        }
    }
}
