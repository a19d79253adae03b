//! Block structure, inflations, zero-sum arrays, and symmetric X-rays.
//!
//! A block is a segment of positions whose values form a range; a permutation
//! is simple when its only blocks are the singletons and the whole word.
//! Inflating a skeleton by parts substitutes each part's matrix into the
//! skeleton's matrix, and transposing parts in place never changes the X-ray.
//! That freedom produces witnesses that a word fails to pin its permutation
//! down, and block-diagonal constructions produce the palindromic-X-ray
//! witnesses at the end of the module.

use rayon::prelude::*;

use crate::perm::{for_each_permutation_with_first, Permutation};
use crate::xray::format_word;
use crate::{check_limit, LimitExceeded, DEFAULT_LIMIT};

/// All nontrivial blocks of `p`, as 1-based `(start, length)` pairs with
/// `1 < length < n`, in scan order. Direct quadratic scan with a running
/// min/max; the orders here never justify the linear-time algorithm.
pub fn find_blocks(p: &Permutation) -> Vec<(usize, usize)> {
    let n = p.order();
    let v = p.values();
    let mut blocks = Vec::new();
    for start in 0..n {
        let (mut lo, mut hi) = (v[start], v[start]);
        for (end, &value) in v.iter().enumerate().skip(start + 1) {
            lo = lo.min(value);
            hi = hi.max(value);
            let len = end - start + 1;
            if len == n {
                continue;
            }
            if (hi - lo) as usize == end - start {
                blocks.push((start + 1, len));
            }
        }
    }
    blocks
}

/// True iff the only blocks of `p` are the singletons and the whole word.
pub fn is_simple(p: &Permutation) -> bool {
    let n = p.order();
    let v = p.values();
    for start in 0..n {
        let (mut lo, mut hi) = (v[start], v[start]);
        for (end, &value) in v.iter().enumerate().skip(start + 1) {
            lo = lo.min(value);
            hi = hi.max(value);
            if end - start + 1 < n && (hi - lo) as usize == end - start {
                return false;
            }
        }
    }
    true
}

/// A skeleton of order `k` together with `k` parts to substitute into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inflation {
    skeleton: Permutation,
    parts: Vec<Permutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("skeleton of order {skeleton} needs exactly that many parts, got {parts}")]
pub struct ArityMismatch {
    pub skeleton: usize,
    pub parts: usize,
}

impl Inflation {
    pub fn new(skeleton: Permutation, parts: Vec<Permutation>) -> Result<Self, ArityMismatch> {
        if skeleton.order() != parts.len() {
            return Err(ArityMismatch {
                skeleton: skeleton.order(),
                parts: parts.len(),
            });
        }
        Ok(Inflation { skeleton, parts })
    }

    pub fn skeleton(&self) -> &Permutation {
        &self.skeleton
    }

    pub fn parts(&self) -> &[Permutation] {
        &self.parts
    }

    /// Total order of the inflated permutation.
    pub fn order(&self) -> usize {
        self.parts.iter().map(|p| p.order()).sum()
    }

    /// The permutation whose matrix has part `i` as the block in block-row
    /// `i`, block-column `skeleton(i)`. Block `i` occupies a run of
    /// positions, and its values form the range ranked by `skeleton(i)`.
    pub fn inflate(&self) -> Permutation {
        let k = self.skeleton.order();
        let mut value_offset = vec![0u8; k];
        for (i, offset) in value_offset.iter_mut().enumerate() {
            let rank = self.skeleton.at(i + 1);
            *offset = (0..k)
                .filter(|&j| self.skeleton.at(j + 1) < rank)
                .map(|j| self.parts[j].order() as u8)
                .sum();
        }
        let mut values = Vec::with_capacity(self.order());
        for (i, part) in self.parts.iter().enumerate() {
            values.extend(part.values().iter().map(|&v| v + value_offset[i]));
        }
        Permutation::new(values).unwrap()
    }

    /// Same skeleton with the parts at `indices` (0-based) inverted.
    /// Transposing a part swaps cells within an aligned square block, so the
    /// antidiagonal X-ray is unchanged.
    fn with_parts_inverted(&self, indices: &[usize]) -> Inflation {
        let mut parts = self.parts.clone();
        for &i in indices {
            parts[i] = parts[i].inverse();
        }
        Inflation {
            skeleton: self.skeleton.clone(),
            parts,
        }
    }
}

/// Searches for a permutation with the same X-ray as `infl`'s inflation that
/// is neither it nor its inverse, by inverting parts in place.
///
/// Candidates are the nonempty subsets of non-involution parts, smallest
/// subsets first; each is re-verified before being returned. `None` means no
/// part-inversion witness exists, which happens when the conditions fail
/// (identity skeleton with fewer than two non-involution parts) and in rare
/// degenerate layouts where every candidate collapses onto the inverse.
pub fn inflation_witness(infl: &Inflation) -> Option<Permutation> {
    let sigma = infl.inflate();
    let sigma_inv = sigma.inverse();
    let word = sigma.xray();
    let movable: Vec<usize> = (0..infl.parts.len())
        .filter(|&i| !infl.parts[i].is_involution())
        .collect();
    if movable.is_empty() {
        return None;
    }
    // Subsets in (size, lexicographic) order.
    let m = movable.len();
    let mut masks: Vec<u32> = (1..1u32 << m).collect();
    masks.sort_by_key(|&mask| (mask.count_ones(), mask));
    for mask in masks {
        let indices: Vec<usize> = (0..m)
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| movable[b])
            .collect();
        let candidate = infl.with_parts_inverted(&indices).inflate();
        debug_assert_eq!(candidate.xray(), word);
        if candidate.xray() == word && candidate != sigma && candidate != sigma_inv {
            return Some(candidate);
        }
    }
    None
}

/// Evidence about the adjacency structure of nonzero entries: words that pin
/// their permutation down (class size 1) are expected to carry at most two
/// adjacent nonzero entries, while the converse fails from order 8 on.
#[derive(Debug, Clone)]
pub struct AdjacencyReport {
    pub n: usize,
    /// Class-size-1 words with three or more adjacent nonzero entries;
    /// expected empty.
    pub singleton_wide_words: Vec<String>,
    /// Words with at most two adjacent nonzero entries but class size > 1.
    pub narrow_degenerate_words: Vec<String>,
}

fn max_nonzero_run(word: &[u32]) -> usize {
    let mut best = 0;
    let mut run = 0;
    for &w in word {
        if w > 0 {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

pub fn adjacent_nonzero_report_with_limit(
    n: usize,
    limit: usize,
) -> Result<AdjacencyReport, LimitExceeded> {
    let report = crate::degeneracy::enumerate_classes_with_limit(n, limit)?;
    let mut singleton_wide_words = Vec::new();
    let mut narrow_degenerate_words = Vec::new();
    for (word, members) in report.classes() {
        let wide = max_nonzero_run(word) >= 3;
        if members.len() == 1 && wide {
            singleton_wide_words.push(format_word(word));
        }
        if members.len() > 1 && !wide {
            narrow_degenerate_words.push(format_word(word));
        }
    }
    Ok(AdjacencyReport {
        n,
        singleton_wide_words,
        narrow_degenerate_words,
    })
}

pub fn adjacent_nonzero_report(n: usize) -> Result<AdjacencyReport, LimitExceeded> {
    adjacent_nonzero_report_with_limit(n, DEFAULT_LIMIT)
}

/// Ceiling for zero-sum-array widths; the search is over `m!` second rows.
pub const DEFAULT_ZERO_SUM_LIMIT: usize = 9;

/// A 3-row array whose rows permute `-(m-1)/2 ..= (m-1)/2` with every column
/// summing to zero. The first row is kept in ascending order, which is the
/// canonical form the degeneracy correspondence counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZeroSumArray {
    rows: [Vec<i32>; 3],
}

impl ZeroSumArray {
    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i32>; 3] {
        &self.rows
    }
}

impl std::fmt::Display for ZeroSumArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ZeroSumError {
    #[error("width must be odd, got {0}")]
    EvenWidth(usize),
    #[error(transparent)]
    LimitExceeded(#[from] LimitExceeded),
}

/// Every 3-row zero-sum array of odd width `m`, first row ascending, in
/// lexicographic order of the second row. No symmetry quotient is applied.
pub fn enumerate_zero_sum_arrays_with_limit(
    m: usize,
    limit: usize,
) -> Result<Vec<ZeroSumArray>, ZeroSumError> {
    if m.is_multiple_of(2) {
        return Err(ZeroSumError::EvenWidth(m));
    }
    check_limit(m, limit).map_err(ZeroSumError::LimitExceeded)?;
    let half = (m as i32 - 1) / 2;
    let top: Vec<i32> = (-half..=half).collect();
    let mut arrays = Vec::new();
    let mut index = (1..=m as u8).collect::<Vec<u8>>();
    loop {
        let middle: Vec<i32> = index.iter().map(|&i| i as i32 - 1 - half).collect();
        let mut seen = vec![false; m];
        let mut ok = true;
        let mut bottom = Vec::with_capacity(m);
        for (j, &mid) in middle.iter().enumerate() {
            let need = -(top[j] + mid);
            if need < -half || need > half || seen[(need + half) as usize] {
                ok = false;
                break;
            }
            seen[(need + half) as usize] = true;
            bottom.push(need);
        }
        if ok {
            arrays.push(ZeroSumArray {
                rows: [top.clone(), middle, bottom],
            });
        }
        if !crate::perm::next_permutation(&mut index) {
            break;
        }
    }
    Ok(arrays)
}

pub fn enumerate_zero_sum_arrays(m: usize) -> Result<Vec<ZeroSumArray>, ZeroSumError> {
    enumerate_zero_sum_arrays_with_limit(m, DEFAULT_ZERO_SUM_LIMIT)
}

fn count_over_sn(
    n: usize,
    limit: usize,
    pred: impl Fn(&[u8]) -> bool + Sync,
) -> Result<u64, LimitExceeded> {
    check_limit(n, limit)?;
    Ok((1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            for_each_permutation_with_first(n, first, |v| {
                if pred(v) {
                    count += 1;
                }
            });
            count
        })
        .sum())
}

fn word_is_palindrome(v: &[u8], diagonal: bool) -> bool {
    let n = v.len();
    let mut word = vec![0u32; 2 * n - 1];
    for (i, &value) in v.iter().enumerate() {
        let idx = if diagonal {
            value as usize - 1 + n - 1 - i
        } else {
            i + value as usize - 1
        };
        word[idx] += 1;
    }
    word.iter().eq(word.iter().rev())
}

/// `l_n`: how many permutations of order `n` have a palindromic X-ray.
pub fn count_palindromic_with_limit(n: usize, limit: usize) -> Result<u64, LimitExceeded> {
    count_over_sn(n, limit, |v| word_is_palindrome(v, false))
}

pub fn count_palindromic(n: usize) -> Result<u64, LimitExceeded> {
    count_palindromic_with_limit(n, DEFAULT_LIMIT)
}

/// True iff the diagonal and antidiagonal X-rays agree entrywise and are
/// palindromic.
pub fn has_equal_palindromic_xrays(p: &Permutation) -> bool {
    let anti = p.xray();
    anti.is_palindrome() && anti.word() == p.diagonal_xray().word()
}

/// `l_{n,A=D}`: permutations whose diagonal and antidiagonal X-rays agree and
/// are palindromic.
pub fn count_diag_eq_antidiag_palindromic_with_limit(
    n: usize,
    limit: usize,
) -> Result<u64, LimitExceeded> {
    count_over_sn(n, limit, |v| {
        let n = v.len();
        let mut anti = vec![0u32; 2 * n - 1];
        let mut diag = vec![0u32; 2 * n - 1];
        for (i, &value) in v.iter().enumerate() {
            anti[i + value as usize - 1] += 1;
            diag[value as usize - 1 + n - 1 - i] += 1;
        }
        anti == diag && anti.iter().eq(anti.iter().rev())
    })
}

pub fn count_diag_eq_antidiag_palindromic(n: usize) -> Result<u64, LimitExceeded> {
    count_diag_eq_antidiag_palindromic_with_limit(n, DEFAULT_LIMIT)
}

/// True iff reversing `p` and then inverting gives back `p`, i.e.
/// `p(p(n + 1 - i)) = i` for all `i`.
pub fn is_reverse_inverse_invariant(p: &Permutation) -> bool {
    let v = p.values();
    let n = v.len();
    (0..n).all(|i| v[v[n - 1 - i] as usize - 1] as usize == i + 1)
}

/// `r_n`: fixed points of reverse-then-invert. Nonzero only when
/// `n mod 4` is 0 or 1.
pub fn count_reverse_inverse_invariant_with_limit(
    n: usize,
    limit: usize,
) -> Result<u64, LimitExceeded> {
    count_over_sn(n, limit, |v| {
        (0..v.len()).all(|i| v[v[v.len() - 1 - i] as usize - 1] as usize == i + 1)
    })
}

pub fn count_reverse_inverse_invariant(n: usize) -> Result<u64, LimitExceeded> {
    count_reverse_inverse_invariant_with_limit(n, DEFAULT_LIMIT)
}

/// Number of involutions in `S_n`, by the usual recurrence.
pub fn involution_count(n: usize) -> u64 {
    let mut prev = 1u64; // i_0
    let mut cur = 1u64; // i_1
    if n == 0 {
        return 1;
    }
    for k in 2..=n as u64 {
        let next = cur + (k - 1) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The witness seed must move something, or every construction here is fixed
/// by transposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("seed permutation is an involution")]
pub struct IsInvolution;

/// Builds, from a non-involution `rho` of order `m`, a permutation of order
/// `2m` that has a palindromic X-ray without being an involution: a witness
/// that palindromic X-rays outnumber involutions.
///
/// The primary layout places `rho` and its transpose on the diagonal and
/// reverses the columns. For the rare seeds commuting with the order-reversal
/// (e.g. 2413) that image is itself an involution, and the fallback pairs
/// `rho` with its half-turn rotation instead, which provably never collapses.
pub fn palindromic_witness(rho: &Permutation) -> Result<Permutation, IsInvolution> {
    if rho.is_involution() {
        return Err(IsInvolution);
    }
    let m = rho.order();
    let stack = |bottom: &Permutation| -> Permutation {
        let mut values: Vec<u8> = rho.values().to_vec();
        values.extend(bottom.values().iter().map(|&v| v + m as u8));
        Permutation::new(values).unwrap().complement()
    };
    let primary = stack(&rho.inverse());
    let witness = if primary.is_involution() {
        stack(&rho.reverse().complement())
    } else {
        primary
    };
    debug_assert!(witness.xray().is_palindrome());
    debug_assert!(!witness.is_involution());
    Ok(witness)
}
