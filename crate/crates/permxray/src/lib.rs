//! X-rays of permutations.
//!
//! The X-ray of a permutation is the sequence of antidiagonal sums of its
//! permutation matrix: entry `k` (1-based, `k = 1..2n-1`) counts the rows `i`
//! with `i + p(i) = k + 1`. This crate computes X-rays and their elementary
//! transforms, enumerates the degeneracy classes of `S_n` under equal X-ray,
//! reconstructs permutations from a target word by backtracking, enumerates
//! binary X-rays and the lattice polytope they inject into, and cross-checks
//! every count against bundled OEIS b-files.
//!
//! All computations are exact integer arithmetic on desk-scale orders
//! (exhaustive sweeps up to `n = 10` by default).

pub mod binary;
pub mod degeneracy;
pub mod oeis;
pub mod perm;
pub mod reconstruct;
pub mod structures;
pub mod xray;

pub use perm::{ParsePermutationError, Permutation};
pub use xray::{Xray, XrayKind};

/// Ceiling on exhaustive `S_n` sweeps unless a caller raises it explicitly.
pub const DEFAULT_LIMIT: usize = 10;

/// An order was requested above the configured exhaustive-sweep ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("order {n} exceeds the configured limit {limit}")]
pub struct LimitExceeded {
    pub n: usize,
    pub limit: usize,
}

pub(crate) fn check_limit(n: usize, limit: usize) -> Result<(), LimitExceeded> {
    if n == 0 || n > limit {
        return Err(LimitExceeded { n, limit });
    }
    Ok(())
}
