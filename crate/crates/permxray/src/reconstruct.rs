//! Reconstruction of permutations from a target X-ray word.
//!
//! Given a word `w`, decide whether some permutation has `x(p) = w`, count
//! them, or enumerate them. Rows are placed one at a time; a row consumes one
//! unit of budget on the antidiagonal it lands on. Decision for arbitrary
//! words is NP-complete, so the solver is exact backtracking with cheap exact
//! pruning rather than anything clever.

use rayon::prelude::*;

use crate::perm::Permutation;
use crate::{LimitExceeded, DEFAULT_LIMIT};

/// A target word to reconstruct from. Invalid shapes are representable; they
/// report as trivially infeasible rather than erroring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionInstance {
    word: Vec<u32>,
}

/// Why an instance cannot have a witness, where that is knowable without
/// search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infeasibility {
    /// Word length is not of the form `2n - 1`.
    BadLength,
    /// Entries do not sum to the order.
    BadSum,
    /// Some entry exceeds the number of cells on its line.
    EntryTooLarge,
}

impl ReconstructionInstance {
    pub fn new(word: Vec<u32>) -> Self {
        ReconstructionInstance { word }
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// The order implied by the word length, when the length is `2n - 1`.
    pub fn order(&self) -> Option<usize> {
        let len = self.word.len();
        (len % 2 == 1).then_some(len.div_ceil(2))
    }

    pub fn trivially_infeasible(&self) -> Option<Infeasibility> {
        let Some(n) = self.order() else {
            return Some(Infeasibility::BadLength);
        };
        let sum: u64 = self.word.iter().map(|&w| w as u64).sum();
        if sum != n as u64 {
            return Some(Infeasibility::BadSum);
        }
        for (idx, &w) in self.word.iter().enumerate() {
            let k = idx + 1;
            if w as usize > k.min(2 * n - k) {
                return Some(Infeasibility::EntryTooLarge);
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Decide,
    Count,
    Enumerate,
}

/// Knobs for [`solve_with`]. The pruning toggles exist so tests can show each
/// rule is sound (counts never change, only node statistics).
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Order ceiling for count/enumerate sweeps.
    pub limit: usize,
    /// Node ceiling for decide mode, which has no order limit.
    pub node_budget: u64,
    /// Fail a branch as soon as a line behind the current row still has
    /// budget left.
    pub prune_closed_lines: bool,
    /// Fail a branch when a line's remaining budget exceeds the number of
    /// future rows that can still reach it.
    pub prune_capacity: bool,
    /// Split the search by the first row's value across threads.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            limit: DEFAULT_LIMIT,
            node_budget: 100_000_000,
            prune_closed_lines: true,
            prune_capacity: true,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub mode: SolveMode,
    pub found: bool,
    pub count: u64,
    /// Enumerate mode only; lexicographic order.
    pub witnesses: Vec<Permutation>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    LimitExceeded(#[from] LimitExceeded),
    #[error("node budget exhausted after {nodes_explored} nodes without a decision")]
    NodeBudgetExhausted { nodes_explored: u64 },
}

struct Search<'a> {
    n: usize,
    budgets: Vec<u32>,
    cols_used: u32,
    current: Vec<u8>,
    nodes: u64,
    count: u64,
    witnesses: Vec<Permutation>,
    mode: SolveMode,
    opts: &'a SolveOptions,
    node_cap: Option<u64>,
    exhausted: bool,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(n: usize, target: &[u32], mode: SolveMode, opts: &'a SolveOptions) -> Self {
        Search {
            n,
            budgets: target.to_vec(),
            cols_used: 0,
            current: Vec::with_capacity(n),
            nodes: 0,
            count: 0,
            witnesses: Vec::new(),
            mode,
            opts,
            node_cap: (mode == SolveMode::Decide).then_some(opts.node_budget),
            exhausted: false,
            done: false,
        }
    }

    /// Remaining rows that can reach each still-open line must cover its
    /// remaining budget. Exact: row `i` (0-based) reaches line indices
    /// `i ..= i + n - 1`.
    fn capacity_ok(&self, row: usize) -> bool {
        for idx in row..2 * self.n - 1 {
            let budget = self.budgets[idx] as usize;
            if budget == 0 {
                continue;
            }
            let lo = row.max(idx.saturating_sub(self.n - 1));
            let hi = (self.n - 1).min(idx);
            let reach = hi + 1 - lo;
            if budget > reach {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, row: usize) {
        if self.done || self.exhausted {
            return;
        }
        self.nodes += 1;
        if let Some(cap) = self.node_cap {
            if self.nodes > cap {
                self.exhausted = true;
                return;
            }
        }
        if row == self.n {
            self.count += 1;
            match self.mode {
                SolveMode::Decide => self.done = true,
                SolveMode::Enumerate => self
                    .witnesses
                    .push(Permutation::new(self.current.clone()).unwrap()),
                SolveMode::Count => {}
            }
            return;
        }
        if self.opts.prune_closed_lines && row > 0 && self.budgets[row - 1] > 0 {
            return;
        }
        if self.opts.prune_capacity && !self.capacity_ok(row) {
            return;
        }
        for col in 0..self.n {
            if self.cols_used >> col & 1 == 1 {
                continue;
            }
            let line = row + col;
            if self.budgets[line] == 0 {
                continue;
            }
            self.cols_used |= 1 << col;
            self.budgets[line] -= 1;
            self.current.push(col as u8 + 1);
            self.dfs(row + 1);
            self.current.pop();
            self.budgets[line] += 1;
            self.cols_used &= !(1 << col);
            if self.done || self.exhausted {
                return;
            }
        }
    }

    /// Runs with the first row pinned to `col` (0-based); used by the
    /// parallel split.
    fn run_pinned(&mut self, col: usize) {
        let line = col;
        if self.budgets[line] == 0 {
            return;
        }
        if self.opts.prune_capacity && !self.capacity_ok(0) {
            return;
        }
        self.cols_used |= 1 << col;
        self.budgets[line] -= 1;
        self.current.push(col as u8 + 1);
        self.dfs(1);
    }
}

/// Solves with explicit options. See [`solve`] for the defaults.
pub fn solve_with(
    inst: &ReconstructionInstance,
    mode: SolveMode,
    opts: &SolveOptions,
) -> Result<SolveOutcome, SolveError> {
    if inst.trivially_infeasible().is_some() {
        return Ok(SolveOutcome {
            mode,
            found: false,
            count: 0,
            witnesses: Vec::new(),
            nodes_explored: 0,
        });
    }
    let n = inst.order().unwrap();
    if mode != SolveMode::Decide {
        crate::check_limit(n, opts.limit)?;
    }
    if n > 32 {
        // Column mask width; decide mode accepts any order below this.
        return Err(LimitExceeded { n, limit: 32 }.into());
    }

    let parallel = opts.parallel && mode != SolveMode::Decide && n >= 6;
    if parallel {
        let subs: Vec<Search> = (0..n)
            .into_par_iter()
            .map(|col| {
                let mut search = Search::new(n, inst.word(), mode, opts);
                search.run_pinned(col);
                search
            })
            .collect();
        let mut count = 0u64;
        let mut witnesses = Vec::new();
        let mut nodes = 1u64; // virtual root node
        for mut sub in subs {
            count += sub.count;
            witnesses.append(&mut sub.witnesses);
            nodes += sub.nodes;
        }
        Ok(SolveOutcome {
            mode,
            found: count > 0,
            count,
            witnesses,
            nodes_explored: nodes,
        })
    } else {
        let mut search = Search::new(n, inst.word(), mode, opts);
        search.dfs(0);
        if search.exhausted {
            return Err(SolveError::NodeBudgetExhausted {
                nodes_explored: search.nodes,
            });
        }
        Ok(SolveOutcome {
            mode,
            found: search.count > 0,
            count: search.count,
            witnesses: search.witnesses,
            nodes_explored: search.nodes,
        })
    }
}

/// Solves with default options: order limit 10 for count/enumerate, node
/// budget 10^8 for decide.
pub fn solve(inst: &ReconstructionInstance, mode: SolveMode) -> Result<SolveOutcome, SolveError> {
    solve_with(inst, mode, &SolveOptions::default())
}

/// Checks the solver against the exhaustive class map: every distinct word of
/// `S_n` must count exactly its class size. True iff all agree.
pub fn cross_validate(n: usize) -> Result<bool, LimitExceeded> {
    cross_validate_with_limit(n, 7)
}

pub fn cross_validate_with_limit(n: usize, limit: usize) -> Result<bool, LimitExceeded> {
    let report = crate::degeneracy::enumerate_classes_with_limit(n, limit)?;
    let opts = SolveOptions::default();
    for (word, members) in report.classes() {
        let inst = ReconstructionInstance::new(word.clone());
        let outcome = solve_with(&inst, SolveMode::Count, &opts).expect("within limit");
        if outcome.count != members.len() as u64 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xray::parse_word;

    fn inst(s: &str) -> ReconstructionInstance {
        ReconstructionInstance::new(parse_word(s).unwrap())
    }

    fn witnesses(s: &str) -> Vec<String> {
        solve(&inst(s), SolveMode::Enumerate)
            .unwrap()
            .witnesses
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn enumerates_the_reference_class() {
        assert_eq!(witnesses("01110"), ["231", "312"]);
        let outcome = solve(&inst("01110"), SolveMode::Count).unwrap();
        assert_eq!(outcome.count, 2);
    }

    #[test]
    fn eight_letter_example_has_the_stated_witnesses() {
        let found = witnesses("001101200002100");
        for expect in ["73142865", "72413865", "35248716", "42538716"] {
            assert!(found.contains(&expect.to_string()), "missing {expect}");
        }
        // As printed, the word sums to 7 and is infeasible for order 8.
        let misprint = solve(&inst("000110200002100"), SolveMode::Count).unwrap();
        assert_eq!((misprint.found, misprint.count), (false, 0));
    }

    #[test]
    fn alternating_word_is_realized_only_by_the_identity() {
        for n in 1..=8 {
            let word: Vec<u32> = (0..2 * n - 1).map(|i| (i % 2 == 0) as u32).collect();
            let outcome = solve(
                &ReconstructionInstance::new(word),
                SolveMode::Enumerate,
            )
            .unwrap();
            assert_eq!(outcome.count, 1, "n = {n}");
            assert_eq!(outcome.witnesses[0], Permutation::identity(n));
        }
    }

    #[test]
    fn trivially_infeasible_shapes_short_circuit() {
        assert_eq!(
            inst("11").trivially_infeasible(),
            Some(Infeasibility::BadLength)
        );
        assert_eq!(
            inst("10001").trivially_infeasible(),
            Some(Infeasibility::BadSum)
        );
        assert_eq!(
            inst("30000").trivially_infeasible(),
            Some(Infeasibility::EntryTooLarge)
        );
        for s in ["11", "10001", "30000"] {
            let outcome = solve(&inst(s), SolveMode::Decide).unwrap();
            assert!(!outcome.found);
            assert_eq!(outcome.nodes_explored, 0);
        }
    }

    #[test]
    fn decide_finds_witnesses_beyond_the_enumeration_limit() {
        // Alternating word at order 16: decide mode has no order limit.
        let word: Vec<u32> = (0..31).map(|i| (i % 2 == 0) as u32).collect();
        let inst = ReconstructionInstance::new(word);
        assert!(matches!(
            solve(&inst, SolveMode::Count),
            Err(SolveError::LimitExceeded(_))
        ));
        let outcome = solve(&inst, SolveMode::Decide).unwrap();
        assert!(outcome.found);
    }

    #[test]
    fn node_budget_exhaustion_reports_partial_statistics() {
        let word = crate::degeneracy::build_xmax(9).unwrap().word().to_vec();
        let opts = SolveOptions {
            node_budget: 10,
            ..SolveOptions::default()
        };
        match solve_with(
            &ReconstructionInstance::new(word),
            SolveMode::Decide,
            &opts,
        ) {
            Err(SolveError::NodeBudgetExhausted { nodes_explored }) => {
                assert_eq!(nodes_explored, 11)
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn witnesses_reverify_and_come_out_lexicographic() {
        let word = crate::degeneracy::build_xmax(6).unwrap().word().to_vec();
        let outcome = solve(&ReconstructionInstance::new(word.clone()), SolveMode::Enumerate)
            .unwrap();
        assert_eq!(outcome.count, 12);
        let mut prev: Option<&Permutation> = None;
        for w in &outcome.witnesses {
            assert_eq!(w.xray().word(), word.as_slice());
            if let Some(q) = prev {
                assert!(q < w);
            }
            prev = Some(w);
        }
    }

    #[test]
    fn pruning_rules_never_change_counts() {
        for n in 1..=6 {
            let report = crate::degeneracy::enumerate_classes(n).unwrap();
            for toggles in [(false, true), (true, false), (false, false)] {
                let opts = SolveOptions {
                    prune_closed_lines: toggles.0,
                    prune_capacity: toggles.1,
                    parallel: false,
                    ..SolveOptions::default()
                };
                for (word, members) in report.classes() {
                    let outcome = solve_with(
                        &ReconstructionInstance::new(word.clone()),
                        SolveMode::Count,
                        &opts,
                    )
                    .unwrap();
                    assert_eq!(outcome.count, members.len() as u64, "{toggles:?}");
                }
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree_on_counts_and_nodes() {
        let word = crate::degeneracy::build_xmax(7).unwrap().word().to_vec();
        let seq = solve_with(
            &ReconstructionInstance::new(word.clone()),
            SolveMode::Count,
            &SolveOptions {
                parallel: false,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        let par = solve_with(
            &ReconstructionInstance::new(word),
            SolveMode::Count,
            &SolveOptions::default(),
        )
        .unwrap();
        assert_eq!(seq.count, par.count);
        assert_eq!(seq.nodes_explored, par.nodes_explored);
    }

    #[test]
    fn cross_validates_against_the_class_map() {
        for n in [1, 5] {
            assert!(cross_validate(n).unwrap(), "n = {n}");
        }
    }
}
