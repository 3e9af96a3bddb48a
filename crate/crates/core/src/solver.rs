//! Exact search for Sumplete solutions.
//!
//! The search fixes one row at a time, top to bottom. For each row it walks
//! the subsets of cells whose kept values add up to the row hint
//! ([`RowCandidates`]), in lexicographic order of their keep flags (first
//! cell most significant, crossed before kept). Every row constraint is thus
//! satisfied by construction and the columns are what prunes the tree: after
//! a row is placed, each column's kept-so-far total must stay within
//! `[C(j) - remaining, C(j)]`, where `remaining` is the sum of that column's
//! cells in the rows still to be placed.
//!
//! Because rows and candidates are both visited in canonical order, the first
//! solution found is the lexicographically smallest keep vector in
//! row-major order. [`count_solutions`] walks the same tree without stopping.
//!
//! By default each column is additionally checked for *reachability*: the
//! amount it still needs must be a subset sum of its remaining cells (capped
//! tables, see [`SolverConfig::column_reachability`]). This only removes
//! branches with no solution, so it never changes which solutions are found
//! or their order.

use std::num::NonZeroU64;
use std::time::{Duration, Instant};

use crate::instance::{Mask, SumpleteInstance};

/// Columns whose hint is above this bound are not given a reachability table.
const REACHABILITY_MAX_HINT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Give up after this many search nodes.
    pub node_limit: Option<NonZeroU64>,
    /// Stop counting once this many solutions were seen.
    pub solution_cap: Option<NonZeroU64>,
    /// Kept for interface compatibility; the search has no random choices,
    /// so it is deterministic either way.
    pub deterministic: bool,
    /// Also prune a column when the sum it still needs cannot be formed by
    /// any subset of its remaining cells. On by default: interval bounds
    /// alone cannot see that, e.g., a column of 1s and 3s needing 2 more
    /// with a single 1 and a 3 left is dead.
    pub column_reachability: bool,
    /// Column pruning on or off. Turning it off only changes the statistics;
    /// it exists so tests can check that pruning never loses a solution.
    pub prune: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_limit: None,
            solution_cap: NonZeroU64::new(1_000_000),
            deterministic: true,
            column_reachability: true,
            prune: true,
        }
    }
}

impl SolverConfig {
    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = NonZeroU64::new(limit);
        self
    }

    pub fn with_solution_cap(mut self, cap: u64) -> Self {
        self.solution_cap = NonZeroU64::new(cap);
        self
    }

    pub fn with_column_reachability(mut self, on: bool) -> Self {
        self.column_reachability = on;
        self
    }

    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Solved,
    Unsolvable,
    ResourceLimit,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveStats {
    /// Partial assignments (row prefixes) that survived column pruning.
    pub nodes_expanded: u64,
    /// Row candidates produced by the per-row enumeration.
    pub row_subsets_enumerated: u64,
    pub elapsed: Duration,
}

impl SolveStats {
    /// The counters, without the wall-clock time.
    pub fn counters(&self) -> (u64, u64) {
        (self.nodes_expanded, self.row_subsets_enumerated)
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Present iff `status` is `Solved`.
    pub witness: Option<Mask>,
    pub stats: SolveStats,
}

#[derive(Debug, Clone)]
pub struct CountOutcome {
    pub count: u64,
    /// True iff the whole search space was explored.
    pub exhausted: bool,
    pub stats: SolveStats,
}

/// Subsets of a row whose kept values sum to `target`, in canonical order.
///
/// Each item is a keep vector. Items come in lexicographic order with the
/// first cell most significant and crossed (`false`) before kept (`true`).
/// Branches that cannot reach `target` are cut, so the work is proportional
/// to the output plus the dead ends of the subset-sum tree.
#[derive(Debug, Clone)]
pub struct RowCandidates<'a> {
    values: &'a [u64],
    allowed: Vec<bool>,
    // suffix[d] = total of the allowed cells d..
    suffix: Vec<u64>,
    target: u64,
    path: Vec<bool>,
    sum: u64,
    state: IterState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl<'a> RowCandidates<'a> {
    pub fn new(values: &'a [u64], target: u64) -> Self {
        Self::build(values, target, vec![true; values.len()])
    }

    /// Like [`RowCandidates::new`], but cell `j` may only be kept when
    /// `values[j] <= caps[j]`.
    pub fn with_caps(values: &'a [u64], target: u64, caps: &[u64]) -> Self {
        let allowed = values.iter().zip(caps).map(|(v, c)| v <= c).collect();
        Self::build(values, target, allowed)
    }

    fn build(values: &'a [u64], target: u64, allowed: Vec<bool>) -> Self {
        let mut suffix = vec![0u64; values.len() + 1];
        for d in (0..values.len()).rev() {
            suffix[d] = suffix[d + 1] + if allowed[d] { values[d] } else { 0 };
        }
        RowCandidates {
            values,
            allowed,
            suffix,
            target,
            path: Vec::with_capacity(values.len()),
            sum: 0,
            state: IterState::Fresh,
        }
    }

    /// Moves to the next candidate. Returns false once the enumeration is over.
    pub fn advance(&mut self) -> bool {
        match self.state {
            IterState::Done => return false,
            IterState::Fresh => {
                self.state = IterState::Running;
                if self.suffix[0] < self.target {
                    self.state = IterState::Done;
                    return false;
                }
            }
            IterState::Running => {
                if !self.backtrack() {
                    self.state = IterState::Done;
                    return false;
                }
            }
        }
        // Invariant: sum <= target <= sum + suffix[path.len()].
        loop {
            if self.path.len() == self.values.len() {
                return true;
            }
            if !self.extend() && !self.backtrack() {
                self.state = IterState::Done;
                return false;
            }
        }
    }

    /// The candidate found by the last successful [`advance`](Self::advance).
    pub fn current(&self) -> &[bool] {
        &self.path
    }

    fn can_keep(&self, d: usize) -> bool {
        self.allowed[d] && self.sum + self.values[d] <= self.target
    }

    fn extend(&mut self) -> bool {
        let d = self.path.len();
        if self.sum + self.suffix[d + 1] >= self.target {
            self.path.push(false);
            true
        } else if self.can_keep(d) {
            self.path.push(true);
            self.sum += self.values[d];
            true
        } else {
            false
        }
    }

    fn backtrack(&mut self) -> bool {
        while let Some(kept) = self.path.pop() {
            let d = self.path.len();
            if kept {
                self.sum -= self.values[d];
            } else if self.can_keep(d) {
                self.path.push(true);
                self.sum += self.values[d];
                return true;
            }
        }
        false
    }
}

impl Iterator for RowCandidates<'_> {
    type Item = Vec<bool>;

    fn next(&mut self) -> Option<Vec<bool>> {
        self.advance().then(|| self.path.clone())
    }
}

/// All keep vectors of `values` summing to `target`, in canonical order.
pub fn row_candidates(values: &[u64], target: u64) -> Vec<Vec<bool>> {
    RowCandidates::new(values, target).collect()
}

/// Finds a solution, or proves there is none.
///
/// The witness, if any, is the first solution in canonical order.
pub fn solve(inst: &SumpleteInstance, cfg: &SolverConfig) -> SolveOutcome {
    let start = Instant::now();
    let mut search = Search::new(inst, cfg);
    let mut witness = None;
    let end = search.run(|mask| {
        witness = Some(mask.to_vec());
        false
    });
    let mut stats = search.stats;
    stats.elapsed = start.elapsed();

    let status = match end {
        End::Stopped => SolveStatus::Solved,
        End::Exhausted => SolveStatus::Unsolvable,
        End::NodeLimit => SolveStatus::ResourceLimit,
    };
    let witness = witness.map(|keep| {
        Mask::from_flat(inst.rows(), inst.cols(), keep).expect("witness has the instance's shape")
    });
    SolveOutcome {
        status,
        witness,
        stats,
    }
}

/// Counts solutions, stopping at `cfg.solution_cap` or `cfg.node_limit`.
pub fn count_solutions(inst: &SumpleteInstance, cfg: &SolverConfig) -> CountOutcome {
    let (count, exhausted, stats) = enumerate_solutions(inst, cfg, |_| {});
    CountOutcome {
        count,
        exhausted,
        stats,
    }
}

/// Calls `visit` on every solution in canonical order, up to the configured
/// cap. Returns the number visited and whether the search was exhaustive.
pub fn for_each_solution(
    inst: &SumpleteInstance,
    cfg: &SolverConfig,
    mut visit: impl FnMut(&Mask),
) -> (u64, bool) {
    let (count, exhausted, _) = enumerate_solutions(inst, cfg, |keep| {
        let mask = Mask::from_flat(inst.rows(), inst.cols(), keep.to_vec())
            .expect("solution has the instance's shape");
        visit(&mask);
    });
    (count, exhausted)
}

fn enumerate_solutions(
    inst: &SumpleteInstance,
    cfg: &SolverConfig,
    mut visit: impl FnMut(&[bool]),
) -> (u64, bool, SolveStats) {
    let start = Instant::now();
    let cap = cfg.solution_cap.map_or(u64::MAX, NonZeroU64::get);
    let mut count = 0u64;
    let mut search = Search::new(inst, cfg);
    let end = search.run(|mask| {
        visit(mask);
        count += 1;
        count < cap
    });
    let mut stats = search.stats;
    stats.elapsed = start.elapsed();
    (count, end == End::Exhausted, stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Exhausted,
    Stopped,
    NodeLimit,
}

struct Search<'a> {
    inst: &'a SumpleteInstance,
    prune: bool,
    node_limit: u64,
    // remaining[i * cols + j]: sum of column j over rows i.. (rows + 1 rows).
    remaining: Vec<u64>,
    reach: Option<Reachability>,
    col_kept: Vec<u64>,
    keep: Vec<bool>,
    stats: SolveStats,
}

impl<'a> Search<'a> {
    fn new(inst: &'a SumpleteInstance, cfg: &SolverConfig) -> Self {
        let (rows, cols) = (inst.rows(), inst.cols());
        let mut remaining = vec![0u64; (rows + 1) * cols];
        for i in (0..rows).rev() {
            for j in 0..cols {
                remaining[i * cols + j] = remaining[(i + 1) * cols + j] + inst.value(i, j);
            }
        }
        let reach = (cfg.prune && cfg.column_reachability).then(|| Reachability::new(inst));
        Search {
            inst,
            prune: cfg.prune,
            node_limit: cfg.node_limit.map_or(u64::MAX, NonZeroU64::get),
            remaining,
            reach,
            col_kept: vec![0; cols],
            keep: vec![false; rows * cols],
            stats: SolveStats::default(),
        }
    }

    fn candidates(&self, i: usize) -> RowCandidates<'a> {
        let values = self.inst.row(i);
        let target = self.inst.row_hints()[i];
        if self.prune {
            let caps: Vec<u64> = self
                .inst
                .col_hints()
                .iter()
                .zip(&self.col_kept)
                .map(|(h, k)| h - k)
                .collect();
            RowCandidates::with_caps(values, target, &caps)
        } else {
            RowCandidates::new(values, target)
        }
    }

    fn apply(&mut self, i: usize, keep: &[bool], add: bool) {
        let row = self.inst.row(i);
        for (j, (&v, &k)) in row.iter().zip(keep).enumerate() {
            if k {
                if add {
                    self.col_kept[j] += v;
                } else {
                    self.col_kept[j] -= v;
                }
            }
        }
    }

    /// Column test after rows `..=i` are placed.
    fn columns_feasible(&self, i: usize) -> bool {
        let cols = self.inst.cols();
        let below = &self.remaining[(i + 1) * cols..(i + 2) * cols];
        self.inst
            .col_hints()
            .iter()
            .zip(&self.col_kept)
            .zip(below)
            .enumerate()
            .all(|(j, ((&hint, &kept), &rest))| {
                kept <= hint
                    && kept + rest >= hint
                    && self
                        .reach
                        .as_ref()
                        .is_none_or(|r| r.reachable(i + 1, j, hint - kept))
            })
    }

    fn columns_exact(&self) -> bool {
        self.col_kept == self.inst.col_hints()
    }

    /// Depth-first walk. `on_solution` returns whether to keep going.
    fn run(&mut self, mut on_solution: impl FnMut(&[bool]) -> bool) -> End {
        let (rows, cols) = (self.inst.rows(), self.inst.cols());
        let mut stack = vec![self.candidates(0)];
        // Whether row i's current candidate is counted in col_kept.
        let mut applied = vec![false; rows];

        while !stack.is_empty() {
            let i = stack.len() - 1;
            if !stack[i].advance() {
                stack.pop();
                if applied[i] {
                    let prev = self.keep[i * cols..(i + 1) * cols].to_vec();
                    self.apply(i, &prev, false);
                    applied[i] = false;
                }
                continue;
            }
            let cand = stack[i].current().to_vec();
            if applied[i] {
                let prev = self.keep[i * cols..(i + 1) * cols].to_vec();
                self.apply(i, &prev, false);
            }
            self.stats.row_subsets_enumerated += 1;
            self.keep[i * cols..(i + 1) * cols].copy_from_slice(&cand);
            self.apply(i, &cand, true);
            applied[i] = true;

            if self.prune && !self.columns_feasible(i) {
                continue;
            }
            if self.stats.nodes_expanded >= self.node_limit {
                return End::NodeLimit;
            }
            self.stats.nodes_expanded += 1;

            if i + 1 == rows {
                if self.columns_exact() && !on_solution(&self.keep) {
                    return End::Stopped;
                }
            } else {
                let next = self.candidates(i + 1);
                stack.push(next);
            }
        }
        End::Exhausted
    }
}

/// For each row index and column, the set of sums reachable by keeping some
/// of that column's cells from that row down, truncated at the column hint.
struct Reachability {
    cols: usize,
    words: Vec<usize>,
    offsets: Vec<usize>,
    bits: Vec<u64>,
}

impl Reachability {
    fn new(inst: &SumpleteInstance) -> Self {
        let (rows, cols) = (inst.rows(), inst.cols());
        let words: Vec<usize> = inst
            .col_hints()
            .iter()
            .map(|&h| {
                if h <= REACHABILITY_MAX_HINT {
                    (h as usize) / 64 + 1
                } else {
                    0
                }
            })
            .collect();
        let mut offsets = Vec::with_capacity((rows + 1) * cols);
        let mut total = 0;
        for _ in 0..=rows {
            for &w in &words {
                offsets.push(total);
                total += w;
            }
        }
        let mut bits = vec![0u64; total];
        for j in 0..cols {
            let w = words[j];
            if w == 0 {
                continue;
            }
            let hint = inst.col_hints()[j] as usize;
            bits[offsets[rows * cols + j]] = 1;
            for i in (0..rows).rev() {
                let (src, dst) = (offsets[(i + 1) * cols + j], offsets[i * cols + j]);
                let below = bits[src..src + w].to_vec();
                let here = &mut bits[dst..dst + w];
                here.copy_from_slice(&below);
                shl_or(here, &below, inst.value(i, j) as usize);
                // Drop sums above the hint.
                let last = hint % 64;
                if last < 63 {
                    here[w - 1] &= (1u64 << (last + 1)) - 1;
                }
            }
        }
        Reachability {
            cols,
            words,
            offsets,
            bits,
        }
    }

    fn reachable(&self, row: usize, col: usize, need: u64) -> bool {
        let w = self.words[col];
        if w == 0 {
            return true;
        }
        let off = self.offsets[row * self.cols + col];
        bit(&self.bits[off..off + w], need as usize)
    }
}

/// `dst |= src << shift`, over little-endian bit vectors of equal length.
fn shl_or(dst: &mut [u64], src: &[u64], shift: usize) {
    let (whole, part) = (shift / 64, shift % 64);
    for k in (whole..dst.len()).rev() {
        let mut v = src[k - whole] << part;
        if part > 0 && k > whole {
            v |= src[k - whole - 1] >> (64 - part);
        }
        dst[k] |= v;
    }
}

fn bit(words: &[u64], s: usize) -> bool {
    words.get(s / 64).is_some_and(|w| w >> (s % 64) & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::verify;

    fn inst(grid: Vec<Vec<u64>>, r: Vec<u64>, c: Vec<u64>) -> SumpleteInstance {
        SumpleteInstance::new(grid, r, c).unwrap()
    }

    /// All 2^c keep vectors in canonical order, filtered by sum.
    fn subsets_by_enumeration(values: &[u64], target: u64) -> Vec<Vec<bool>> {
        let c = values.len();
        (0u32..1 << c)
            .map(|b| (0..c).map(|d| b >> (c - 1 - d) & 1 == 1).collect::<Vec<_>>())
            .filter(|keep| {
                values.iter().zip(keep).filter(|(_, &k)| k).map(|(&v, _)| v).sum::<u64>() == target
            })
            .collect()
    }

    #[test]
    fn sample_bottom_row_candidates() {
        let cands = row_candidates(&[3, 3, 4, 9, 6], 15);
        assert!(cands.contains(&vec![true, true, false, true, false]));
        assert_eq!(cands, subsets_by_enumeration(&[3, 3, 4, 9, 6], 15));
    }

    #[test]
    fn zero_target_has_one_candidate() {
        assert_eq!(row_candidates(&[2, 7, 1], 0), vec![vec![false; 3]]);
    }

    #[test]
    fn ones_and_threes_to_two() {
        assert_eq!(
            row_candidates(&[1, 1, 3, 3], 2),
            vec![vec![true, true, false, false]]
        );
    }

    #[test]
    fn candidates_match_enumeration() {
        let rows: [&[u64]; 4] = [&[1, 2, 3, 4, 5], &[2, 2, 2, 2], &[9, 1, 8, 2, 7, 3], &[5]];
        for values in rows {
            let total: u64 = values.iter().sum();
            for target in 0..=total + 1 {
                assert_eq!(
                    row_candidates(values, target),
                    subsets_by_enumeration(values, target),
                    "{values:?} -> {target}"
                );
            }
        }
    }

    #[test]
    fn caps_forbid_cells() {
        let cands: Vec<_> = RowCandidates::with_caps(&[1, 1, 2], 2, &[1, 0, 2]).collect();
        assert_eq!(cands, vec![vec![false, false, true]]);
    }

    #[test]
    fn sample_puzzle_is_solved() {
        let inst = fixtures::sample_puzzle();
        let out = solve(&inst, &SolverConfig::default());
        assert_eq!(out.status, SolveStatus::Solved);
        assert!(verify(&inst, out.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn single_three_cannot_make_one() {
        let out = solve(&inst(vec![vec![3]], vec![1], vec![1]), &SolverConfig::default());
        assert_eq!(out.status, SolveStatus::Unsolvable);
        assert!(out.witness.is_none());
    }

    #[test]
    fn small_counts() {
        let cfg = SolverConfig::default();
        let c = count_solutions(&inst(vec![vec![3]], vec![0], vec![0]), &cfg);
        assert_eq!((c.count, c.exhausted), (1, true));
        let c = count_solutions(&inst(vec![vec![1, 1]], vec![1], vec![1, 0]), &cfg);
        assert_eq!((c.count, c.exhausted), (1, true));
    }

    #[test]
    fn cap_stops_counting() {
        // 2x2 of ones with all hints 1 has two solutions (the diagonals).
        let i = inst(vec![vec![1, 1], vec![1, 1]], vec![1, 1], vec![1, 1]);
        let all = count_solutions(&i, &SolverConfig::default());
        assert_eq!((all.count, all.exhausted), (2, true));
        let capped = count_solutions(&i, &SolverConfig::default().with_solution_cap(1));
        assert_eq!((capped.count, capped.exhausted), (1, false));
    }

    #[test]
    fn node_limit_reports_resource_limit() {
        let inst = fixtures::sample_puzzle();
        let out = solve(&inst, &SolverConfig::default().with_node_limit(1));
        assert_eq!(out.status, SolveStatus::ResourceLimit);
        assert!(out.witness.is_none());
        let c = count_solutions(&inst, &SolverConfig::default().with_node_limit(1));
        assert!(!c.exhausted);
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let i = inst(vec![vec![1, 1], vec![1, 1]], vec![1, 1], vec![1, 1]);
        let w = solve(&i, &SolverConfig::default()).witness.unwrap();
        // (0,1,1,0) precedes (1,0,0,1).
        assert_eq!(w.flags(), &[false, true, true, false]);
    }

    #[test]
    fn pruning_and_reachability_do_not_change_answers() {
        let instances = [
            fixtures::sample_puzzle(),
            fixtures::reduced_puzzle(),
            inst(vec![vec![1, 3], vec![3, 1]], vec![1, 1], vec![1, 1]),
            inst(vec![vec![2, 2, 2], vec![2, 2, 2]], vec![4, 2], vec![2, 2, 2]),
        ];
        for i in &instances {
            let base = count_solutions(i, &SolverConfig::default());
            let raw = count_solutions(i, &SolverConfig::default().without_pruning());
            let dp = count_solutions(i, &SolverConfig::default());
            let interval =
                count_solutions(i, &SolverConfig::default().with_column_reachability(false));
            assert_eq!(base.count, raw.count);
            assert_eq!(base.count, dp.count);
            assert_eq!(base.count, interval.count);
            assert!(dp.stats.nodes_expanded <= interval.stats.nodes_expanded);
            assert!(base.stats.row_subsets_enumerated <= raw.stats.row_subsets_enumerated);

            let a = solve(i, &SolverConfig::default()).witness;
            let b = solve(i, &SolverConfig::default().without_pruning()).witness;
            let c = solve(i, &SolverConfig::default().with_column_reachability(false)).witness;
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
    }

    #[test]
    fn reachability_table_matches_subset_sums() {
        // Sums beyond the hint are truncated, including across word
        // boundaries.
        let i = inst(vec![vec![70], vec![60], vec![1]], vec![0, 0, 0], vec![130]);
        let r = Reachability::new(&i);
        let sums = |row: usize| (0..=200).filter(|&s| r.reachable(row, 0, s)).collect::<Vec<_>>();
        assert_eq!(sums(0), vec![0, 1, 60, 61, 70, 71, 130]);
        assert_eq!(sums(1), vec![0, 1, 60, 61]);

        let i = inst(vec![vec![2], vec![5], vec![3]], vec![0, 0, 0], vec![8]);
        let r = Reachability::new(&i);
        let sums = |row: usize| (0..=8).filter(|&s| r.reachable(row, 0, s)).collect::<Vec<_>>();
        assert_eq!(sums(3), vec![0]);
        assert_eq!(sums(2), vec![0, 3]);
        assert_eq!(sums(1), vec![0, 3, 5, 8]);
        assert_eq!(sums(0), vec![0, 2, 3, 5, 7, 8]);
    }
}
