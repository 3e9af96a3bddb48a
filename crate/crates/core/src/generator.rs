//! Seeded generators for puzzles and regular formulas.
//!
//! Every generator draws from its own [`Rng`] seeded by the caller, so equal
//! seeds and parameters always give equal outputs. The exact sequence of
//! draws is documented on each function.

use thiserror::Error;

use crate::instance::{col_sums, row_sums, Axis, Mask, SumpleteInstance, MAX_CELLS, MAX_CELL_VALUE};
use crate::rng::Rng;
use crate::xsat::{Assignment, Clause, XsatInstance};

/// Redraws allowed by [`gen_xsat_regular`].
pub const REGULAR_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("puzzle dimensions {rows}x{cols} are not allowed")]
    Dimensions { rows: usize, cols: usize },
    #[error("the alphabet must not be empty")]
    EmptyAlphabet,
    #[error("alphabet value {0} is outside 1..={MAX_CELL_VALUE}")]
    AlphabetValue(u64),
    #[error("keep probability {num}/{den} is not in [0, 1]")]
    KeepProbability { num: u64, den: u64 },
    #[error("regular formulas need n >= 3, got {0}")]
    TooFewVariables(usize),
    #[error("planted formulas need n divisible by 3, got {0}")]
    NotDivisibleByThree(usize),
    #[error("no clause-valid draw within {0} attempts")]
    RetriesExhausted(usize),
}

/// A probability given as `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub const HALF: Ratio = Ratio { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self, GenError> {
        if den == 0 || num > den {
            return Err(GenError::KeepProbability { num, den });
        }
        Ok(Ratio { num, den })
    }

    fn sample(self, rng: &mut Rng) -> bool {
        rng.below(self.den) < self.num
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub rows: usize,
    pub cols: usize,
    pub alphabet: Vec<u64>,
    pub keep_prob: Ratio,
}

impl GenConfig {
    /// Digits 1 to 9, each cell kept with probability 1/2.
    pub fn new(rows: usize, cols: usize, seed: u64) -> Self {
        GenConfig {
            seed,
            rows,
            cols,
            alphabet: (1..=9).collect(),
            keep_prob: Ratio::HALF,
        }
    }

    /// Restricts cell values to {1, 3}.
    pub fn one_three(mut self) -> Self {
        self.alphabet = vec![1, 3];
        self
    }

    pub fn with_alphabet(mut self, alphabet: Vec<u64>) -> Self {
        self.alphabet = alphabet;
        self
    }

    pub fn with_keep_prob(mut self, keep_prob: Ratio) -> Self {
        self.keep_prob = keep_prob;
        self
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.rows == 0 || self.cols == 0 || self.rows.saturating_mul(self.cols) > MAX_CELLS {
            return Err(GenError::Dimensions {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.alphabet.is_empty() {
            return Err(GenError::EmptyAlphabet);
        }
        if let Some(&v) = self.alphabet.iter().find(|&&v| v == 0 || v > MAX_CELL_VALUE) {
            return Err(GenError::AlphabetValue(v));
        }
        Ratio::new(self.keep_prob.num, self.keep_prob.den)?;
        Ok(())
    }
}

/// A random puzzle together with a solution.
///
/// Draws, in order: every cell value in row-major order
/// (`alphabet[below(len)]`), then every keep flag in row-major order
/// (`below(den) < num`). The hints are the row and column sums of the kept
/// cells, so the returned mask always solves the puzzle. Nothing is done
/// about uniqueness.
pub fn gen_puzzle(cfg: &GenConfig) -> Result<(SumpleteInstance, Mask), GenError> {
    cfg.validate()?;
    let mut rng = Rng::new(cfg.seed);
    let cells = cfg.rows * cfg.cols;
    let grid: Vec<u64> = (0..cells)
        .map(|_| cfg.alphabet[rng.index(cfg.alphabet.len())])
        .collect();
    let keep: Vec<bool> = (0..cells).map(|_| cfg.keep_prob.sample(&mut rng)).collect();
    let mask = Mask::from_flat(cfg.rows, cfg.cols, keep).expect("validated shape");

    // Hints are placeholders until the sums are known.
    let blank = SumpleteInstance::from_flat(
        cfg.rows,
        cfg.cols,
        grid.clone(),
        vec![0; cfg.rows],
        vec![0; cfg.cols],
    )
    .expect("validated config");
    let rh = row_sums(&blank, &mask).expect("same shape");
    let ch = col_sums(&blank, &mask).expect("same shape");
    let inst = SumpleteInstance::from_flat(cfg.rows, cfg.cols, grid, rh, ch).expect("validated config");
    Ok((inst, mask))
}

fn permutation(n: usize, rng: &mut Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    rng.shuffle(&mut p);
    p
}

fn distinct(c: &Clause) -> bool {
    c[0] != c[1] && c[0] != c[2] && c[1] != c[2]
}

/// A random regular formula on `n` variables.
///
/// Three permutations of `1..=n` are drawn (shuffles of the identity) and
/// clause `i` is made of their `i`-th entries, so every variable lands in
/// exactly three clauses. If some clause repeats a variable, all three
/// permutations are redrawn, up to [`REGULAR_RETRIES`] times. The result is
/// not uniform over all regular formulas.
pub fn gen_xsat_regular(n: usize, seed: u64) -> Result<XsatInstance, GenError> {
    if n < 3 {
        return Err(GenError::TooFewVariables(n));
    }
    let mut rng = Rng::new(seed);
    for _ in 0..REGULAR_RETRIES {
        let p = [
            permutation(n, &mut rng),
            permutation(n, &mut rng),
            permutation(n, &mut rng),
        ];
        let clauses: Vec<Clause> = (0..n).map(|i| [p[0][i], p[1][i], p[2][i]]).collect();
        if clauses.iter().all(distinct) {
            return Ok(XsatInstance::new(n, clauses).expect("in-range distinct clauses"));
        }
    }
    Err(GenError::RetriesExhausted(REGULAR_RETRIES))
}

/// A random regular formula on `n` variables with a known solution.
///
/// Draws, in order:
///
/// 1. a permutation of the variables; its first `n/3` entries are true;
/// 2. a shuffle of the true variables each repeated three times; clause `i`
///    gets entry `i`, so every clause holds exactly one true variable;
/// 3. a shuffle of the false variables each repeated three times; clause `i`
///    gets entries `2i` and `2i+1`;
/// 4. repairs: while some clause holds the same false variable twice, the
///    second copy in the first such clause is swapped with a uniformly drawn
///    false slot, and the swap is kept only if neither clause involved is
///    left with a repeat (at most `100 n` swap attempts);
/// 5. a shuffle of the three members of every clause, in clause order.
pub fn gen_xsat_planted(n: usize, seed: u64) -> Result<(XsatInstance, Assignment), GenError> {
    if n < 3 {
        return Err(GenError::TooFewVariables(n));
    }
    if !n.is_multiple_of(3) {
        return Err(GenError::NotDivisibleByThree(n));
    }
    let mut rng = Rng::new(seed);
    let vars = permutation(n, &mut rng);
    let (truthy, falsy) = vars.split_at(n / 3);

    let mut true_slots: Vec<usize> = truthy.iter().flat_map(|&v| [v; 3]).collect();
    rng.shuffle(&mut true_slots);
    let mut false_slots: Vec<usize> = falsy.iter().flat_map(|&v| [v; 3]).collect();
    rng.shuffle(&mut false_slots);

    let repeated = |slots: &[usize], c: usize| slots[2 * c] == slots[2 * c + 1];
    let budget = 100 * n;
    let mut attempts = 0;
    while let Some(c) = (0..n).find(|&c| repeated(&false_slots, c)) {
        if attempts == budget {
            return Err(GenError::RetriesExhausted(budget));
        }
        attempts += 1;
        let k = rng.index(2 * n);
        let other = k / 2;
        if other == c {
            continue;
        }
        false_slots.swap(2 * c + 1, k);
        if repeated(&false_slots, c) || repeated(&false_slots, other) {
            false_slots.swap(2 * c + 1, k);
        }
    }

    let clauses: Vec<Clause> = (0..n)
        .map(|c| {
            let mut clause = [true_slots[c], false_slots[2 * c], false_slots[2 * c + 1]];
            rng.shuffle(&mut clause);
            clause
        })
        .collect();
    let phi = XsatInstance::new(n, clauses).expect("in-range distinct clauses");
    let mut values = vec![false; n];
    for &v in truthy {
        values[v - 1] = true;
    }
    Ok((phi, Assignment::new(values)))
}

/// Adds 1 to one hint picked uniformly among all `rows + cols` hints.
///
/// A single draw `k = below(rows + cols)` selects row hint `k` when
/// `k < rows` and column hint `k - rows` otherwise.
pub fn perturb_hint(inst: &SumpleteInstance, seed: u64) -> SumpleteInstance {
    let mut rng = Rng::new(seed);
    let k = rng.index(inst.rows() + inst.cols());
    if k < inst.rows() {
        inst.with_hint(Axis::Row, k, inst.row_hints()[k] + 1)
    } else {
        let j = k - inst.rows();
        inst.with_hint(Axis::Column, j, inst.col_hints()[j] + 1)
    }
}
