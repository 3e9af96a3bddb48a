//! Exhaustive reference procedures for checking the solver.
//!
//! Nothing here is shared with [`solver`](crate::solver). Two strategies are
//! available:
//!
//! * flat: every one of the `2^(rows*cols)` masks, for grids of at most
//!   [`FLAT_MAX_CELLS`] cells;
//! * row product: every combination of per-row masks that meet their row
//!   hint, with the columns checked only once a full grid is assembled.
//!   Used when the product of the per-row candidate counts is at most
//!   [`PRODUCT_MAX_COMBINATIONS`].
//!
//! Both enumerate masks in the same canonical order as the solver
//! (row-major, first cell most significant, crossed before kept), so the
//! first witness is directly comparable.

use thiserror::Error;

use crate::instance::{Mask, SumpleteInstance};

pub const FLAT_MAX_CELLS: usize = 24;
pub const PRODUCT_MAX_COMBINATIONS: u128 = 100_000_000;
/// Rows longer than this cannot be enumerated by bitmask.
pub const PRODUCT_MAX_COLS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("rows of {cols} cells are too wide for exhaustive enumeration")]
    TooWide { cols: usize },
    #[error("{combinations} row combinations exceed the oracle's budget")]
    TooManyCombinations { combinations: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub count: u64,
    pub first_witness: Option<Mask>,
}

/// Counts every solution of `inst`, choosing the flat strategy when the grid
/// is small enough and the row-product strategy otherwise.
pub fn brute_force(inst: &SumpleteInstance) -> Result<OracleResult, OracleError> {
    if inst.rows() * inst.cols() <= FLAT_MAX_CELLS {
        Ok(brute_force_flat(inst))
    } else {
        brute_force_rows(inst)
    }
}

/// Tries all `2^(rows*cols)` masks. Panics above [`FLAT_MAX_CELLS`] cells.
pub fn brute_force_flat(inst: &SumpleteInstance) -> OracleResult {
    let (rows, cols) = (inst.rows(), inst.cols());
    let n = rows * cols;
    assert!(n <= FLAT_MAX_CELLS, "flat oracle is limited to {FLAT_MAX_CELLS} cells");
    let cells = inst.cells();

    let mut count = 0u64;
    let mut first = None;
    for code in 0u32..(1u32 << n) {
        // Cell p is kept iff bit n-1-p of code is set.
        let kept = |p: usize| code >> (n - 1 - p) & 1 == 1;
        let rows_ok = (0..rows).all(|i| {
            (0..cols)
                .filter(|&j| kept(i * cols + j))
                .map(|j| cells[i * cols + j])
                .sum::<u64>()
                == inst.row_hints()[i]
        });
        if !rows_ok {
            continue;
        }
        let cols_ok = (0..cols).all(|j| {
            (0..rows)
                .filter(|&i| kept(i * cols + j))
                .map(|i| cells[i * cols + j])
                .sum::<u64>()
                == inst.col_hints()[j]
        });
        if cols_ok {
            count += 1;
            if first.is_none() {
                first = Some(code);
            }
        }
    }
    let first_witness = first.map(|code| {
        let keep = (0..n).map(|p| code >> (n - 1 - p) & 1 == 1).collect();
        Mask::from_flat(rows, cols, keep).expect("shape matches")
    });
    OracleResult {
        count,
        first_witness,
    }
}

/// Cartesian product of the per-row masks that meet their row hints.
pub fn brute_force_rows(inst: &SumpleteInstance) -> Result<OracleResult, OracleError> {
    let (rows, cols) = (inst.rows(), inst.cols());
    if cols > PRODUCT_MAX_COLS {
        return Err(OracleError::TooWide { cols });
    }
    // Per-row keep codes in increasing order; bit cols-1-j is cell j.
    let per_row: Vec<Vec<u32>> = (0..rows)
        .map(|i| {
            let values = inst.row(i);
            (0u32..1 << cols)
                .filter(|&code| {
                    (0..cols)
                        .filter(|&j| code >> (cols - 1 - j) & 1 == 1)
                        .map(|j| values[j])
                        .sum::<u64>()
                        == inst.row_hints()[i]
                })
                .collect()
        })
        .collect();

    let combinations = per_row
        .iter()
        .try_fold(1u128, |acc, r| acc.checked_mul(r.len() as u128))
        .unwrap_or(u128::MAX);
    if combinations > PRODUCT_MAX_COMBINATIONS {
        return Err(OracleError::TooManyCombinations { combinations });
    }
    if combinations == 0 {
        return Ok(OracleResult {
            count: 0,
            first_witness: None,
        });
    }

    // Odometer over candidate indices, last row fastest. prefix[i] holds the
    // column sums contributed by rows ..i.
    let mut idx = vec![0usize; rows];
    let mut prefix = vec![vec![0u64; cols]; rows + 1];
    let mut dirty = 0;
    let mut count = 0u64;
    let mut first: Option<Vec<u32>> = None;
    loop {
        for i in dirty..rows {
            let code = per_row[i][idx[i]];
            let (done, rest) = prefix.split_at_mut(i + 1);
            for j in 0..cols {
                let add = if code >> (cols - 1 - j) & 1 == 1 {
                    inst.value(i, j)
                } else {
                    0
                };
                rest[0][j] = done[i][j] + add;
            }
        }
        if prefix[rows] == inst.col_hints() {
            count += 1;
            if first.is_none() {
                first = Some((0..rows).map(|i| per_row[i][idx[i]]).collect());
            }
        }
        // Advance.
        let mut i = rows;
        loop {
            if i == 0 {
                let first_witness = first.map(|codes| {
                    let keep = codes
                        .iter()
                        .flat_map(|&code| (0..cols).map(move |j| code >> (cols - 1 - j) & 1 == 1))
                        .collect();
                    Mask::from_flat(rows, cols, keep).expect("shape matches")
                });
                return Ok(OracleResult {
                    count,
                    first_witness,
                });
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < per_row[i].len() {
                break;
            }
            idx[i] = 0;
        }
        dirty = i;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::verify;
    use crate::reduction::mask_to_assignment;
    use crate::xsat::verify_assignment;

    fn inst(grid: Vec<Vec<u64>>, r: Vec<u64>, c: Vec<u64>) -> SumpleteInstance {
        SumpleteInstance::new(grid, r, c).unwrap()
    }

    #[test]
    fn single_cell_all_kept() {
        let i = inst(vec![vec![3]], vec![3], vec![3]);
        let res = brute_force(&i).unwrap();
        assert_eq!(res.count, 1);
        assert_eq!(res.first_witness, Some(Mask::all_kept(1, 1)));
    }

    #[test]
    fn two_by_two_keeps_the_ones() {
        let i = inst(vec![vec![1, 3], vec![3, 1]], vec![1, 1], vec![1, 1]);
        for res in [brute_force_flat(&i), brute_force_rows(&i).unwrap()] {
            assert_eq!(res.count, 1);
            let w = res.first_witness.unwrap();
            assert_eq!(w.flags(), &[true, false, false, true]);
        }
    }

    #[test]
    fn strategies_agree_on_small_grids() {
        let cases = [
            inst(vec![vec![1, 1], vec![1, 1]], vec![1, 1], vec![1, 1]),
            inst(vec![vec![2, 3, 2], vec![1, 1, 5]], vec![4, 6], vec![2, 1, 7]),
            inst(vec![vec![4]], vec![3], vec![3]),
        ];
        for i in &cases {
            assert_eq!(brute_force_flat(i), brute_force_rows(i).unwrap());
        }
    }

    #[test]
    fn reduced_witnesses_decode_to_assignments() {
        let inst = fixtures::reduced_puzzle();
        let phi = fixtures::sample_formula();
        let res = brute_force(&inst).unwrap();
        assert!(res.count >= 1);
        let w = res.first_witness.unwrap();
        assert!(verify(&inst, &w).unwrap());
        let a = mask_to_assignment(&phi, &w).unwrap();
        assert!(verify_assignment(&phi, &a).unwrap());
    }

    #[test]
    fn sample_puzzle_is_counted_by_rows() {
        let res = brute_force(&fixtures::sample_puzzle()).unwrap();
        assert!(res.count >= 1);
        assert!(verify(&fixtures::sample_puzzle(), &res.first_witness.unwrap()).unwrap());
    }

    #[test]
    fn capacity_errors() {
        let wide = SumpleteInstance::from_flat(2, 25, vec![1; 50], vec![1, 1], vec![0; 25]).unwrap();
        assert_eq!(brute_force(&wide), Err(OracleError::TooWide { cols: 25 }));
        // Ten rows of ten ones with hint 5: C(10,5)^10 combinations.
        let dense = SumpleteInstance::from_flat(10, 10, vec![1; 100], vec![5; 10], vec![5; 10]).unwrap();
        assert!(matches!(
            brute_force(&dense),
            Err(OracleError::TooManyCombinations { .. })
        ));
    }
}
