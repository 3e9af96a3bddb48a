//! Worked examples, written out cell by cell.
//!
//! These are used by tests, doctests and the guide. The reduced instance and
//! its solution are written out by hand rather than produced by
//! [`reduce`](crate::reduction::reduce), so comparing the two is meaningful.

use crate::instance::{Mask, SumpleteInstance};
use crate::xsat::{Assignment, XsatInstance};

/// The 5x5 example puzzle (top row first).
pub fn sample_puzzle() -> SumpleteInstance {
    SumpleteInstance::new(
        vec![
            vec![3, 5, 5, 7, 1],
            vec![5, 1, 4, 1, 8],
            vec![4, 7, 2, 5, 2],
            vec![6, 2, 4, 9, 4],
            vec![3, 3, 4, 9, 6],
        ],
        vec![13, 14, 11, 6, 15],
        vec![11, 18, 11, 9, 10],
    )
    .expect("valid instance")
}

/// The solution of [`sample_puzzle`].
pub fn sample_solution() -> Mask {
    // 1-based crossed-out columns of each row.
    mask_from_crossed(5, &[&[4, 5], &[3, 4], &[1, 4], &[1, 4, 5], &[3, 5]])
}

/// Six clauses over six variables, each variable in exactly three clauses.
pub fn sample_formula() -> XsatInstance {
    XsatInstance::new(
        6,
        vec![
            [1, 2, 3],
            [2, 3, 6],
            [1, 4, 6],
            [2, 5, 6],
            [1, 4, 5],
            [3, 4, 5],
        ],
    )
    .expect("valid formula")
}

/// x2 and x4 true, everything else false.
pub fn sample_assignment() -> Assignment {
    Assignment::new(vec![false, true, false, true, false, false])
}

/// The (1,3)-Sumplete instance obtained from [`sample_formula`].
pub fn reduced_puzzle() -> SumpleteInstance {
    SumpleteInstance::new(
        vec![
            vec![1, 1, 1, 3, 3, 3],
            vec![3, 1, 1, 3, 3, 1],
            vec![1, 3, 3, 1, 3, 1],
            vec![3, 1, 3, 3, 1, 1],
            vec![1, 3, 3, 1, 1, 3],
            vec![3, 3, 1, 1, 1, 3],
            vec![3, 3, 3, 3, 3, 3],
        ],
        vec![1, 1, 1, 1, 1, 1, 12],
        vec![3, 3, 3, 3, 3, 3],
    )
    .expect("valid instance")
}

/// The solution of [`reduced_puzzle`].
pub fn reduced_solution() -> Mask {
    mask_from_crossed(
        6,
        &[
            &[1, 3, 4, 5, 6],
            &[1, 3, 4, 5, 6],
            &[1, 2, 3, 5, 6],
            &[1, 3, 4, 5, 6],
            &[1, 2, 3, 5, 6],
            &[1, 2, 3, 5, 6],
            &[2, 4],
        ],
    )
}

fn mask_from_crossed(cols: usize, crossed: &[&[usize]]) -> Mask {
    let mut mask = Mask::all_kept(crossed.len(), cols);
    for (i, row) in crossed.iter().enumerate() {
        for &j in *row {
            mask.set(i, j - 1, false);
        }
    }
    mask
}
