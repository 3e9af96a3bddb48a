//! From regular XSAT formulas to (1,3)-Sumplete puzzles, and back.
//!
//! For a regular formula with `n` variables and `n` clauses the puzzle has
//! `n + 1` rows and `n` columns. Row `i < n` stands for clause `i` and column
//! `j` for variable `x_{j+1}`:
//!
//! * cell `(i, j)` is 1 when the variable occurs in the clause and 3 otherwise;
//! * the last row is all 3s;
//! * every clause row has hint 1, the last row has hint `2n`, every column
//!   has hint 3.
//!
//! A clause row can only reach 1 by keeping a single 1, which picks the one
//! true variable of the clause. A column's clause cells are then either all
//! crossed or exactly its three 1s, so each variable is consistently true or
//! false; the 3 at the bottom makes up the column total for false variables.
//!
//! [`assignment_to_mask`] and [`mask_to_assignment`] translate solutions in
//! both directions.

use thiserror::Error;

use crate::instance::{verify, DimensionMismatch, Mask, SumpleteInstance};
use crate::xsat::{Assignment, LengthMismatch, XsatInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(
        "formula is not regular: {n_vars} variables, {n_clauses} clauses, \
         occurrence counts must all be 3"
    )]
    NotRegular { n_vars: usize, n_clauses: usize },
    #[error(transparent)]
    Length(#[from] LengthMismatch),
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
    #[error("mask does not solve the reduced puzzle")]
    NotASolution,
}

fn require_regular(phi: &XsatInstance) -> Result<(), ReductionError> {
    if phi.is_regular() {
        Ok(())
    } else {
        Err(ReductionError::NotRegular {
            n_vars: phi.n_vars(),
            n_clauses: phi.n_clauses(),
        })
    }
}

/// Builds the `(n+1) x n` puzzle for a regular formula.
pub fn reduce(phi: &XsatInstance) -> Result<SumpleteInstance, ReductionError> {
    require_regular(phi)?;
    let n = phi.n_vars();
    let mut grid = Vec::with_capacity((n + 1) * n);
    for i in 0..n {
        grid.extend((1..=n).map(|var| if phi.contains(i, var) { 1 } else { 3 }));
    }
    grid.extend(std::iter::repeat_n(3, n));

    let mut row_hints = vec![1; n];
    row_hints.push(2 * n as u64);
    let col_hints = vec![3; n];
    Ok(SumpleteInstance::from_flat(n + 1, n, grid, row_hints, col_hints)
        .expect("a regular formula yields a valid puzzle"))
}

/// The mask induced by an assignment.
///
/// In clause rows a cell is kept when its variable occurs in the clause and is
/// true. In the last row a cell is kept when its variable is false. When `a`
/// satisfies `phi` the result solves `reduce(phi)`.
pub fn assignment_to_mask(phi: &XsatInstance, a: &Assignment) -> Result<Mask, ReductionError> {
    require_regular(phi)?;
    let n = phi.n_vars();
    if a.len() != n {
        return Err(LengthMismatch {
            expected: n,
            found: a.len(),
        }
        .into());
    }
    let mut keep = Vec::with_capacity((n + 1) * n);
    for i in 0..n {
        keep.extend((1..=n).map(|var| phi.contains(i, var) && a.get(var)));
    }
    keep.extend(a.values().iter().map(|&v| !v));
    Ok(Mask::from_flat(n + 1, n, keep).expect("shape is (n+1) x n"))
}

/// Reads the assignment back from a solution of `reduce(phi)`.
///
/// `x_{j+1}` is true iff some 1 in column `j` of the clause rows is kept.
/// Masks that do not solve the reduced puzzle are rejected.
pub fn mask_to_assignment(phi: &XsatInstance, mask: &Mask) -> Result<Assignment, ReductionError> {
    let inst = reduce(phi)?;
    if !verify(&inst, mask)? {
        return Err(ReductionError::NotASolution);
    }
    let n = phi.n_vars();
    Ok(Assignment::new(
        (0..n)
            .map(|j| (0..n).any(|i| inst.value(i, j) == 1 && mask.is_kept(i, j)))
            .collect(),
    ))
}
