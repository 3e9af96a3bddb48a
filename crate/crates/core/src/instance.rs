//! Sumplete instances, masks and the solution verifier.
//!
//! A puzzle is a rectangular grid of positive integers with a target sum
//! ("hint") attached to every row and every column. A [`Mask`] records, for
//! every cell, whether the number is kept (uncrossed) or crossed out. The mask
//! solves the puzzle when the kept numbers of each line add up to that line's
//! hint.
//!
//! Rows and columns are 0-based in the API. Error messages report them
//! 1-based, the way the cells are usually written down (`a(1,1)` is the top
//! left cell).

use std::fmt;

use thiserror::Error;

/// Largest number of cells a grid may have.
pub const MAX_CELLS: usize = 10_000;

/// Largest value a single cell may hold.
pub const MAX_CELL_VALUE: u64 = 1_000_000;

/// Which family of lines a hint belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => f.write_str("row"),
            Axis::Column => f.write_str("column"),
        }
    }
}

/// A construction-time invariant that an instance failed to satisfy.
///
/// Row, column and hint positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("grid must have at least one row and one column (got {rows}x{cols})")]
    EmptyGrid { rows: usize, cols: usize },
    #[error("grid has {cells} cells, more than the supported {MAX_CELLS}")]
    TooManyCells { cells: usize },
    #[error("grid has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("grid has {found} cells, expected {expected}")]
    CellCount { expected: usize, found: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("cell ({row},{col}) holds {value}; cell values must lie in 1..={MAX_CELL_VALUE}")]
    CellValue { row: usize, col: usize, value: i64 },
    #[error("{found} {axis} hints given, expected {expected}")]
    HintCount { axis: Axis, expected: usize, found: usize },
    #[error("{axis} hint {index} is {value}; hints must be non-negative")]
    NegativeHint { axis: Axis, index: usize, value: i64 },
}

/// A mask was checked against an instance of a different shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("mask is {mask_rows}x{mask_cols} but the instance is {rows}x{cols}")]
pub struct DimensionMismatch {
    pub rows: usize,
    pub cols: usize,
    pub mask_rows: usize,
    pub mask_cols: usize,
}

/// A Sumplete puzzle: a grid of positive integers plus one hint per row and
/// one hint per column.
///
/// Instances are validated on construction and immutable afterwards.
/// Hints larger than the line total are accepted; such puzzles simply have no
/// solution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumpleteInstance {
    rows: usize,
    cols: usize,
    grid: Vec<u64>,
    row_hints: Vec<u64>,
    col_hints: Vec<u64>,
}

impl SumpleteInstance {
    /// Builds an instance from a row-major grid and its hints.
    pub fn new(
        grid: Vec<Vec<u64>>,
        row_hints: Vec<u64>,
        col_hints: Vec<u64>,
    ) -> Result<Self, InvariantError> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        for (i, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(InvariantError::RowLength {
                    row: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        let flat = grid.into_iter().flatten().collect();
        Self::from_flat(rows, cols, flat, row_hints, col_hints)
    }

    /// Builds an instance from a flat row-major cell vector.
    pub fn from_flat(
        rows: usize,
        cols: usize,
        grid: Vec<u64>,
        row_hints: Vec<u64>,
        col_hints: Vec<u64>,
    ) -> Result<Self, InvariantError> {
        if rows == 0 || cols == 0 {
            return Err(InvariantError::EmptyGrid { rows, cols });
        }
        let cells = rows.saturating_mul(cols);
        if cells > MAX_CELLS {
            return Err(InvariantError::TooManyCells { cells });
        }
        if grid.len() != cells {
            return Err(InvariantError::CellCount {
                expected: cells,
                found: grid.len(),
            });
        }
        if let Some(p) = grid.iter().position(|&v| v == 0 || v > MAX_CELL_VALUE) {
            return Err(InvariantError::CellValue {
                row: p / cols + 1,
                col: p % cols + 1,
                value: i64::try_from(grid[p]).unwrap_or(i64::MAX),
            });
        }
        if row_hints.len() != rows {
            return Err(InvariantError::HintCount {
                axis: Axis::Row,
                expected: rows,
                found: row_hints.len(),
            });
        }
        if col_hints.len() != cols {
            return Err(InvariantError::HintCount {
                axis: Axis::Column,
                expected: cols,
                found: col_hints.len(),
            });
        }
        Ok(SumpleteInstance {
            rows,
            cols,
            grid,
            row_hints,
            col_hints,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Value of the cell in row `i`, column `j` (0-based).
    pub fn value(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.rows && j < self.cols, "cell ({i},{j}) out of range");
        self.grid[i * self.cols + j]
    }

    /// The cells of row `i`, left to right.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.grid[i * self.cols..(i + 1) * self.cols]
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> &[u64] {
        &self.grid
    }

    pub fn row_hints(&self) -> &[u64] {
        &self.row_hints
    }

    pub fn col_hints(&self) -> &[u64] {
        &self.col_hints
    }

    /// Returns a copy with one hint replaced.
    pub fn with_hint(&self, axis: Axis, index: usize, value: u64) -> Self {
        let mut out = self.clone();
        match axis {
            Axis::Row => out.row_hints[index] = value,
            Axis::Column => out.col_hints[index] = value,
        }
        out
    }

    /// True iff every cell holds either `lo` or `hi`.
    ///
    /// `is_two_valued(1, 3)` is the (1,3)-Sumplete predicate.
    pub fn is_two_valued(&self, lo: u64, hi: u64) -> bool {
        debug_assert!(lo < hi);
        self.grid.iter().all(|&v| v == lo || v == hi)
    }

    /// True iff the largest cell value is a single digit.
    pub fn is_single_digit(&self) -> bool {
        self.grid.iter().all(|&v| v <= 9)
    }

    fn check_shape(&self, mask: &Mask) -> Result<(), DimensionMismatch> {
        if mask.rows == self.rows && mask.cols == self.cols {
            Ok(())
        } else {
            Err(DimensionMismatch {
                rows: self.rows,
                cols: self.cols,
                mask_rows: mask.rows,
                mask_cols: mask.cols,
            })
        }
    }
}

/// Per-cell keep/cross decisions for a grid. `true` means the cell is kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mask {
    rows: usize,
    cols: usize,
    keep: Vec<bool>,
}

impl Mask {
    /// Builds a mask from nested rows of keep flags.
    pub fn new(keep: Vec<Vec<bool>>) -> Result<Self, InvariantError> {
        let rows = keep.len();
        let cols = keep.first().map_or(0, Vec::len);
        for (i, row) in keep.iter().enumerate() {
            if row.len() != cols {
                return Err(InvariantError::RowLength {
                    row: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        Self::from_flat(rows, cols, keep.into_iter().flatten().collect())
    }

    /// Builds a mask from a flat row-major vector of keep flags.
    pub fn from_flat(rows: usize, cols: usize, keep: Vec<bool>) -> Result<Self, InvariantError> {
        if rows == 0 || cols == 0 {
            return Err(InvariantError::EmptyGrid { rows, cols });
        }
        if keep.len() != rows * cols {
            return Err(InvariantError::CellCount {
                expected: rows * cols,
                found: keep.len(),
            });
        }
        Ok(Mask { rows, cols, keep })
    }

    pub fn all_kept(rows: usize, cols: usize) -> Self {
        Mask {
            rows,
            cols,
            keep: vec![true; rows * cols],
        }
    }

    pub fn all_crossed(rows: usize, cols: usize) -> Self {
        Mask {
            rows,
            cols,
            keep: vec![false; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_kept(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "cell ({i},{j}) out of range");
        self.keep[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, keep: bool) {
        assert!(i < self.rows && j < self.cols, "cell ({i},{j}) out of range");
        self.keep[i * self.cols + j] = keep;
    }

    /// Keep flags of row `i`.
    pub fn row(&self, i: usize) -> &[bool] {
        &self.keep[i * self.cols..(i + 1) * self.cols]
    }

    /// All keep flags in row-major order.
    pub fn flags(&self) -> &[bool] {
        &self.keep
    }

    pub fn kept_count(&self) -> usize {
        self.keep.iter().filter(|&&k| k).count()
    }
}

/// Sum of kept values in each row.
pub fn row_sums(inst: &SumpleteInstance, mask: &Mask) -> Result<Vec<u64>, DimensionMismatch> {
    inst.check_shape(mask)?;
    Ok((0..inst.rows)
        .map(|i| kept_sum(inst.row(i), mask.row(i)))
        .collect())
}

/// Sum of kept values in each column.
pub fn col_sums(inst: &SumpleteInstance, mask: &Mask) -> Result<Vec<u64>, DimensionMismatch> {
    inst.check_shape(mask)?;
    let mut sums = vec![0u64; inst.cols];
    for i in 0..inst.rows {
        for (s, (&v, &k)) in sums.iter_mut().zip(inst.row(i).iter().zip(mask.row(i))) {
            if k {
                *s += v;
            }
        }
    }
    Ok(sums)
}

fn kept_sum(values: &[u64], keep: &[bool]) -> u64 {
    values
        .iter()
        .zip(keep)
        .filter(|(_, &k)| k)
        .map(|(&v, _)| v)
        .sum()
}

/// Checks whether `mask` solves `inst`.
///
/// A shape mismatch is an error rather than `false`.
pub fn verify(inst: &SumpleteInstance, mask: &Mask) -> Result<bool, DimensionMismatch> {
    verify_counting(inst, mask).map(|(ok, _)| ok)
}

/// Like [`verify`], also returning the number of cell visits performed.
///
/// Every cell is visited exactly once, so the count is always `rows * cols`.
pub fn verify_counting(
    inst: &SumpleteInstance,
    mask: &Mask,
) -> Result<(bool, usize), DimensionMismatch> {
    inst.check_shape(mask)?;
    let mut visits = 0usize;
    let mut cols = vec![0u64; inst.cols];
    let mut rows_ok = true;
    for i in 0..inst.rows {
        let mut row = 0u64;
        for j in 0..inst.cols {
            visits += 1;
            let p = i * inst.cols + j;
            if mask.keep[p] {
                row += inst.grid[p];
                cols[j] += inst.grid[p];
            }
        }
        rows_ok &= row == inst.row_hints[i];
    }
    Ok((rows_ok && cols == inst.col_hints, visits))
}

/// Signed differences `sum - hint` for one family of lines.
pub fn deltas(sums: &[u64], hints: &[u64]) -> Vec<i128> {
    sums.iter()
        .zip(hints)
        .map(|(&s, &h)| i128::from(s) - i128::from(h))
        .collect()
}
