//! Sumplete puzzles and the reduction from exact satisfiability.
//!
//! A Sumplete puzzle is a grid of positive integers with a target sum on every
//! row and column; solving it means crossing out cells so that the kept cells
//! of each line add up to its target. This crate provides
//!
//! * the puzzle model and a linear-time verifier ([`instance`]),
//! * an exact backtracking solver and solution counter ([`solver`]) plus an
//!   independent exhaustive oracle ([`oracle`]),
//! * exact satisfiability over positive three-literal clauses ([`xsat`]),
//! * the polynomial reduction from regular XSAT formulas to puzzles whose
//!   cells are all 1 or 3, with solution mappings in both directions
//!   ([`reduction`]),
//! * seeded generators ([`generator`]) and file formats ([`format`]).
//!
//! ```
//! use sumplete::prelude::*;
//!
//! let phi = fixtures::sample_formula();
//! let puzzle = reduce(&phi)?;
//! assert!(puzzle.is_two_valued(1, 3));
//!
//! let outcome = solve(&puzzle, &SolverConfig::default());
//! assert_eq!(outcome.status, SolveStatus::Solved);
//! let assignment = mask_to_assignment(&phi, outcome.witness.as_ref().unwrap())?;
//! assert!(verify_assignment(&phi, &assignment)?);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The `book/` directory at the repository root walks through the same
//! material at more length; its code samples are compiled and run as part
//! of this crate's doctests.

pub mod fixtures;
pub mod format;
pub mod generator;
pub mod instance;
pub mod oracle;
pub mod reduction;
pub mod rng;
pub mod solver;
pub mod xsat;

pub mod prelude {
    pub use crate::fixtures;
    pub use crate::format::{
        parse_assignment, parse_instance, parse_mask, parse_xsat, serialize_assignment,
        serialize_instance, serialize_mask, serialize_xsat, Format,
    };
    pub use crate::generator::{gen_puzzle, gen_xsat_planted, gen_xsat_regular, perturb_hint, GenConfig, Ratio};
    pub use crate::instance::{col_sums, row_sums, verify, Mask, SumpleteInstance};
    pub use crate::oracle::brute_force;
    pub use crate::reduction::{assignment_to_mask, mask_to_assignment, reduce};
    pub use crate::solver::{count_solutions, row_candidates, solve, SolveStatus, SolverConfig};
    pub use crate::xsat::{brute_force_xsat, verify_assignment, Assignment, XsatInstance};
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/puzzle.md")]
    mod puzzle {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
    #[doc = include_str!("../../../book/src/xsat.md")]
    mod xsat {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
