//! Exact satisfiability over positive three-literal clauses.
//!
//! An [`XsatInstance`] is a list of clauses, each naming three distinct
//! variables. An [`Assignment`] satisfies it when every clause contains
//! exactly one true variable. The instance is *regular* when it has as many
//! clauses as variables and every variable occurs in exactly three clauses;
//! those are the inputs accepted by [`reduce`](crate::reduction::reduce).
//!
//! Variables are numbered from 1, as in `x_1 .. x_n`.

use thiserror::Error;

/// Largest variable count accepted by [`brute_force_xsat`].
pub const MAX_BRUTE_FORCE_VARS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XsatError {
    #[error("a formula needs at least one variable")]
    NoVariables,
    #[error("clause {clause} has {found} literals, expected 3")]
    Arity { clause: usize, found: usize },
    #[error("clause {clause} mentions x{var}, outside x1..x{n_vars}")]
    VariableRange {
        clause: usize,
        var: usize,
        n_vars: usize,
    },
    #[error("clause {clause} repeats x{var}")]
    RepeatedVariable { clause: usize, var: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("assignment has {found} values but the formula has {expected} variables")]
pub struct LengthMismatch {
    pub expected: usize,
    pub found: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("brute force handles at most {MAX_BRUTE_FORCE_VARS} variables, got {n_vars}")]
pub struct TooManyVariables {
    pub n_vars: usize,
}

/// Three distinct variable indices (1-based), kept in the order given.
pub type Clause = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XsatInstance {
    n_vars: usize,
    clauses: Vec<Clause>,
}

impl XsatInstance {
    pub fn new(n_vars: usize, clauses: Vec<Clause>) -> Result<Self, XsatError> {
        if n_vars == 0 {
            return Err(XsatError::NoVariables);
        }
        for (c, clause) in clauses.iter().enumerate() {
            for (k, &var) in clause.iter().enumerate() {
                if var == 0 || var > n_vars {
                    return Err(XsatError::VariableRange {
                        clause: c + 1,
                        var,
                        n_vars,
                    });
                }
                if clause[..k].contains(&var) {
                    return Err(XsatError::RepeatedVariable { clause: c + 1, var });
                }
            }
        }
        Ok(XsatInstance { n_vars, clauses })
    }

    /// Like [`XsatInstance::new`] but accepts clauses of any length and
    /// rejects the ones that do not have exactly three members.
    pub fn from_lists(n_vars: usize, clauses: Vec<Vec<usize>>) -> Result<Self, XsatError> {
        let fixed = clauses
            .into_iter()
            .enumerate()
            .map(|(c, lits)| {
                <Clause>::try_from(lits.as_slice()).map_err(|_| XsatError::Arity {
                    clause: c + 1,
                    found: lits.len(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n_vars, fixed)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Whether variable `var` (1-based) occurs in clause `clause` (0-based).
    pub fn contains(&self, clause: usize, var: usize) -> bool {
        self.clauses[clause].contains(&var)
    }

    /// Number of clauses each variable occurs in; entry `k` is for `x_{k+1}`.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.n_vars];
        for clause in &self.clauses {
            for &v in clause {
                occ[v - 1] += 1;
            }
        }
        occ
    }

    /// True iff there are as many clauses as variables and every variable
    /// occurs in exactly three clauses.
    pub fn is_regular(&self) -> bool {
        self.clauses.len() == self.n_vars && self.occurrences().iter().all(|&k| k == 3)
    }
}

/// A truth value per variable; index `k` holds `x_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all(n_vars: usize, value: bool) -> Self {
        Assignment {
            values: vec![value; n_vars],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Truth value of `x_var` (1-based).
    pub fn get(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn true_count(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }
}

/// True iff every clause has exactly one true variable.
pub fn verify_assignment(phi: &XsatInstance, a: &Assignment) -> Result<bool, LengthMismatch> {
    if a.len() != phi.n_vars {
        return Err(LengthMismatch {
            expected: phi.n_vars,
            found: a.len(),
        });
    }
    Ok(phi
        .clauses
        .iter()
        .all(|c| c.iter().filter(|&&v| a.get(v)).count() == 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XsatCount {
    pub satisfiable: bool,
    /// First satisfying assignment in enumeration order.
    pub witness: Option<Assignment>,
    pub count: u64,
}

/// Decides `phi` by trying all `2^n` assignments.
///
/// Assignments are visited as the binary numbers `0 .. 2^n` with `x_1` as
/// the least significant bit, so the witness is the satisfying assignment
/// with the smallest such number.
pub fn brute_force_xsat(phi: &XsatInstance) -> Result<XsatCount, TooManyVariables> {
    let n = phi.n_vars;
    if n > MAX_BRUTE_FORCE_VARS {
        return Err(TooManyVariables { n_vars: n });
    }
    let clause_bits: Vec<u32> = phi
        .clauses
        .iter()
        .map(|c| c.iter().fold(0u32, |acc, &v| acc | 1 << (v - 1)))
        .collect();

    let mut count = 0u64;
    let mut first = None;
    for bits in 0u32..(1u32 << n) {
        if clause_bits.iter().all(|&c| (c & bits).count_ones() == 1) {
            count += 1;
            if first.is_none() {
                first = Some(bits);
            }
        }
    }
    let witness = first.map(|bits| Assignment::new((0..n).map(|k| bits >> k & 1 == 1).collect()));
    Ok(XsatCount {
        satisfiable: count > 0,
        witness,
        count,
    })
}
