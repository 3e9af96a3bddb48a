use std::collections::{BTreeSet, HashSet};

use sumplete::generator::{gen_xsat_planted, gen_xsat_regular};
use sumplete::instance::{verify, Mask};
use sumplete::reduction::{assignment_to_mask, mask_to_assignment, reduce, ReductionError};
use sumplete::solver::{for_each_solution, solve, SolveStatus, SolverConfig};
use sumplete::xsat::{brute_force_xsat, verify_assignment, Assignment, XsatInstance};

/// Every satisfying assignment, by direct enumeration.
fn satisfying(phi: &XsatInstance) -> Vec<Assignment> {
    let n = phi.n_vars();
    (0u32..1 << n)
        .map(|b| Assignment::new((0..n).map(|k| b >> k & 1 == 1).collect()))
        .filter(|a| verify_assignment(phi, a).unwrap())
        .collect()
}

#[test]
fn reduced_grids_have_three_ones_per_clause_row_and_column() {
    for seed in 0..100 {
        let n = 3 + (seed as usize % 13);
        let phi = gen_xsat_regular(n, seed).unwrap();
        let inst = reduce(&phi).unwrap();
        assert!(inst.is_two_valued(1, 3));
        for i in 0..n {
            assert_eq!(inst.row(i).iter().filter(|&&v| v == 1).count(), 3);
        }
        for j in 0..n {
            assert_eq!((0..n).filter(|&i| inst.value(i, j) == 1).count(), 3);
        }
        assert!(inst.row(n).iter().all(|&v| v == 3));
    }
}

#[test]
fn oracle_witnesses_map_to_solutions() {
    let mut checked = 0;
    for seed in 0..50 {
        let n = if seed % 2 == 0 { 6 } else { 9 };
        let (phi, _) = gen_xsat_planted(n, seed).unwrap();
        let inst = reduce(&phi).unwrap();
        for a in satisfying(&phi) {
            let mask = assignment_to_mask(&phi, &a).unwrap();
            assert!(verify(&inst, &mask).unwrap());
            assert_eq!(mask_to_assignment(&phi, &mask).unwrap(), a);
            checked += 1;
        }
    }
    assert!(checked >= 50);
}

#[test]
fn witnesses_correspond_one_to_one() {
    for seed in 0..40 {
        let n = [3, 6, 9][seed as usize % 3];
        let phi = gen_xsat_regular(n, seed).unwrap();
        let inst = reduce(&phi).unwrap();

        let from_formula: BTreeSet<Mask> = satisfying(&phi)
            .iter()
            .map(|a| assignment_to_mask(&phi, a).unwrap())
            .collect();
        let mut from_puzzle = BTreeSet::new();
        let (count, exhausted) = for_each_solution(&inst, &SolverConfig::default(), |m| {
            from_puzzle.insert(m.clone());
        });
        assert!(exhausted);
        assert_eq!(count as usize, from_puzzle.len());
        assert_eq!(from_formula, from_puzzle, "seed {seed}");

        for m in &from_puzzle {
            let a = mask_to_assignment(&phi, m).unwrap();
            assert!(verify_assignment(&phi, &a).unwrap());
            assert_eq!(&assignment_to_mask(&phi, &a).unwrap(), m);
        }
    }
}

#[test]
fn satisfiability_matches_solvability() {
    for n in [3, 4, 5, 6, 7, 8, 9, 12] {
        for seed in 0..12 {
            let phi = gen_xsat_regular(n, seed).unwrap();
            let sat = brute_force_xsat(&phi).unwrap().satisfiable;
            let out = solve(&reduce(&phi).unwrap(), &SolverConfig::default());
            assert_eq!(out.status == SolveStatus::Solved, sat, "n={n} seed={seed}");
            if n % 3 != 0 {
                assert!(!sat);
            }
        }
    }
}

#[test]
fn planted_formulas_are_confirmed_by_brute_force() {
    for seed in 0..50 {
        let n = if seed % 2 == 0 { 6 } else { 9 };
        let (phi, a) = gen_xsat_planted(n, seed).unwrap();
        let res = brute_force_xsat(&phi).unwrap();
        assert!(res.satisfiable);
        assert_eq!(res.witness.unwrap().true_count(), n / 3);
        assert!(verify_assignment(&phi, &a).unwrap());
    }
}

#[test]
fn distinct_formulas_give_distinct_grids() {
    let mut formulas = HashSet::new();
    for seed in 0..300 {
        let phi = gen_xsat_regular(6, seed).unwrap();
        let mut clauses: Vec<[usize; 3]> = phi
            .clauses()
            .iter()
            .map(|c| {
                let mut c = *c;
                c.sort_unstable();
                c
            })
            .collect();
        clauses.sort_unstable();
        formulas.insert(clauses);
    }
    let grids: HashSet<Vec<u64>> = formulas
        .iter()
        .map(|c| reduce(&XsatInstance::new(6, c.clone()).unwrap()).unwrap().cells().to_vec())
        .collect();
    assert!(formulas.len() > 10);
    assert_eq!(grids.len(), formulas.len());
}

#[test]
fn shape_rejections() {
    // n = 4 and 5 with one clause short.
    for n in [4, 5] {
        let phi = gen_xsat_regular(n, 1).unwrap();
        let short = XsatInstance::new(n, phi.clauses()[1..].to_vec()).unwrap();
        assert!(matches!(reduce(&short), Err(ReductionError::NotRegular { .. })));
    }
}
