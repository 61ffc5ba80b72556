//! Automorphisms of a character table: pairs `(σ, τ)` of row and column
//! permutations with `X[σ(i), τ(j)] = X[i, j]`, and their projections.

mod group;
pub(crate) mod search;

pub use group::{
    compose, cycle_type, identity, inverse, orbit_sizes, parse_cycles, perm_order, permutation_isomorphic, Perm,
    PermGroup,
};

use crate::error::AutError;
use crate::AlgebraicValue;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableAutomorphism {
    pub sigma: Perm,
    pub tau: Perm,
}

fn check_distinct(values: &[Vec<AlgebraicValue>]) -> Result<(), AutError> {
    let k = values.len();
    if values.iter().any(|r| r.len() != k) {
        return Err(AutError::NotSquare);
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if values[i] == values[j] {
                return Err(AutError::DuplicateRows(i, j));
            }
            if values.iter().all(|r| r[i] == r[j]) {
                return Err(AutError::DuplicateColumns(i, j));
            }
        }
    }
    Ok(())
}

/// Every automorphism of the matrix. Rows and columns must be pairwise
/// distinct, so that each `σ` has at most one partner `τ`.
pub fn automorphism_group(values: &[Vec<AlgebraicValue>]) -> Result<Vec<TableAutomorphism>, AutError> {
    check_distinct(values)?;
    let mut interner = search::Interner::default();
    let m = interner.matrix(values);
    let mut out: Vec<TableAutomorphism> = search::isomorphisms(&m, &m, None)
        .into_iter()
        .map(|(sigma, tau)| TableAutomorphism { sigma, tau })
        .collect();
    out.sort();
    Ok(out)
}

/// `Aut(X)` with its row projection `cAut` and column projection `clAut`.
#[derive(Clone, Debug)]
pub struct AutReport {
    pub automorphisms: Vec<TableAutomorphism>,
    pub caut: PermGroup,
    pub claut: PermGroup,
}

pub fn analyse(values: &[Vec<AlgebraicValue>]) -> Result<AutReport, AutError> {
    let automorphisms = automorphism_group(values)?;
    let k = values.len();
    let caut = PermGroup::from_elements(k, automorphisms.iter().map(|a| a.sigma.clone()))?;
    let claut = PermGroup::from_elements(k, automorphisms.iter().map(|a| a.tau.clone()))?;
    Ok(AutReport {
        automorphisms,
        caut,
        claut,
    })
}

pub fn caut(values: &[Vec<AlgebraicValue>]) -> Result<PermGroup, AutError> {
    Ok(analyse(values)?.caut)
}

pub fn claut(values: &[Vec<AlgebraicValue>]) -> Result<PermGroup, AutError> {
    Ok(analyse(values)?.claut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{build_an_table, build_sn_table};

    #[test]
    fn symmetric_tables() {
        for (n, order) in [(3, 1), (4, 2), (5, 1), (6, 2), (7, 1)] {
            let t = build_sn_table(n).unwrap();
            let auts = automorphism_group(t.values()).unwrap();
            assert_eq!(auts.len(), order, "S{n}");
            for a in &auts {
                for i in 0..t.dim() {
                    for j in 0..t.dim() {
                        assert_eq!(t.value(a.sigma[i], a.tau[j]), t.value(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn a6_has_two_independent_swaps() {
        let r = analyse(build_an_table(6).unwrap().values()).unwrap();
        assert_eq!(r.caut.order(), 4);
        assert_eq!(r.caut.orbit_sizes(), vec![2, 2, 1, 1, 1]);
        assert_eq!(r.caut.element_orders(), r.claut.element_orders());
    }

    #[test]
    fn duplicate_rows_are_rejected() {
        let v: Vec<Vec<AlgebraicValue>> = vec![vec![1.into(), 1.into()], vec![1.into(), 1.into()]];
        assert!(matches!(automorphism_group(&v), Err(AutError::DuplicateRows(0, 1))));
        let w: Vec<Vec<AlgebraicValue>> = vec![vec![1.into(), 1.into()], vec![2.into(), 2.into()]];
        assert!(matches!(automorphism_group(&w), Err(AutError::DuplicateColumns(0, 1))));
    }
}
