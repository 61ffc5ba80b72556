//! Recovering row and column labels of an unlabelled table.
//!
//! Large ordinary tables go through a constructive pipeline: trivial row and
//! identity column, the natural character, the two-row characters by
//! induction on tensor products, cycle types of the columns from the
//! permutation characters on r-subsets, and the remaining rows by comparison
//! with the reference table. Small cases, and anything where only a
//! reference table is available, go through an exhaustive search for every
//! row and column bijection onto the reference.

mod modular;
mod ordinary;

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::aut::search::{isomorphisms, Interner};
use crate::brauer::DecompositionMatrix;
use crate::error::RelabelError;
use crate::partition::{CycleCounts, Partition};
use crate::tables::{CharLabel, CharTable, ClassLabel, GroupKind};

pub use modular::{label_an_brauer_reference, relabel_an_brauer, relabel_brauer_sn};
pub use ordinary::{relabel_an, relabel_sn};

/// A label for every row and every column of a table, in input index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labelling {
    pub cols: Vec<ClassLabel>,
    pub rows: Vec<CharLabel>,
}

impl Labelling {
    pub fn without_signs(&self) -> Labelling {
        let strip = |v: &[crate::tables::Label]| {
            v.iter()
                .map(|l| crate::tables::Label::plain(l.partition.clone()))
                .collect()
        };
        Labelling {
            cols: strip(&self.cols),
            rows: strip(&self.rows),
        }
    }

    /// True when every entry of `x` equals the reference entry at the labels.
    pub fn reproduces(&self, x: &CharTable, reference: &CharTable) -> bool {
        let rows: Option<Vec<usize>> = self.rows.iter().map(|l| reference.row_index(l)).collect();
        let cols: Option<Vec<usize>> = self.cols.iter().map(|l| reference.col_index(l)).collect();
        let (Some(rows), Some(cols)) = (rows, cols) else {
            return false;
        };
        x.dim() == reference.dim()
            && (0..x.dim()).all(|i| (0..x.dim()).all(|j| x.value(i, j) == reference.value(rows[i], cols[j])))
    }

    /// `x` with these labels attached.
    pub fn apply(&self, x: &CharTable) -> Result<CharTable, RelabelError> {
        Ok(x.clone()
            .with_row_labels(self.rows.clone())?
            .with_col_labels(self.cols.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    /// Every valid labelling, sorted, without repetitions.
    pub labellings: Vec<Labelling>,
    /// Number of distinct labellings once `±` signs are forgotten.
    pub labelling_classes: usize,
    /// Set when split labels occur, so the `±` allocation is a convention.
    pub sign_orbit_note: bool,
    pub trace: Vec<String>,
}

impl ReconstructionReport {
    fn new(mut labellings: Vec<Labelling>, trace: Vec<String>) -> Self {
        labellings.sort();
        labellings.dedup();
        let classes: BTreeSet<Labelling> = labellings.iter().map(Labelling::without_signs).collect();
        let signed = labellings
            .iter()
            .any(|l| l.rows.iter().chain(&l.cols).any(|x| x.sign.is_some()));
        ReconstructionReport {
            labelling_classes: classes.len(),
            sign_orbit_note: signed,
            labellings,
            trace,
        }
    }
}

pub(crate) fn invalid(reason: impl Into<String>, trace: &[String]) -> RelabelError {
    RelabelError::invalid(reason, trace)
}

/// Every labelling of `x` that maps it exactly onto `reference`, found by
/// backtracking over row and column bijections. Empty when `x` is not a
/// table of the same group.
pub fn enumerate_labellings_oracle(x: &CharTable, reference: &CharTable) -> Vec<Labelling> {
    let (Some(rl), Some(cl)) = (reference.row_labels(), reference.col_labels()) else {
        return Vec::new();
    };
    if x.dim() != reference.dim() {
        return Vec::new();
    }
    let mut interner = Interner::default();
    let a = interner.matrix(x.values());
    let b = interner.matrix(reference.values());
    let mut out: Vec<Labelling> = isomorphisms(&a, &b, None)
        .into_iter()
        .map(|(sigma, tau)| Labelling {
            rows: sigma.iter().map(|&i| rl[i].clone()).collect(),
            cols: tau.iter().map(|&j| cl[j].clone()).collect(),
        })
        .collect();
    out.sort();
    out
}

pub(crate) fn oracle_report(
    x: &CharTable,
    reference: &CharTable,
    mut trace: Vec<String>,
) -> Result<ReconstructionReport, RelabelError> {
    let found = enumerate_labellings_oracle(x, reference);
    trace.push(format!(
        "exhaustive matching against the reference table: {} labellings",
        found.len()
    ));
    if found.is_empty() {
        return Err(invalid(
            "no row and column bijection reproduces the reference table",
            &trace,
        ));
    }
    Ok(ReconstructionReport::new(found, trace))
}

/// The unique row whose entries are all positive: the trivial character.
pub fn find_trivial_row(x: &CharTable) -> Result<usize, RelabelError> {
    match x.positive_rows()[..] {
        [i] => Ok(i),
        [] => Err(invalid("no all-positive row", &[])),
        _ => Err(invalid("more than one all-positive row", &[])),
    }
}

/// The unique column whose entries are all positive: the identity class.
pub fn find_identity_column(x: &CharTable) -> Result<usize, RelabelError> {
    match x.identity_column_candidates()[..] {
        [j] => Ok(j),
        [] => Err(invalid("no all-positive column", &[])),
        _ => Err(invalid("more than one all-positive column", &[])),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NaturalMode {
    Symmetric,
    Alternating,
    Brauer { p: u32 },
}

/// The row of `(n-1,1)`.
///
/// Ordinary `S_n`: of the two rows of degree `n-1` only the natural character
/// takes the value `n-3` (on a transposition). Ordinary `A_n`: the only row of
/// degree `n-1`. Brauer: the non-linear rows of degree at most `n-1` are the
/// natural Brauer character and possibly its twist by the sign; the natural
/// one takes `n-3`, or `n-4` when `p | n`.
pub fn find_natural_row(x: &CharTable, n: u32, identity_col: usize, mode: NaturalMode) -> Result<usize, RelabelError> {
    let degree = |i: usize| x.value(i, identity_col).as_int().cloned();
    let n_big = BigInt::from(n);
    let one = BigInt::from(1);
    let candidates: Vec<usize> = (0..x.dim())
        .filter(|&i| match (degree(i), mode) {
            (Some(d), NaturalMode::Brauer { .. }) => d > one && d < n_big,
            (Some(d), _) => d == &n_big - 1,
            (None, _) => false,
        })
        .collect();
    let target = match mode {
        NaturalMode::Brauer { p } if n.is_multiple_of(p) => i64::from(n) - 4,
        _ => i64::from(n) - 3,
    };
    let takes = |i: usize| x.values()[i].iter().any(|v| v.as_int() == Some(&BigInt::from(target)));
    let chosen: Vec<usize> = match (mode, candidates.len()) {
        (NaturalMode::Alternating, _) | (NaturalMode::Brauer { .. }, 1) => candidates,
        _ => candidates.into_iter().filter(|&i| takes(i)).collect(),
    };
    match chosen[..] {
        [i] => Ok(i),
        [] => Err(invalid("no row qualifies as the natural character", &[])),
        _ => Err(invalid("the natural character is not determined", &[])),
    }
}

/// Cycle type of every column from the values of the two-row characters.
///
/// `two_row[s][j]` is the value of `χ^{(n-s,s)}` on column `j` for
/// `0 ≤ s ≤ n/2`. With `f_r = Σ_{s ≤ r} χ^{(n-s,s)}` counting fixed r-subsets,
/// `a_1 = f_1` and `a_r = f_r - [x^r] Π_{i<r} (1+x^i)^{a_i}`. What is left
/// over is a single cycle longer than `n/2`. With `p` given, cycles of length
/// divisible by `p` must not occur.
#[allow(clippy::needless_range_loop)]
pub fn reconstruct_column_labels(two_row: &[Vec<BigInt>], n: u32, p: Option<u32>) -> Result<Vec<Partition>, String> {
    let half = (n / 2) as usize;
    if two_row.len() != half + 1 {
        return Err(format!("need {} two-row characters, got {}", half + 1, two_row.len()));
    }
    let k = two_row[0].len();
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let mut poly = vec![BigInt::from(0); half + 1];
        poly[0] = BigInt::from(1);
        let mut f = two_row[0][j].clone();
        let mut counts = Vec::new();
        let mut used: u64 = 0;
        for r in 1..=half {
            f += &two_row[r][j];
            let a = &f - &poly[r];
            let a: u32 = u32::try_from(&a).map_err(|_| format!("column {j}: {r}-cycle count {a} is not valid"))?;
            if a > 0 {
                if p.is_some_and(|p| (r as u32).is_multiple_of(p)) {
                    return Err(format!("column {j}: {a} cycles of length {r}, divisible by p"));
                }
                counts.push((r as u32, a));
                used += u64::from(a) * r as u64;
                for _ in 0..a {
                    for d in (r..=half).rev() {
                        let low = poly[d - r].clone();
                        poly[d] += low;
                    }
                }
            }
        }
        let left = i64::from(n) - used as i64;
        if left < 0 {
            return Err(format!("column {j}: cycles cover more than {n} points"));
        }
        if left > 0 {
            if (left as usize) <= half {
                return Err(format!("column {j}: {left} points left over for a short cycle"));
            }
            if p.is_some_and(|p| (left as u32).is_multiple_of(p)) {
                return Err(format!("column {j}: leftover {left}-cycle divisible by p"));
            }
            counts.push((left as u32, 1));
        }
        out.push(CycleCounts::new(counts).to_partition());
    }
    Ok(out)
}

/// For each column, the element orders it receives over all labellings.
pub fn column_orders(report: &ReconstructionReport) -> Vec<BTreeSet<u64>> {
    let k = report.labellings.first().map_or(0, |l| l.cols.len());
    (0..k)
        .map(|j| {
            report
                .labellings
                .iter()
                .map(|l| l.cols[j].partition.lcm_of_parts())
                .collect()
        })
        .collect()
}

/// Orders of the elements in each column, checked to agree across all
/// labellings of the report.
pub fn element_orders(report: &ReconstructionReport) -> Result<Vec<u64>, RelabelError> {
    if report.labellings.is_empty() {
        return Err(invalid("no labelling", &report.trace));
    }
    let mut orders = Vec::new();
    for (j, seen) in column_orders(report).into_iter().enumerate() {
        if seen.len() > 1 {
            return Err(RelabelError::AmbiguousOrders {
                column: j,
                orders: seen.into_iter().collect(),
            });
        }
        orders.extend(seen);
    }
    Ok(orders)
}

/// Runs the relabelling appropriate for `group`. Brauer tables of `S_n` need
/// the decomposition matrix; Brauer tables of `A_n` need a labelled reference.
pub fn relabel(
    x: &CharTable,
    group: GroupKind,
    n: u32,
    decomposition: Option<&DecompositionMatrix>,
    an_reference: Option<&CharTable>,
) -> Result<ReconstructionReport, RelabelError> {
    match group {
        GroupKind::Symmetric => relabel_sn(x, n),
        GroupKind::Alternating => relabel_an(x, n),
        GroupKind::SymmetricModular => {
            let d = decomposition.ok_or_else(|| invalid("a decomposition matrix is required", &[]))?;
            relabel_brauer_sn(x, n, d.p(), d)
        }
        GroupKind::AlternatingModular => {
            let r = an_reference.ok_or_else(|| invalid("a labelled reference table is required", &[]))?;
            relabel_an_brauer(x, r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{build_sn_table, GroupKind};
    use crate::AlgebraicValue;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn columns_from_two_row_values() {
        // S4 column (2,2): rows (4),(3,1),(2,2) take 1,-1,2
        let cols = reconstruct_column_labels(&[ints(&[1]), ints(&[-1]), ints(&[2])], 4, None).unwrap();
        assert_eq!(cols, vec![part(&[2, 2])]);
        // S5 column with natural value 2 and π² value 4: (2,1,1,1)
        let cols = reconstruct_column_labels(&[ints(&[1]), ints(&[2]), ints(&[1])], 5, None).unwrap();
        assert_eq!(cols, vec![part(&[2, 1, 1, 1])]);
        // a negative number of transpositions
        assert!(reconstruct_column_labels(&[ints(&[1]), ints(&[-1]), ints(&[-1])], 4, None).is_err());
        // wrong number of two-row characters
        assert!(reconstruct_column_labels(&[ints(&[1]), ints(&[5]), ints(&[14])], 6, None).is_err());
        // a 3-cycle is not a 3'-class
        assert!(reconstruct_column_labels(&[ints(&[1]), ints(&[-1])], 3, Some(3)).is_err());
    }

    #[test]
    fn trivial_row_and_identity_column() {
        let (x, rows, cols) = build_sn_table(4).unwrap().scrambled(3);
        let t = find_trivial_row(&x).unwrap();
        assert_eq!(rows[t], 0);
        let c = find_identity_column(&x).unwrap();
        assert_eq!(cols[c], 0);
        let zeros = CharTable::new(GroupKind::Symmetric, 2, None, vec![vec![AlgebraicValue::from(0); 2]; 2]).unwrap();
        assert!(find_trivial_row(&zeros).is_err());
    }

    #[test]
    fn natural_rows() {
        let t = build_sn_table(7).unwrap();
        let i = find_natural_row(&t, 7, 0, NaturalMode::Symmetric).unwrap();
        assert_eq!(t.row_labels().unwrap()[i].partition, part(&[6, 1]));
        let t = build_sn_table(5).unwrap();
        let i = find_natural_row(&t, 5, 0, NaturalMode::Symmetric).unwrap();
        assert_eq!(t.row_labels().unwrap()[i].partition, part(&[4, 1]));
    }

    #[test]
    fn oracle_on_the_reference_itself() {
        let t = build_sn_table(5).unwrap();
        let all = enumerate_labellings_oracle(&t.unlabelled(), &t);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].rows, t.row_labels().unwrap());
        let s4 = build_sn_table(4).unwrap();
        assert_eq!(enumerate_labellings_oracle(&s4.unlabelled(), &s4).len(), 2);
    }
}
