//! p-modular Brauer tables of `S_n` built from decomposition matrices.
//!
//! Decomposition matrices are data, not computed here. Every matrix is checked
//! against the ordinary table before use: triangularity under dominance, unit
//! diagonal, and the reconstruction identity `χ^λ = Σ_μ D[λ,μ] φ^μ` on the
//! p-regular classes for every row, p-singular rows included.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::error::{BrauerError, PartitionError};
use crate::linalg;
use crate::partition::{is_prime, p_regular_partitions, partitions_of, CycleCounts, MullineuxMap, Partition};
use crate::tables::{build_sn_table, CharTable, GroupKind, Label, Sign};
use crate::AlgebraicValue;

/// Rows: all partitions of `n`; columns: the p-regular ones; both canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    n: u32,
    p: u32,
    rows: Vec<Partition>,
    cols: Vec<Partition>,
    entries: Vec<Vec<i64>>,
}

impl DecompositionMatrix {
    pub fn new(
        n: u32,
        p: u32,
        rows: Vec<Partition>,
        cols: Vec<Partition>,
        entries: Vec<Vec<i64>>,
    ) -> Result<Self, BrauerError> {
        if !is_prime(p) {
            return Err(PartitionError::NotPrime(p).into());
        }
        if rows != partitions_of(n) {
            return Err(BrauerError::Shape(format!(
                "rows must be the partitions of {n} in canonical order"
            )));
        }
        if cols != p_regular_partitions(n, p) {
            return Err(BrauerError::Shape(format!(
                "columns must be the {p}-regular partitions of {n} in canonical order"
            )));
        }
        if entries.len() != rows.len() {
            return Err(BrauerError::Shape(format!(
                "{} entry rows for {} partitions",
                entries.len(),
                rows.len()
            )));
        }
        if let Some((i, r)) = entries.iter().enumerate().find(|(_, r)| r.len() != cols.len()) {
            return Err(BrauerError::Shape(format!(
                "row {} has {} entries, expected {}",
                rows[i],
                r.len(),
                cols.len()
            )));
        }
        Ok(DecompositionMatrix {
            n,
            p,
            rows,
            cols,
            entries,
        })
    }

    /// The identity matrix of the semisimple case `p > n`.
    pub fn semisimple(n: u32, p: u32) -> Result<Self, BrauerError> {
        if p <= n {
            return Err(BrauerError::Shape(format!("p = {p} divides n! for n = {n}")));
        }
        let rows = partitions_of(n);
        let k = rows.len();
        let entries = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(n, p, rows.clone(), rows, entries)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> &[Partition] {
        &self.rows
    }

    pub fn cols(&self) -> &[Partition] {
        &self.cols
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `D[λ, μ]`, zero when either label is absent.
    pub fn entry(&self, lambda: &Partition, mu: &Partition) -> i64 {
        let i = self.rows.iter().position(|r| r == lambda);
        let j = self.cols.iter().position(|c| c == mu);
        match (i, j) {
            (Some(i), Some(j)) => self.entries[i][j],
            _ => 0,
        }
    }

    /// A copy with one entry replaced; used to exercise validation.
    pub fn with_entry(&self, row: usize, col: usize, value: i64) -> Self {
        let mut d = self.clone();
        d.entries[row][col] = value;
        d
    }
}

/// The p′-classes of `S_n`: cycle types with no part divisible by `p`, in
/// table column order (the reverse of the canonical order).
pub fn p_prime_classes(n: u32, p: u32) -> Vec<Partition> {
    let mut cols: Vec<Partition> = partitions_of(n).into_iter().filter(|c| c.is_p_prime_class(p)).collect();
    cols.reverse();
    cols
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Negative { row: Partition, col: Partition, value: i64 },
    Triangularity { row: Partition, col: Partition },
    Diagonal { partition: Partition, value: i64 },
    Singular,
    Reconstruction { row: Partition },
    NaturalCharacter { class: Partition },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Negative { row, col, value } => {
                write!(f, "D[{row},{col}] = {value} is negative")
            }
            Violation::Triangularity { row, col } => {
                write!(f, "D[{row},{col}] is non-zero but {col} does not dominate {row}")
            }
            Violation::Diagonal { partition, value } => {
                write!(f, "D[{partition},{partition}] = {value}, expected 1")
            }
            Violation::Singular => write!(f, "p-regular square is not invertible"),
            Violation::Reconstruction { row } => {
                write!(f, "row {row} is not reproduced by D times the Brauer rows")
            }
            Violation::NaturalCharacter { class } => {
                write!(
                    f,
                    "Brauer row of (n-1,1) disagrees with |Fix g| - 1 - [p | n] on {class}"
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

fn structural_violations(d: &DecompositionMatrix) -> Result<Vec<Violation>, BrauerError> {
    let mut out = Vec::new();
    for (i, lambda) in d.rows.iter().enumerate() {
        for (j, mu) in d.cols.iter().enumerate() {
            let v = d.entries[i][j];
            if v < 0 {
                out.push(Violation::Negative {
                    row: lambda.clone(),
                    col: mu.clone(),
                    value: v,
                });
            }
            if v != 0 && !mu.dominates(lambda)? {
                out.push(Violation::Triangularity {
                    row: lambda.clone(),
                    col: mu.clone(),
                });
            }
            if lambda == mu && v != 1 {
                out.push(Violation::Diagonal {
                    partition: lambda.clone(),
                    value: v,
                });
            }
        }
    }
    Ok(out)
}

/// Ordinary values restricted to the p′-classes, one row per partition.
fn restricted_ordinary(d: &DecompositionMatrix) -> Result<(Vec<Partition>, Vec<Vec<BigInt>>), BrauerError> {
    let ordinary = build_sn_table(d.n)?;
    let classes = p_prime_classes(d.n, d.p);
    let idx: Vec<usize> = classes
        .iter()
        .map(|c| ordinary.col_of(c).expect("every cycle type is a column"))
        .collect();
    let rows = ordinary
        .values()
        .iter()
        .map(|r| idx.iter().map(|&j| int_of(&r[j])).collect())
        .collect();
    Ok((classes, rows))
}

fn int_of(v: &AlgebraicValue) -> BigInt {
    v.as_int().cloned().expect("S_n character values are integers")
}

/// Brauer rows by forward substitution. The canonical order refines dominance,
/// so `D[λ, μ] ≠ 0` with `μ ≠ λ` puts `μ` strictly earlier.
fn brauer_rows(d: &DecompositionMatrix, chi: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut phi: Vec<Vec<BigInt>> = Vec::with_capacity(d.cols.len());
    for mu in &d.cols {
        let i = d.rows.iter().position(|r| r == mu).expect("p-regular rows exist");
        let mut row = chi[i].clone();
        for (j, prev) in phi.iter().enumerate() {
            let c = d.entries[i][j];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(prev) {
                    *x -= y * c;
                }
            }
        }
        phi.push(row);
    }
    phi
}

/// Closed form of `φ^{(n-1,1)}(g)`: `|Fix g| - 1`, or `|Fix g| - 2` when `p | n`.
pub fn phi_natural_value(c: &CycleCounts, n: u32, p: u32) -> i64 {
    let fixed = i64::from(c.fixed_points());
    if n.is_multiple_of(p) {
        fixed - 2
    } else {
        fixed - 1
    }
}

/// Checks `d` against the ordinary table of `S_n`. Every violated condition
/// is listed with the offending labels.
pub fn validate_decomposition_matrix(d: &DecompositionMatrix) -> Result<ValidationReport, BrauerError> {
    let mut violations = structural_violations(d)?;
    if !violations.is_empty() {
        return Ok(ValidationReport { violations });
    }
    let (classes, chi) = restricted_ordinary(d)?;
    let phi = brauer_rows(d, &chi);
    if linalg::rank(&phi) != phi.len() {
        violations.push(Violation::Singular);
    }
    for (i, lambda) in d.rows.iter().enumerate() {
        let mut sum = vec![BigInt::from(0); classes.len()];
        for (j, row) in phi.iter().enumerate() {
            let c = d.entries[i][j];
            if c != 0 {
                for (x, y) in sum.iter_mut().zip(row) {
                    *x += y * c;
                }
            }
        }
        if sum != chi[i] {
            violations.push(Violation::Reconstruction { row: lambda.clone() });
        }
    }
    if d.n >= 3 {
        let natural = Partition::two_row(d.n, 1);
        if let Some(j) = d.cols.iter().position(|c| c == &natural) {
            for (col, class) in classes.iter().enumerate() {
                let expect = phi_natural_value(&class.cycle_counts(), d.n, d.p);
                if phi[j][col] != BigInt::from(expect) {
                    violations.push(Violation::NaturalCharacter { class: class.clone() });
                }
            }
        }
    }
    Ok(ValidationReport { violations })
}

/// The labelled Brauer table of `S_n` in characteristic `p`: rows are the
/// p-regular partitions in canonical order, columns the p′-classes.
pub fn build_brauer_table(d: &DecompositionMatrix) -> Result<CharTable, BrauerError> {
    let report = validate_decomposition_matrix(d)?;
    if !report.is_valid() {
        return Err(BrauerError::Invalid(
            report
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    let (classes, chi) = restricted_ordinary(d)?;
    let phi = brauer_rows(d, &chi);
    let values = phi
        .into_iter()
        .map(|r| r.into_iter().map(AlgebraicValue::Int).collect())
        .collect();
    let sizes = classes.iter().map(|c| c.class_size()).collect();
    Ok(CharTable::new(GroupKind::SymmetricModular, d.n, Some(d.p), values)?
        .with_row_labels(d.cols.iter().cloned().map(Label::plain).collect())?
        .with_col_labels(classes.into_iter().map(Label::plain).collect())?
        .with_class_sizes(sizes)?)
}

/// The non-split part of an `A_n` Brauer table.
///
/// Rows are one `φ^λ` per Mullineux pair `{λ, m(λ)}` with `m(λ) ≠ λ`, named
/// by the larger partition; columns are the `A_n` p′-classes, split ones
/// doubled. Rows with `m(λ) = λ` split on restriction and are not produced,
/// so the result is in general not square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnBrauerRestriction {
    pub n: u32,
    pub p: u32,
    pub row_labels: Vec<Label>,
    pub col_labels: Vec<Label>,
    pub values: Vec<Vec<AlgebraicValue>>,
    pub class_sizes: Vec<BigUint>,
    /// Partitions fixed by the Mullineux map, whose rows were left out.
    pub omitted: Vec<Partition>,
}

pub fn restrict_to_an_brauer(t: &CharTable) -> Result<AnBrauerRestriction, BrauerError> {
    let p = t.p().ok_or_else(|| BrauerError::Shape("not a modular table".into()))?;
    if p == 2 {
        return Err(BrauerError::EvenCharacteristic(p));
    }
    let n = t.n();
    let (Some(rows), Some(cols), Some(sizes)) = (t.row_labels(), t.col_labels(), t.class_sizes()) else {
        return Err(BrauerError::Shape(
            "table must be labelled and carry class sizes".into(),
        ));
    };
    let m = MullineuxMap::new(n, p)?;
    let mut row_labels = Vec::new();
    let mut keep_rows = Vec::new();
    let mut omitted = Vec::new();
    for (i, l) in rows.iter().enumerate() {
        let image = m.apply(&l.partition)?;
        if image == l.partition {
            omitted.push(image);
        } else if l.partition > image {
            row_labels.push(l.clone());
            keep_rows.push(i);
        }
    }
    let two = BigUint::from(2u32);
    let mut col_labels = Vec::new();
    let mut keep_cols = Vec::new();
    let mut class_sizes = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let nu = &c.partition;
        if !nu.is_even_permutation() {
            continue;
        }
        if n > 1 && nu.has_odd_distinct_parts() {
            for s in [Sign::Plus, Sign::Minus] {
                col_labels.push(Label::signed(nu.clone(), s));
                keep_cols.push(j);
                class_sizes.push(&sizes[j] / &two);
            }
        } else {
            col_labels.push(c.clone());
            keep_cols.push(j);
            class_sizes.push(sizes[j].clone());
        }
    }
    let values = keep_rows
        .iter()
        .map(|&i| keep_cols.iter().map(|&j| t.value(i, j).clone()).collect())
        .collect();
    Ok(AnBrauerRestriction {
        n,
        p,
        row_labels,
        col_labels,
        values,
        class_sizes,
        omitted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn d4p2() -> DecompositionMatrix {
        let rows = partitions_of(4);
        let cols = p_regular_partitions(4, 2);
        let entries = vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![1, 1], vec![1, 0]];
        DecompositionMatrix::new(4, 2, rows, cols, entries).unwrap()
    }

    #[test]
    fn p_prime_classes_in_column_order() {
        assert_eq!(p_prime_classes(4, 2), vec![part(&[1, 1, 1, 1]), part(&[3, 1])]);
        assert_eq!(p_prime_classes(4, 5).len(), 5);
        let c = p_prime_classes(5, 5);
        assert_eq!(c.len(), 6);
        assert!(!c.contains(&part(&[5])));
        for n in 1..=10 {
            for p in [2, 3, 5, 7] {
                assert_eq!(p_prime_classes(n, p).len(), p_regular_partitions(n, p).len());
            }
        }
    }

    #[test]
    fn s4_mod_2_table() {
        let t = build_brauer_table(&d4p2()).unwrap();
        let v: Vec<Vec<AlgebraicValue>> = vec![vec![1.into(), 1.into()], vec![2.into(), (-1).into()]];
        assert_eq!(t.values(), &v[..]);
        assert_eq!(t.row_labels().unwrap()[1], Label::plain(part(&[3, 1])));
    }

    #[test]
    fn violations_are_reported() {
        let d = d4p2();
        assert!(validate_decomposition_matrix(&d).unwrap().is_valid());
        let bad = d.with_entry(0, 1, 1);
        let r = validate_decomposition_matrix(&bad).unwrap();
        assert!(r.violations.contains(&Violation::Triangularity {
            row: part(&[4]),
            col: part(&[3, 1])
        }));
        let zero_diag = d.with_entry(1, 1, 0);
        let r = validate_decomposition_matrix(&zero_diag).unwrap();
        assert!(r.violations.contains(&Violation::Diagonal {
            partition: part(&[3, 1]),
            value: 0
        }));
        let wrong = d.with_entry(3, 0, 0);
        let r = validate_decomposition_matrix(&wrong).unwrap();
        assert_eq!(r.violations, vec![Violation::Reconstruction { row: part(&[2, 1, 1]) }]);
        assert!(build_brauer_table(&wrong).is_err());
    }

    #[test]
    fn semisimple_case_is_the_ordinary_table() {
        let d = DecompositionMatrix::semisimple(5, 7).unwrap();
        let t = build_brauer_table(&d).unwrap();
        assert_eq!(t.values(), build_sn_table(5).unwrap().values());
    }

    #[test]
    fn natural_closed_form() {
        let c = part(&[2, 2, 1, 1]).cycle_counts();
        assert_eq!(phi_natural_value(&c, 6, 3), 0);
        assert_eq!(phi_natural_value(&part(&[3, 1]).cycle_counts(), 4, 2), -1);
        assert_eq!(phi_natural_value(&Partition::column(7).cycle_counts(), 7, 2), 6);
    }

    #[test]
    fn semisimple_restriction_pairs_conjugates() {
        let d = DecompositionMatrix::semisimple(5, 7).unwrap();
        let r = restrict_to_an_brauer(&build_brauer_table(&d).unwrap()).unwrap();
        let names: Vec<String> = r.row_labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["(5)", "(4,1)", "(3,2)"]);
        assert_eq!(r.omitted, vec![part(&[3, 1, 1])]);
        assert_eq!(r.col_labels.len(), 5);
        assert!(restrict_to_an_brauer(&build_brauer_table(&d4p2()).unwrap()).is_err());
    }
}
