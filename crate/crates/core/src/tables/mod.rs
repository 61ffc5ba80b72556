//! Character tables: labels, the table type, and character arithmetic.

mod alternating;
mod mn;
mod symmetric;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::TableError;
use crate::exact::{ClassFunction, QuadraticSum};
use crate::partition::Partition;
use crate::AlgebraicValue;

pub use alternating::build_an_table;
pub use mn::{mn_value, MnEvaluator};
pub use symmetric::build_sn_table;

/// Largest `n` for which ordinary tables are generated.
pub const MAX_N: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A partition with an optional `±`, naming a row or a column.
///
/// Rows of `A_n` tables labelled by a self-conjugate partition and columns
/// whose cycle type has odd distinct parts carry a sign; nothing else does.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub partition: Partition,
    pub sign: Option<Sign>,
}

/// Row label: an irreducible character.
pub type CharLabel = Label;
/// Column label: a conjugacy class, named by its cycle type.
pub type ClassLabel = Label;

impl Label {
    pub fn plain(partition: Partition) -> Self {
        Label { partition, sign: None }
    }

    pub fn signed(partition: Partition, sign: Sign) -> Self {
        Label {
            partition,
            sign: Some(sign),
        }
    }

    /// The same label with the sign flipped (unsigned labels are unchanged).
    pub fn flipped(&self) -> Self {
        Label {
            partition: self.partition.clone(),
            sign: self.sign.map(Sign::flip),
        }
    }
}

impl From<Partition> for Label {
    fn from(p: Partition) -> Self {
        Label::plain(p)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)?;
        if let Some(s) = self.sign {
            write!(f, "{}", s.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Symmetric,
    Alternating,
    SymmetricModular,
    AlternatingModular,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::Symmetric => "S",
            GroupKind::Alternating => "A",
            GroupKind::SymmetricModular => "S-mod-p",
            GroupKind::AlternatingModular => "A-mod-p",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "S" => GroupKind::Symmetric,
            "A" => GroupKind::Alternating,
            "S-mod-p" => GroupKind::SymmetricModular,
            "A-mod-p" => GroupKind::AlternatingModular,
            _ => return None,
        })
    }

    pub fn is_modular(self) -> bool {
        matches!(self, GroupKind::SymmetricModular | GroupKind::AlternatingModular)
    }
}

/// A square matrix of exact character values with its group descriptor and
/// optional labels and class sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    group: GroupKind,
    n: u32,
    p: Option<u32>,
    values: Vec<Vec<AlgebraicValue>>,
    row_labels: Option<Vec<CharLabel>>,
    col_labels: Option<Vec<ClassLabel>>,
    class_sizes: Option<Vec<BigUint>>,
}

impl CharTable {
    pub fn new(group: GroupKind, n: u32, p: Option<u32>, values: Vec<Vec<AlgebraicValue>>) -> Result<Self, TableError> {
        let rows = values.len();
        if let Some((row, r)) = values.iter().enumerate().find(|(_, r)| r.len() != rows) {
            return Err(TableError::NotSquare {
                rows,
                row,
                cols: r.len(),
            });
        }
        Ok(CharTable {
            group,
            n,
            p,
            values,
            row_labels: None,
            col_labels: None,
            class_sizes: None,
        })
    }

    pub fn with_row_labels(mut self, labels: Vec<CharLabel>) -> Result<Self, TableError> {
        check_labels(&labels, self.dim(), "row")?;
        self.row_labels = Some(labels);
        Ok(self)
    }

    pub fn with_col_labels(mut self, labels: Vec<ClassLabel>) -> Result<Self, TableError> {
        check_labels(&labels, self.dim(), "column")?;
        self.col_labels = Some(labels);
        Ok(self)
    }

    pub fn with_class_sizes(mut self, sizes: Vec<BigUint>) -> Result<Self, TableError> {
        if sizes.len() != self.dim() {
            return Err(TableError::DimensionMismatch {
                expected: self.dim(),
                got: sizes.len(),
            });
        }
        self.class_sizes = Some(sizes);
        Ok(self)
    }

    /// The bare matrix: labels and class sizes dropped.
    pub fn unlabelled(&self) -> CharTable {
        CharTable {
            row_labels: None,
            col_labels: None,
            class_sizes: None,
            ..self.clone()
        }
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> Option<u32> {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Vec<AlgebraicValue>] {
        &self.values
    }

    pub fn value(&self, row: usize, col: usize) -> &AlgebraicValue {
        &self.values[row][col]
    }

    pub fn row(&self, i: usize) -> ClassFunction {
        ClassFunction::new(self.values[i].clone())
    }

    pub fn column(&self, j: usize) -> Vec<AlgebraicValue> {
        self.values.iter().map(|r| r[j].clone()).collect()
    }

    pub fn row_labels(&self) -> Option<&[CharLabel]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[ClassLabel]> {
        self.col_labels.as_deref()
    }

    pub fn class_sizes(&self) -> Option<&[BigUint]> {
        self.class_sizes.as_deref()
    }

    pub fn row_index(&self, label: &CharLabel) -> Option<usize> {
        self.row_labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn col_index(&self, label: &ClassLabel) -> Option<usize> {
        self.col_labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Row of an unsigned partition label.
    pub fn row_of(&self, partition: &Partition) -> Option<usize> {
        self.row_index(&Label::plain(partition.clone()))
    }

    pub fn col_of(&self, partition: &Partition) -> Option<usize> {
        self.col_index(&Label::plain(partition.clone()))
    }

    pub fn group_order(&self) -> Option<BigUint> {
        self.class_sizes.as_ref().map(|s| s.iter().sum())
    }

    /// Rows and columns reordered: new row `i` is old row `rows[i]`, new
    /// column `j` is old column `cols[j]`. Labels and sizes travel along.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> CharTable {
        let values = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.values[i][j].clone()).collect())
            .collect();
        CharTable {
            group: self.group,
            n: self.n,
            p: self.p,
            values,
            row_labels: self
                .row_labels
                .as_ref()
                .map(|l| rows.iter().map(|&i| l[i].clone()).collect()),
            col_labels: self
                .col_labels
                .as_ref()
                .map(|l| cols.iter().map(|&j| l[j].clone()).collect()),
            class_sizes: self
                .class_sizes
                .as_ref()
                .map(|s| cols.iter().map(|&j| s[j].clone()).collect()),
        }
    }

    /// Labels and class sizes stripped, rows and columns shuffled by a
    /// ChaCha8 stream seeded with `seed`. Returns the table and the hidden
    /// permutations in the form taken by [`CharTable::permuted`].
    pub fn scrambled(&self, seed: u64) -> (CharTable, Vec<usize>, Vec<usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<usize> = (0..self.dim()).collect();
        let mut cols = rows.clone();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        (self.unlabelled().permuted(&rows, &cols), rows, cols)
    }

    /// `(1/|G|) Σ_j |C_j| u(j) conj(v(j))`.
    pub fn inner_product(&self, u: &ClassFunction, v: &ClassFunction) -> Result<BigRational, TableError> {
        let sizes = self.class_sizes.as_ref().ok_or(TableError::MissingClassSizes)?;
        inner_product_with_sizes(sizes, u, v)
    }

    /// Permutation character on `r`-subsets, `Σ_{s ≤ r} χ^{(n-s,s)}`.
    pub fn perm_char_two_row(&self, r: u32) -> Result<ClassFunction, TableError> {
        if 2 * r > self.n {
            return Err(TableError::InvalidLabels(format!(
                "no two-row partition (n-{r},{r}) for n = {}",
                self.n
            )));
        }
        let mut acc = ClassFunction::zero(self.dim());
        for s in 0..=r {
            let label = Partition::two_row(self.n, s);
            let i = self.row_of(&label).ok_or(TableError::MissingRow(label))?;
            acc = acc.add(&self.row(i))?;
        }
        Ok(acc)
    }

    /// Checks both orthogonality relations exactly. Class sizes are taken from
    /// the table when present, otherwise derived from the column norms.
    pub fn check_orthogonality(&self) -> Result<(), String> {
        let k = self.dim();
        let centralizers = self.column_norms()?;
        if centralizers.iter().any(|c| c.is_zero()) {
            return Err("a column is identically zero".into());
        }
        let order = centralizers.iter().max().cloned().unwrap_or_else(BigUint::one);
        let sizes: Vec<BigUint> = match &self.class_sizes {
            Some(s) => s.clone(),
            None => {
                let mut s = Vec::with_capacity(k);
                for c in &centralizers {
                    if (&order % c) != BigUint::zero() {
                        return Err(format!("column norm {c} does not divide {order}"));
                    }
                    s.push(&order / c);
                }
                s
            }
        };
        for j in 0..k {
            if &sizes[j] * &centralizers[j] != order {
                return Err(format!("column {j}: class size times norm is not the group order"));
            }
            for l in (j + 1)..k {
                let mut sum = QuadraticSum::new();
                for row in &self.values {
                    let term = row[j]
                        .checked_mul(&row[l].complex_conjugate())
                        .map_err(|e| e.to_string())?;
                    sum.add(&term);
                }
                let v = sum.to_rational().map_err(|e| e.to_string())?;
                if !v.is_zero() {
                    return Err(format!("columns {j} and {l} are not orthogonal"));
                }
            }
        }
        let order_int = BigInt::from(order);
        for i in 0..k {
            for l in i..k {
                let ip = inner_product_with_sizes(&sizes, &self.row(i), &self.row(l)).map_err(|e| e.to_string())?;
                let expect = if i == l {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if ip != expect {
                    return Err(format!(
                        "rows {i} and {l} have inner product {ip} (group order {order_int})"
                    ));
                }
            }
        }
        Ok(())
    }

    /// `Σ_rows |X[r, j]|²` per column: the centralizer orders of an ordinary table.
    pub fn column_norms(&self) -> Result<Vec<BigUint>, String> {
        (0..self.dim())
            .map(|j| {
                let mut sum = QuadraticSum::new();
                for row in &self.values {
                    let term = row[j]
                        .checked_mul(&row[j].complex_conjugate())
                        .map_err(|e| e.to_string())?;
                    sum.add(&term);
                }
                let v = sum.to_rational().map_err(|e| e.to_string())?;
                if !v.is_integer() || v.numer() < &BigInt::zero() {
                    return Err(format!("column {j} has non-integral norm {v}"));
                }
                Ok(v.to_integer().to_biguint().expect("non-negative"))
            })
            .collect()
    }

    /// The unique column whose entries are all positive.
    pub fn identity_column_candidates(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&j| self.values.iter().all(|r| r[j].is_positive()))
            .collect()
    }

    pub fn positive_rows(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.values[i].iter().all(|v| v.is_positive()))
            .collect()
    }
}

fn check_labels(labels: &[Label], dim: usize, what: &str) -> Result<(), TableError> {
    if labels.len() != dim {
        return Err(TableError::DimensionMismatch {
            expected: dim,
            got: labels.len(),
        });
    }
    let mut sorted: Vec<&Label> = labels.iter().collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(TableError::InvalidLabels(format!("{what} label {} repeated", w[0])));
    }
    Ok(())
}

/// `(1/|G|) Σ_j |C_j| u(j) conj(v(j))` with `|G| = Σ_j |C_j|`.
pub fn inner_product_with_sizes(
    sizes: &[BigUint],
    u: &ClassFunction,
    v: &ClassFunction,
) -> Result<BigRational, TableError> {
    if u.len() != sizes.len() || v.len() != sizes.len() {
        return Err(TableError::DimensionMismatch {
            expected: sizes.len(),
            got: u.len().min(v.len()),
        });
    }
    let mut sum = QuadraticSum::new();
    for ((size, x), y) in sizes.iter().zip(u.values()).zip(v.values()) {
        let term = x.checked_mul(&y.complex_conjugate())?;
        sum.add(&term.scale(&BigInt::from(size.clone())));
    }
    let order: BigUint = sizes.iter().sum();
    Ok(sum.to_rational()? / BigRational::from_integer(BigInt::from(order)))
}

/// Entrywise product of two class functions.
pub fn pointwise_product(u: &ClassFunction, v: &ClassFunction) -> Result<ClassFunction, TableError> {
    u.pointwise_product(v)
}

/// Canonical column order of `S_n` tables: the reverse of the canonical
/// partition order, so the identity class `(1^n)` comes first.
pub fn sn_column_order(n: u32) -> Vec<Partition> {
    let mut cols = crate::partition::partitions_of(n);
    cols.reverse();
    cols
}
