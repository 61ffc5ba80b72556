use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{
    find_natural_row, invalid, oracle_report, reconstruct_column_labels, Labelling, NaturalMode, ReconstructionReport,
};
use crate::aut::search::{isomorphisms, Interner};
use crate::brauer::{build_brauer_table, p_prime_classes, restrict_to_an_brauer, DecompositionMatrix};
use crate::error::RelabelError;
use crate::linalg;
use crate::partition::{MullineuxMap, Partition};
use crate::tables::{CharTable, GroupKind, Label, Sign};
use crate::AlgebraicValue;

fn companion(n: u32, s: u32) -> Option<Partition> {
    (n > 2 * s && s >= 1).then(|| Partition::new(vec![n - s - 1, s, 1]).expect("valid shape"))
}

fn two_row(n: u32, s: u32) -> Option<Partition> {
    (2 * s <= n).then(|| Partition::two_row(n, s))
}

fn sorted(v: &[BigInt]) -> Vec<BigInt> {
    let mut s = v.to_vec();
    s.sort();
    s
}

struct Brauer<'a> {
    n: u32,
    p: u32,
    rows: Vec<Vec<BigInt>>,
    reference: &'a CharTable,
    identity: usize,
    natural: usize,
}

impl Brauer<'_> {
    fn reference_row(&self, label: &Partition) -> Vec<BigInt> {
        let i = self.reference.row_of(label).expect("p-regular label");
        self.reference.values()[i]
            .iter()
            .map(|v| v.as_int().cloned().expect("integral"))
            .collect()
    }

    /// Whether row `i` can carry `label` at all: same degree and the same
    /// multiset of values as the reference row.
    fn compatible(&self, i: usize, label: &Partition) -> bool {
        let r = self.reference_row(label);
        r[0] == self.rows[i][self.identity] && sorted(&r) == sorted(&self.rows[i])
    }

    /// Two-row induction on `φ^{(n-1,1)} φ^{(n-r,r)}`. The product is written
    /// in the basis of rows; its support lies in the rows already labelled
    /// and the p-regular ones among `(n-r-1, r+1)` and `(n-r-1, r, 1)`.
    /// When two new rows appear and the reference cannot tell them apart
    /// both readings are followed.
    fn step(
        &self,
        r: u32,
        labelled: HashMap<Partition, usize>,
        trace: &mut Vec<String>,
    ) -> Result<Vec<HashMap<Partition, usize>>, RelabelError> {
        let n = self.n;
        if 2 * r >= n {
            return Ok(vec![labelled]);
        }
        let cur = labelled[&Partition::two_row(n, r)];
        let product: Vec<BigInt> = self.rows[self.natural]
            .iter()
            .zip(&self.rows[cur])
            .map(|(a, b)| a * b)
            .collect();
        let coeffs =
            linalg::solve_in_row_basis(&self.rows, &product).ok_or_else(|| invalid("rows are not a basis", trace))?;
        let mut support = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() || c.is_negative() {
                return Err(invalid(
                    format!("product with (n-{r},{r}) has coefficient {c} on row {i}"),
                    trace,
                ));
            }
            support.push(i);
        }
        let fresh: Vec<usize> = support
            .iter()
            .copied()
            .filter(|i| !labelled.values().any(|v| v == i))
            .collect();
        let expected: Vec<Partition> = [two_row(n, r + 1), companion(n, r)]
            .into_iter()
            .flatten()
            .filter(|q| q.is_p_regular(self.p))
            .collect();
        if fresh.len() != expected.len() {
            return Err(invalid(
                format!(
                    "product with (n-{r},{r}) has {} new constituents, expected {}",
                    fresh.len(),
                    expected.len()
                ),
                trace,
            ));
        }
        let readings: Vec<Vec<(Partition, usize)>> = match fresh.len() {
            0 => vec![Vec::new()],
            1 => vec![vec![(expected[0].clone(), fresh[0])]],
            _ => vec![
                vec![(expected[0].clone(), fresh[0]), (expected[1].clone(), fresh[1])],
                vec![(expected[0].clone(), fresh[1]), (expected[1].clone(), fresh[0])],
            ],
        };
        let alive: Vec<Vec<(Partition, usize)>> = readings
            .into_iter()
            .filter(|a| a.iter().all(|(q, i)| self.compatible(*i, q)))
            .collect();
        if alive.len() > 1 {
            trace.push(format!(
                "r = {r}: both readings of rows {fresh:?} survive, following both"
            ));
        }
        let mut out = Vec::new();
        for a in alive {
            let mut next = labelled.clone();
            for (q, i) in a {
                trace.push(format!("r = {r}: row {i} is {q}"));
                next.insert(q, i);
            }
            out.extend(self.step(r + 1, next, trace)?);
        }
        Ok(out)
    }

    /// Ordinary two-row characters on the p′-classes as D-weighted sums of
    /// labelled Brauer rows, then cycle types from fixed r-subsets.
    fn columns(&self, d: &DecompositionMatrix, labelled: &HashMap<Partition, usize>) -> Result<Vec<Partition>, String> {
        let n = self.n;
        let k = self.rows.len();
        let mut chi = Vec::new();
        for s in 0..=n / 2 {
            let lambda = Partition::two_row(n, s);
            let mut v = vec![BigInt::zero(); k];
            for t in 0..=s {
                let mu = Partition::two_row(n, t);
                let c = d.entry(&lambda, &mu);
                if c == 0 {
                    continue;
                }
                let i = labelled.get(&mu).ok_or_else(|| format!("row {mu} is not labelled"))?;
                for (x, y) in v.iter_mut().zip(&self.rows[*i]) {
                    *x += y * c;
                }
            }
            chi.push(v);
        }
        reconstruct_column_labels(&chi, n, Some(self.p))
    }
}

/// Identity column of a Brauer table: all entries positive and the largest
/// column sum. Every other column has a strictly smaller sum because only the
/// identity lies in the kernel of every irreducible Brauer character.
fn brauer_identity_column(rows: &[Vec<BigInt>], trace: &[String]) -> Result<usize, RelabelError> {
    let k = rows.len();
    let sums: Vec<(BigInt, usize)> = (0..k)
        .filter(|&j| rows.iter().all(|r| r[j].is_positive()))
        .map(|j| (rows.iter().map(|r| &r[j]).sum(), j))
        .collect();
    let best = sums
        .iter()
        .map(|s| &s.0)
        .max()
        .ok_or_else(|| invalid("no all-positive column", trace))?;
    let top: Vec<usize> = sums.iter().filter(|s| &s.0 == best).map(|s| s.1).collect();
    match top[..] {
        [j] => Ok(j),
        _ => Err(invalid("identity column is not determined", trace)),
    }
}

/// All labellings of an unlabelled Brauer table of `S_n` in characteristic
/// `p`, given the decomposition matrix of `S_n`.
pub fn relabel_brauer_sn(
    x: &CharTable,
    n: u32,
    p: u32,
    d: &DecompositionMatrix,
) -> Result<ReconstructionReport, RelabelError> {
    let mut trace = Vec::new();
    if d.n() != n || d.p() != p {
        return Err(invalid("decomposition matrix is for a different (n, p)", &trace));
    }
    let reference = build_brauer_table(d)?;
    if x.dim() != reference.dim() {
        return Err(invalid(
            format!(
                "table has {} rows, expected {} p-regular partitions",
                x.dim(),
                reference.dim()
            ),
            &trace,
        ));
    }
    let rows: Vec<Vec<BigInt>> = x
        .values()
        .iter()
        .map(|r| r.iter().map(|v| v.as_int().cloned()).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(|| invalid("Brauer characters of S_n are integer valued", &trace))?;
    if linalg::rank(&rows) != rows.len() {
        return Err(invalid("rows are linearly dependent", &trace));
    }
    trace.push("rows are linearly independent".into());
    if n <= 7 {
        return oracle_report(x, &reference, trace);
    }
    let trivial = match x.positive_rows()[..] {
        [i] => i,
        _ => return Err(invalid("no unique all-positive row", &trace)),
    };
    let identity = brauer_identity_column(&rows, &trace)?;
    let natural = find_natural_row(x, n, identity, NaturalMode::Brauer { p }).map_err(|e| match e {
        RelabelError::NotACharacterTable { reason, .. } => invalid(reason, &trace),
        other => other,
    })?;
    trace.push(format!(
        "row {trivial} is trivial, column {identity} is the identity, row {natural} is (n-1,1)"
    ));
    let b = Brauer {
        n,
        p,
        rows,
        reference: &reference,
        identity,
        natural,
    };
    let mut start = HashMap::new();
    start.insert(Partition::row(n), trivial);
    start.insert(Partition::two_row(n, 1), natural);
    let branches = b.step(1, start, &mut trace)?;

    let ref_labels = reference.row_labels().expect("labelled");
    let mut expected_cols = p_prime_classes(n, p);
    expected_cols.sort();
    let mut found = Vec::new();
    for labelled in branches {
        let cols = match b.columns(d, &labelled) {
            Ok(c) => c,
            Err(e) => {
                trace.push(format!("branch dropped: {e}"));
                continue;
            }
        };
        let mut got = cols.clone();
        got.sort();
        if got != expected_cols {
            trace.push("branch dropped: cycle types are not the p'-classes".into());
            continue;
        }
        let ref_col: Vec<usize> = cols.iter().map(|c| reference.col_of(c).expect("class")).collect();
        let lookup: HashMap<Vec<&AlgebraicValue>, usize> = (0..reference.dim())
            .map(|i| (ref_col.iter().map(|&j| reference.value(i, j)).collect(), i))
            .collect();
        let rows: Option<Vec<Label>> = (0..x.dim())
            .map(|i| {
                lookup
                    .get(&x.values()[i].iter().collect::<Vec<_>>())
                    .map(|&r| ref_labels[r].clone())
            })
            .collect();
        let Some(rows) = rows else {
            trace.push("branch dropped: some row matches no reference row".into());
            continue;
        };
        if labelled.iter().any(|(q, &i)| rows[i].partition != *q) {
            trace.push("branch dropped: completion contradicts the two-row labels".into());
            continue;
        }
        let l = Labelling {
            rows,
            cols: cols.into_iter().map(Label::plain).collect(),
        };
        if l.reproduces(x, &reference) {
            found.push(l);
        }
    }
    trace.push(format!("{} labellings verified against the reference", found.len()));
    if found.is_empty() {
        return Err(invalid("no labelling reproduces the reference Brauer table", &trace));
    }
    Ok(ReconstructionReport::new(found, trace))
}

/// Attaches labels to an ingested, unlabelled Brauer table of `A_n`.
///
/// Columns and the rows that do not split come from matching against the
/// restriction of the Brauer table of `S_n`; the two remaining rows whose sum
/// is the restriction of a Mullineux-fixed `φ^λ` become `λ+` and `λ-`.
pub fn label_an_brauer_reference(table: &CharTable, d: &DecompositionMatrix) -> Result<CharTable, RelabelError> {
    let n = table.n();
    let p = d.p();
    let trace = Vec::new();
    let s_table = build_brauer_table(d)?;
    let res = restrict_to_an_brauer(&s_table)?;
    if res.col_labels.len() != table.dim() {
        return Err(invalid("wrong number of p'-classes", &trace));
    }
    let multiset = |v: &[AlgebraicValue]| {
        let mut s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        s.sort();
        s
    };
    let wanted: Vec<Vec<String>> = res.values.iter().map(|r| multiset(r)).collect();
    let candidates: Vec<usize> = (0..table.dim())
        .filter(|&i| wanted.contains(&multiset(&table.values()[i])))
        .collect();
    if candidates.len() != res.values.len() {
        return Err(invalid("non-split rows cannot be singled out", &trace));
    }
    let mut interner = Interner::default();
    let sub: Vec<Vec<AlgebraicValue>> = candidates.iter().map(|&i| table.values()[i].clone()).collect();
    let a = interner.matrix(&sub);
    let b = interner.matrix(&res.values);
    let Some((sigma, tau)) = isomorphisms(&a, &b, Some(1)).into_iter().next() else {
        return Err(invalid("table does not restrict from S_n", &trace));
    };
    let mut rows: Vec<Option<Label>> = vec![None; table.dim()];
    for (c, &i) in candidates.iter().enumerate() {
        rows[i] = Some(res.row_labels[sigma[c]].clone());
    }
    let cols: Vec<Label> = tau.iter().map(|&j| res.col_labels[j].clone()).collect();
    let m = MullineuxMap::new(n, p).map_err(|e| invalid(e.to_string(), &trace))?;
    for lambda in m.fixed_points() {
        let si = s_table.row_of(&lambda).expect("p-regular");
        let target: Vec<AlgebraicValue> = cols
            .iter()
            .map(|c| s_table.value(si, s_table.col_of(&c.partition).expect("class")).clone())
            .collect();
        let free: Vec<usize> = (0..table.dim()).filter(|&i| rows[i].is_none()).collect();
        let mut pair = None;
        'outer: for (x, &i) in free.iter().enumerate() {
            for &j in &free[x + 1..] {
                let sum: Option<Vec<AlgebraicValue>> = table.values()[i]
                    .iter()
                    .zip(&table.values()[j])
                    .map(|(u, v)| u.checked_add(v).ok())
                    .collect();
                if sum.as_ref() == Some(&target) {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (i, j) = pair.ok_or_else(|| invalid(format!("no pair of rows sums to {lambda}"), &trace))?;
        rows[i] = Some(Label::signed(lambda.clone(), Sign::Plus));
        rows[j] = Some(Label::signed(lambda, Sign::Minus));
    }
    let rows: Vec<Label> = rows
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| invalid("some rows are not accounted for", &trace))?;
    let mut out = CharTable::new(GroupKind::AlternatingModular, n, Some(p), table.values().to_vec())?
        .with_row_labels(rows)?
        .with_col_labels(cols)?;
    if let Some(s) = table.class_sizes() {
        out = out.with_class_sizes(s.to_vec())?;
    }
    Ok(out)
}

/// All labellings of an unlabelled Brauer table of `A_n`, by exhaustive
/// matching against a labelled reference.
pub fn relabel_an_brauer(x: &CharTable, reference: &CharTable) -> Result<ReconstructionReport, RelabelError> {
    let trace = vec![format!(
        "Brauer table of A{} in characteristic {}: matching only",
        reference.n(),
        reference.p().unwrap_or(0)
    )];
    oracle_report(x, reference, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{an_brauer_reference, decomposition};

    fn count(n: u32, p: u32, seed: u64) -> usize {
        let d = decomposition(n, p).unwrap();
        let t = build_brauer_table(&d).unwrap();
        let (x, rows, cols) = t.scrambled(seed);
        let report = relabel_brauer_sn(&x, n, p, &d).unwrap();
        let truth = Labelling {
            rows: rows.iter().map(|&i| t.row_labels().unwrap()[i].clone()).collect(),
            cols: cols.iter().map(|&j| t.col_labels().unwrap()[j].clone()).collect(),
        };
        assert!(report.labellings.contains(&truth), "S{n} mod {p}");
        report.labellings.len()
    }

    #[test]
    fn brauer_counts() {
        for (n, p, want) in [
            (4, 2, 1),
            (4, 3, 2),
            (5, 2, 1),
            (5, 3, 1),
            (6, 2, 2),
            (6, 3, 2),
            (6, 5, 2),
            (7, 7, 1),
        ] {
            assert_eq!(count(n, p, 5), want, "S{n} mod {p}");
        }
    }

    #[test]
    fn brauer_pipeline_beyond_seven() {
        for (n, p) in [(8, 2), (8, 3), (8, 5), (9, 2), (9, 3), (10, 3)] {
            for seed in 0..3 {
                assert_eq!(count(n, p, seed), 1, "S{n} mod {p}");
            }
        }
    }

    #[test]
    fn an_brauer_reference_round_trip() {
        let r = an_brauer_reference(7, 5).unwrap().unwrap();
        let (x, _, _) = r.scrambled(2);
        let report = relabel_an_brauer(&x, &r).unwrap();
        assert!(!report.labellings.is_empty());
    }

    #[test]
    fn singular_rows_are_rejected() {
        let d = decomposition(8, 3).unwrap();
        let t = build_brauer_table(&d).unwrap();
        let mut v = t.values().to_vec();
        v[1] = v[0].clone();
        let x = CharTable::new(GroupKind::SymmetricModular, 8, Some(3), v).unwrap();
        assert!(relabel_brauer_sn(&x, 8, 3, &d).is_err());
    }
}
