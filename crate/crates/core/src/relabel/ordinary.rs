use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{
    find_identity_column, find_natural_row, find_trivial_row, invalid, oracle_report, reconstruct_column_labels,
    Labelling, NaturalMode, ReconstructionReport,
};
use crate::error::RelabelError;
use crate::partition::{partitions_of, Partition};
use crate::tables::{build_an_table, build_sn_table, inner_product_with_sizes, CharTable, Label, Sign};
use crate::AlgebraicValue;

/// `(n-s-1, s, 1)`, the companion of the two-row partition `(n-s, s)`.
fn companion(n: u32, s: u32) -> Option<Partition> {
    (n > 2 * s && s >= 1).then(|| Partition::new(vec![n - s - 1, s, 1]).expect("valid shape"))
}

fn two_row(n: u32, s: u32) -> Option<Partition> {
    (2 * s <= n).then(|| Partition::two_row(n, s))
}

fn int_row(x: &CharTable, i: usize, trace: &[String]) -> Result<Vec<BigInt>, RelabelError> {
    x.values()[i]
        .iter()
        .map(|v| v.as_int().cloned())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| invalid(format!("row {i} should be rational"), trace))
}

struct Pipeline<'a> {
    x: &'a CharTable,
    n: u32,
    alternating: bool,
    trace: Vec<String>,
    sizes: Vec<BigUint>,
    degrees: Vec<BigInt>,
}

impl Pipeline<'_> {
    fn fail(&self, reason: impl Into<String>) -> RelabelError {
        invalid(reason, &self.trace)
    }

    fn label_of(&self, p: &Partition) -> Partition {
        if self.alternating {
            p.clone().max(p.conjugate())
        } else {
            p.clone()
        }
    }

    /// Labels the rows `(n-s, s)` and `(n-s-1, s, 1)` by decomposing
    /// `χ^{(n-1,1)} χ^{(n-r,r)}`, which has the constituents
    /// `(n-r+1, r-1)`, `(n-r, r)`, `(n-r-1, r+1)`, `(n-r, r-1, 1)` and
    /// `(n-r-1, r, 1)`, each once. The two not yet seen are told apart by
    /// degree: the two-row one is strictly smaller.
    fn two_row_rows(&mut self, trivial: usize, natural: usize) -> Result<HashMap<Partition, usize>, RelabelError> {
        let n = self.n;
        let mut labelled = HashMap::new();
        labelled.insert(Partition::row(n), trivial);
        labelled.insert(Partition::two_row(n, 1), natural);
        let nat = self.x.row(natural);
        let mut r = 1;
        while 2 * r < n {
            let cur = labelled[&Partition::two_row(n, r)];
            let product = nat.pointwise_product(&self.x.row(cur))?;
            let mut support = Vec::new();
            for i in 0..self.x.dim() {
                let c = inner_product_with_sizes(&self.sizes, &product, &self.x.row(i))?;
                if c.is_zero() {
                    continue;
                }
                if !c.is_one() {
                    return Err(self.fail(format!(
                        "constituent {i} of the product with (n-{r},{r}) has multiplicity {c}"
                    )));
                }
                support.push(i);
            }
            let known: Vec<Partition> = [two_row(n, r - 1), two_row(n, r), companion(n, r - 1)]
                .into_iter()
                .flatten()
                .collect();
            for p in &known {
                if !support.contains(&labelled[p]) {
                    return Err(self.fail(format!("{p} missing from the product with (n-{r},{r})")));
                }
            }
            let fresh: Vec<usize> = support
                .iter()
                .copied()
                .filter(|i| !labelled.values().any(|v| v == i))
                .collect();
            let expected: Vec<Partition> = [two_row(n, r + 1), companion(n, r)].into_iter().flatten().collect();
            if fresh.len() != expected.len() || support.len() != known.len() + fresh.len() {
                return Err(self.fail(format!(
                    "product with (n-{r},{r}) has {} constituents, expected the pattern of {} known and {} new",
                    support.len(),
                    known.len(),
                    expected.len()
                )));
            }
            let assignment: Vec<(Partition, usize)> = if fresh.len() == 2 {
                let (a, b) = (fresh[0], fresh[1]);
                let (small, large) = match self.degrees[a].cmp(&self.degrees[b]) {
                    std::cmp::Ordering::Less => (a, b),
                    std::cmp::Ordering::Greater => (b, a),
                    std::cmp::Ordering::Equal => {
                        return Err(self.fail(format!("new constituents at r = {r} have equal degrees")))
                    }
                };
                vec![(expected[0].clone(), small), (expected[1].clone(), large)]
            } else {
                vec![(expected[0].clone(), fresh[0])]
            };
            for (p, i) in assignment {
                if BigUint::try_from(&self.degrees[i]).ok() != Some(p.hook_degree()) {
                    return Err(self.fail(format!("row {i} was placed at {p} but has the wrong degree")));
                }
                self.trace.push(format!("r = {r}: row {i} is {}", self.label_of(&p)));
                labelled.insert(p, i);
            }
            r += 1;
        }
        Ok(labelled)
    }

    fn columns(&mut self, labelled: &HashMap<Partition, usize>) -> Result<Vec<Partition>, RelabelError> {
        let n = self.n;
        let mut two_row_values = Vec::new();
        for s in 0..=n / 2 {
            two_row_values.push(int_row(self.x, labelled[&Partition::two_row(n, s)], &self.trace)?);
        }
        let cols = reconstruct_column_labels(&two_row_values, n, None).map_err(|e| self.fail(e))?;
        let mut got = cols.clone();
        got.sort();
        let mut expected: Vec<Partition> = Vec::new();
        for nu in partitions_of(n) {
            if !self.alternating {
                expected.push(nu);
            } else if nu.is_even_permutation() {
                if nu.has_odd_distinct_parts() {
                    expected.push(nu.clone());
                }
                expected.push(nu);
            }
        }
        expected.sort();
        if got != expected {
            return Err(self.fail("reconstructed cycle types are not the classes of the group"));
        }
        self.trace
            .push("cycle types of all columns recovered from fixed r-subsets".into());
        Ok(cols)
    }
}

fn ordinary_checks(x: &CharTable, expected_dim: usize, trace: &mut Vec<String>) -> Result<(), RelabelError> {
    if x.dim() != expected_dim {
        return Err(invalid(
            format!("table has {} rows, the group has {expected_dim} classes", x.dim()),
            trace,
        ));
    }
    x.check_orthogonality().map_err(|e| invalid(e, trace))?;
    trace.push("both orthogonality relations hold".into());
    Ok(())
}

fn start(
    x: &CharTable,
    n: u32,
    alternating: bool,
    trace: Vec<String>,
) -> Result<(Pipeline<'_>, usize, usize), RelabelError> {
    let trivial = find_trivial_row(x).map_err(|e| with_trace(e, &trace))?;
    let identity = find_identity_column(x).map_err(|e| with_trace(e, &trace))?;
    let norms = x.column_norms().map_err(|e| invalid(e, &trace))?;
    let order = norms[identity].clone();
    let sizes = norms.iter().map(|c| &order / c).collect();
    let degrees = int_row_col(x, identity).ok_or_else(|| invalid("degrees must be integers", &trace))?;
    let mode = if alternating {
        NaturalMode::Alternating
    } else {
        NaturalMode::Symmetric
    };
    let natural = find_natural_row(x, n, identity, mode).map_err(|e| with_trace(e, &trace))?;
    let mut p = Pipeline {
        x,
        n,
        alternating,
        trace,
        sizes,
        degrees,
    };
    p.trace.push(format!(
        "row {trivial} is trivial, column {identity} is the identity, row {natural} is (n-1,1)"
    ));
    Ok((p, trivial, natural))
}

fn int_row_col(x: &CharTable, j: usize) -> Option<Vec<BigInt>> {
    x.values().iter().map(|r| r[j].as_int().cloned()).collect()
}

fn with_trace(e: RelabelError, trace: &[String]) -> RelabelError {
    match e {
        RelabelError::NotACharacterTable { reason, .. } => invalid(reason, trace),
        other => other,
    }
}

/// All labellings of an unlabelled ordinary table of `S_n`.
pub fn relabel_sn(x: &CharTable, n: u32) -> Result<ReconstructionReport, RelabelError> {
    let reference = build_sn_table(n)?;
    let mut trace = Vec::new();
    ordinary_checks(x, reference.dim(), &mut trace)?;
    if n <= 6 {
        return oracle_report(x, &reference, trace);
    }
    let (mut p, trivial, natural) = start(x, n, false, trace)?;
    let labelled = p.two_row_rows(trivial, natural)?;
    let cols = p.columns(&labelled)?;

    // rows: compare on the hook classes (n-r, 1^r), then everywhere
    let ref_col: Vec<usize> = cols.iter().map(|c| reference.col_of(c).expect("class")).collect();
    let hooks: Vec<usize> = (0..n)
        .map(|r| {
            cols.iter()
                .position(|c| c == &Partition::hook(n, r))
                .expect("hook class")
        })
        .collect();
    let mut by_key: HashMap<Vec<&AlgebraicValue>, Vec<usize>> = HashMap::new();
    for i in 0..reference.dim() {
        let key = hooks.iter().map(|&j| reference.value(i, ref_col[j])).collect();
        by_key.entry(key).or_default().push(i);
    }
    let ref_labels = reference.row_labels().expect("labelled");
    let mut rows = Vec::with_capacity(x.dim());
    for i in 0..x.dim() {
        let key: Vec<&AlgebraicValue> = hooks.iter().map(|&j| x.value(i, j)).collect();
        match by_key.get(&key).map(Vec::as_slice) {
            Some([r]) => rows.push(ref_labels[*r].clone()),
            _ => return Err(p.fail(format!("row {i} matches no unique character on the hook classes"))),
        }
    }
    for (part, &i) in &labelled {
        if rows[i].partition != *part {
            return Err(p.fail(format!("row {i} was labelled {part} but completes to {}", rows[i])));
        }
    }
    let labelling = Labelling {
        rows,
        cols: cols.into_iter().map(Label::plain).collect(),
    };
    if !labelling.reproduces(x, &reference) {
        return Err(p.fail("labelled table differs from the reference"));
    }
    p.trace
        .push("all rows labelled and verified against the reference".into());
    Ok(ReconstructionReport::new(vec![labelling], p.trace))
}

/// All labellings of an unlabelled ordinary table of `A_n`. The unsigned
/// labels are forced; every admissible `±` allocation is listed.
pub fn relabel_an(x: &CharTable, n: u32) -> Result<ReconstructionReport, RelabelError> {
    let reference = build_an_table(n)?;
    let mut trace = Vec::new();
    ordinary_checks(x, reference.dim(), &mut trace)?;
    if n <= 6 {
        return oracle_report(x, &reference, trace);
    }
    let (mut p, trivial, natural) = start(x, n, true, trace)?;
    let labelled = p.two_row_rows(trivial, natural)?;
    let cols = p.columns(&labelled)?;

    // split classes in order of first appearance
    let mut pairs: Vec<(Partition, Vec<usize>)> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if c.has_odd_distinct_parts() {
            match pairs.iter_mut().find(|(q, _)| q == c) {
                Some((_, v)) => v.push(j),
                None => pairs.push((c.clone(), vec![j])),
            }
        }
    }
    let ref_labels = reference.row_labels().expect("labelled");
    let mut found = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut labels: Vec<Label> = cols.iter().cloned().map(Label::plain).collect();
        for (b, (_, js)) in pairs.iter().enumerate() {
            let (first, second) = if mask >> b & 1 == 0 {
                (Sign::Plus, Sign::Minus)
            } else {
                (Sign::Minus, Sign::Plus)
            };
            labels[js[0]].sign = Some(first);
            labels[js[1]].sign = Some(second);
        }
        let ref_col: Vec<usize> = labels.iter().map(|l| reference.col_index(l).expect("class")).collect();
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
        let Some(rows) = rows else { continue };
        for (part, &i) in &labelled {
            if rows[i].partition != p.label_of(part) {
                return Err(p.fail(format!("row {i} was labelled {part} but completes to {}", rows[i])));
            }
        }
        let l = Labelling { rows, cols: labels };
        if l.reproduces(x, &reference) {
            found.push(l);
        }
    }
    p.trace.push(format!(
        "{} sign allocations on {} split class pairs reproduce the reference",
        found.len(),
        pairs.len()
    ));
    if found.is_empty() {
        return Err(p.fail("no sign allocation reproduces the reference"));
    }
    Ok(ReconstructionReport::new(found, p.trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn scrambled_s7_has_one_labelling() {
        let t = build_sn_table(7).unwrap();
        let (x, rows, cols) = t.scrambled(11);
        let r = relabel_sn(&x, 7).unwrap();
        assert_eq!(r.labellings.len(), 1);
        let l = &r.labellings[0];
        for i in 0..x.dim() {
            assert_eq!(&l.rows[i], &t.row_labels().unwrap()[rows[i]]);
            assert_eq!(&l.cols[i], &t.col_labels().unwrap()[cols[i]]);
        }
    }

    #[test]
    fn s7_two_row_step_uses_degrees() {
        let t = build_sn_table(7).unwrap();
        let r = relabel_sn(&t.unlabelled(), 7).unwrap();
        assert!(r.trace.iter().any(|s| s.contains("is (5,2)")));
        assert_eq!(part(&[5, 2]).hook_degree(), BigUint::from(14u32));
        assert_eq!(part(&[5, 1, 1]).hook_degree(), BigUint::from(15u32));
    }

    #[test]
    fn small_cases_use_matching() {
        let (x, _, _) = build_sn_table(4).unwrap().scrambled(1);
        assert_eq!(relabel_sn(&x, 4).unwrap().labellings.len(), 2);
        let (x, _, _) = build_an_table(5).unwrap().scrambled(1);
        let r = relabel_an(&x, 5).unwrap();
        assert_eq!(r.labelling_classes, 1);
        assert!(r.sign_orbit_note);
    }

    #[test]
    fn alternating_pipeline() {
        for (n, literal) in [(7, 2), (8, 4)] {
            let (x, _, _) = build_an_table(n).unwrap().scrambled(5);
            let r = relabel_an(&x, n).unwrap();
            assert_eq!(r.labellings.len(), literal, "A{n}");
            assert_eq!(r.labelling_classes, 1);
        }
    }

    #[test]
    fn random_matrix_is_rejected() {
        let t = build_sn_table(7).unwrap();
        let mut v = t.values().to_vec();
        v[3][4] = AlgebraicValue::from(5);
        let bad = CharTable::new(t.group(), 7, None, v).unwrap();
        assert!(matches!(
            relabel_sn(&bad, 7),
            Err(RelabelError::NotACharacterTable { .. })
        ));
    }
}
