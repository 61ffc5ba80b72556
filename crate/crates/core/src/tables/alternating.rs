use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::{sn_column_order, CharTable, GroupKind, Label, MnEvaluator, Sign, MAX_N};
use crate::error::TableError;
use crate::partition::{partitions_of, Partition};
use crate::AlgebraicValue;

/// Column labels of `A_n` in canonical order: even cycle types in the `S_n`
/// column order, split classes doubled with `+` before `-`.
pub(crate) fn an_column_labels(n: u32) -> Vec<Label> {
    let mut cols = Vec::new();
    for nu in sn_column_order(n) {
        if !nu.is_even_permutation() {
            continue;
        }
        if n > 1 && nu.has_odd_distinct_parts() {
            cols.push(Label::signed(nu.clone(), Sign::Plus));
            cols.push(Label::signed(nu, Sign::Minus));
        } else {
            cols.push(Label::plain(nu));
        }
    }
    cols
}

/// Row labels of `A_n`: one per pair `{λ, λ'}`, named by the larger of the two,
/// and `λ+`, `λ-` for self-conjugate `λ`.
pub(crate) fn an_row_labels(n: u32) -> Vec<Label> {
    let mut rows = Vec::new();
    for lambda in partitions_of(n) {
        let conj = lambda.conjugate();
        if n > 1 && lambda == conj {
            rows.push(Label::signed(lambda.clone(), Sign::Plus));
            rows.push(Label::signed(lambda, Sign::Minus));
        } else if lambda > conj || n == 1 {
            rows.push(Label::plain(lambda));
        }
    }
    rows
}

/// Value of the split character `λ±` on the split class `ν±`, where `ν` is the
/// cycle type given by the diagonal hooks of `λ`.
fn split_value(lambda: &Partition, row: Sign, col: Sign) -> Result<AlgebraicValue, TableError> {
    let hooks = lambda.diagonal_hooks()?;
    let n = lambda.size();
    let d = hooks.len() as u32;
    let eps: i64 = if ((n - d) / 2).is_multiple_of(2) { 1 } else { -1 };
    let prod: BigInt = hooks.iter().map(|&h| BigInt::from(h)).product();
    let b = if row == col { 1 } else { -1 };
    Ok(AlgebraicValue::new(BigInt::from(eps), BigInt::from(b), prod * eps)?)
}

/// The labelled ordinary character table of `A_n`.
///
/// Non-split rows restrict from `S_n`. A split row `λ±` takes half the `S_n`
/// value everywhere except on the classes whose cycle type is the list of
/// diagonal hooks `h` of `λ`, where it takes `(ε ± √(ε h_1⋯h_d))/2` with
/// `ε = (-1)^{(n-d)/2}`.
pub fn build_an_table(n: u32) -> Result<CharTable, TableError> {
    if !(2..=MAX_N).contains(&n) {
        return Err(TableError::OutOfBounds { n, min: 2, max: MAX_N });
    }
    let rows = an_row_labels(n);
    let cols = an_column_labels(n);
    let mut mn = MnEvaluator::new();
    let mut values = Vec::with_capacity(rows.len());
    for row in &rows {
        let lambda = &row.partition;
        let hooks = match row.sign {
            Some(_) => Some(Partition::new(lambda.diagonal_hooks()?)?),
            None => None,
        };
        let mut line = Vec::with_capacity(cols.len());
        for col in &cols {
            let nu = &col.partition;
            let v = match (row.sign, col.sign) {
                (Some(rs), Some(cs)) if hooks.as_ref() == Some(nu) => split_value(lambda, rs, cs)?,
                (Some(_), _) => {
                    let full = mn.value(lambda, nu)?;
                    AlgebraicValue::Int(BigInt::from(full / 2))
                }
                (None, _) => AlgebraicValue::Int(BigInt::from(mn.value(lambda, nu)?)),
            };
            line.push(v);
        }
        values.push(line);
    }
    let two = BigUint::from(2u32);
    let sizes = cols
        .iter()
        .map(|c| {
            let s = c.partition.class_size();
            if c.sign.is_some() {
                s / &two
            } else {
                s
            }
        })
        .collect::<Vec<_>>();
    debug_assert!(sizes.iter().all(|s| s >= &BigUint::one()));
    CharTable::new(GroupKind::Alternating, n, None, values)?
        .with_row_labels(rows)?
        .with_col_labels(cols)?
        .with_class_sizes(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn a5_table_is_exact() {
        let t = build_an_table(5).unwrap();
        let col_names: Vec<String> = t.col_labels().unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(col_names, ["(1,1,1,1,1)", "(2,2,1)", "(3,1,1)", "(5)+", "(5)-"]);
        let row_names: Vec<String> = t.row_labels().unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(row_names, ["(5)", "(4,1)", "(3,2)", "(3,1,1)+", "(3,1,1)-"]);
        let i = |v: i64| AlgebraicValue::from(v);
        let alpha = AlgebraicValue::new(1.into(), 1.into(), 5.into()).unwrap();
        let beta = AlgebraicValue::new(1.into(), (-1).into(), 5.into()).unwrap();
        assert_eq!(t.values()[1], vec![i(4), i(0), i(1), i(-1), i(-1)]);
        assert_eq!(t.values()[2], vec![i(5), i(1), i(-1), i(0), i(0)]);
        assert_eq!(t.values()[3], vec![i(3), i(-1), i(0), alpha.clone(), beta.clone()]);
        assert_eq!(t.values()[4], vec![i(3), i(-1), i(0), beta, alpha]);
    }

    #[test]
    fn a4_split_values_are_cube_roots_of_unity() {
        let t = build_an_table(4).unwrap();
        let r = t.row_index(&Label::signed(part(&[2, 2]), Sign::Plus)).unwrap();
        let c = t.col_index(&Label::signed(part(&[3, 1]), Sign::Plus)).unwrap();
        let w = AlgebraicValue::new((-1).into(), 1.into(), (-3).into()).unwrap();
        assert_eq!(t.value(r, c), &w);
        t.check_orthogonality().unwrap();
    }

    #[test]
    fn orthogonality_up_to_nine() {
        for n in 2..=9 {
            let t = build_an_table(n).unwrap();
            t.check_orthogonality().unwrap_or_else(|e| panic!("A{n}: {e}"));
        }
    }

    #[test]
    fn a6_dimension() {
        assert_eq!(build_an_table(6).unwrap().dim(), 7);
        assert!(build_an_table(1).is_err());
    }
}
