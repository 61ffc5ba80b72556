use num_bigint::BigInt;

use super::{sn_column_order, CharTable, GroupKind, Label, MnEvaluator, MAX_N};
use crate::error::TableError;
use crate::partition::partitions_of;
use crate::AlgebraicValue;

/// The labelled ordinary character table of `S_n`.
///
/// Rows follow the canonical partition order, `(n)` first; columns run the
/// other way so that the identity class `(1^n)` is column 0.
pub fn build_sn_table(n: u32) -> Result<CharTable, TableError> {
    if !(1..=MAX_N).contains(&n) {
        return Err(TableError::OutOfBounds { n, min: 1, max: MAX_N });
    }
    let rows = partitions_of(n);
    let cols = sn_column_order(n);
    let mut mn = MnEvaluator::new();
    let mut values = Vec::with_capacity(rows.len());
    for lambda in &rows {
        let mut row = Vec::with_capacity(cols.len());
        for nu in &cols {
            row.push(AlgebraicValue::Int(BigInt::from(mn.value(lambda, nu)?)));
        }
        values.push(row);
    }
    let sizes = cols.iter().map(|c| c.class_size()).collect();
    CharTable::new(GroupKind::Symmetric, n, None, values)?
        .with_row_labels(rows.into_iter().map(Label::plain).collect())?
        .with_col_labels(cols.into_iter().map(Label::plain).collect())?
        .with_class_sizes(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ClassFunction;
    use crate::partition::{fixed_subset_counts, Partition};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn ints(t: &CharTable, row: &Partition) -> Vec<i64> {
        let i = t.row_of(row).unwrap();
        t.values()[i]
            .iter()
            .map(|v| i64::try_from(v.as_int().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn s4_in_canonical_order() {
        let t = build_sn_table(4).unwrap();
        // columns (1^4),(2,1,1),(2,2),(3,1),(4)
        assert_eq!(ints(&t, &part(&[3, 1])), vec![3, 1, -1, 0, -1]);
        assert_eq!(ints(&t, &part(&[2, 2])), vec![2, 0, 2, -1, 0]);
        assert_eq!(ints(&t, &part(&[1, 1, 1, 1])), vec![1, -1, 1, 1, -1]);
    }

    #[test]
    fn trivial_table_and_bounds() {
        let t = build_sn_table(1).unwrap();
        assert_eq!(t.values(), &[vec![AlgebraicValue::from(1)]]);
        assert!(build_sn_table(0).is_err());
        assert!(build_sn_table(MAX_N + 1).is_err());
    }

    #[test]
    fn natural_row_on_one_fixed_point() {
        let t = build_sn_table(5).unwrap();
        let i = t.row_of(&part(&[4, 1])).unwrap();
        let j = t.col_of(&part(&[2, 2, 1])).unwrap();
        assert!(t.value(i, j).is_zero());
    }

    #[test]
    fn orthogonality_up_to_eight() {
        for n in 1..=8 {
            build_sn_table(n).unwrap().check_orthogonality().unwrap();
        }
    }

    #[test]
    fn tensor_square_of_natural_character() {
        for n in 4..=9 {
            let t = build_sn_table(n).unwrap();
            let nat = t.row(t.row_of(&Partition::two_row(n, 1)).unwrap());
            let sq = nat.pointwise_product(&nat).unwrap();
            let two = t.row(t.row_of(&Partition::two_row(n, 2)).unwrap());
            assert_eq!(t.inner_product(&sq, &two).unwrap(), BigRational::one());
            let triv = t.row(0);
            let sign = t.row(t.row_of(&Partition::column(n)).unwrap());
            assert!(t.inner_product(&triv, &sign).unwrap().is_zero());
            let twisted = nat.pointwise_product(&sign).unwrap();
            let hook = t.row(t.row_of(&Partition::hook(n, n - 2)).unwrap());
            assert_eq!(twisted, hook);
        }
    }

    #[test]
    fn two_row_permutation_character_counts_subsets() {
        let t = build_sn_table(7).unwrap();
        let cols = sn_column_order(7);
        for r in 0..=3 {
            let pi: ClassFunction = t.perm_char_two_row(r).unwrap();
            for (j, nu) in cols.iter().enumerate() {
                let f = fixed_subset_counts(&nu.cycle_counts(), r);
                let expect = AlgebraicValue::Int(BigInt::from(f[r as usize].clone()));
                assert_eq!(pi.get(j), &expect);
            }
        }
    }
}
