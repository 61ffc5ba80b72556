//! Murnaghan–Nakayama rule on beta-sets.
//!
//! Removing a rim hook of length `r` from `λ` is moving one bead of the
//! beta-set `{λ_i + ℓ - 1 - i}` from position `β` to an empty position
//! `β - r`; the leg length is the number of beads strictly in between.

use std::collections::HashMap;

use crate::error::PartitionError;
use crate::partition::Partition;

/// Memoized evaluator for `χ^λ(ν)`.
///
/// The cache key is `(remaining partition, remaining cycles)`, cycles being
/// consumed largest first, so one evaluator shared across a whole table
/// reuses every intermediate shape.
#[derive(Debug, Default)]
pub struct MnEvaluator {
    cache: HashMap<(Vec<u32>, Vec<u32>), i64>,
}

impl MnEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, lambda: &Partition, nu: &Partition) -> Result<i64, PartitionError> {
        if lambda.size() != nu.size() {
            return Err(PartitionError::SizeMismatch(lambda.size(), nu.size()));
        }
        Ok(self.eval(lambda.parts(), nu.parts()))
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    fn eval(&mut self, lambda: &[u32], cycles: &[u32]) -> i64 {
        if cycles.is_empty() {
            return i64::from(lambda.is_empty());
        }
        if lambda.len() <= 1 {
            // the trivial character
            return 1;
        }
        let key = (lambda.to_vec(), cycles.to_vec());
        if let Some(&v) = self.cache.get(&key) {
            return v;
        }
        let r = cycles[0];
        let rest = &cycles[1..];
        let len = lambda.len() as u32;
        let beta: Vec<u32> = lambda
            .iter()
            .enumerate()
            .map(|(i, &part)| part + len - 1 - i as u32)
            .collect();
        let mut total = 0i64;
        for (i, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut moved = beta.clone();
            moved[i] = target;
            moved.sort_unstable_by(|x, y| y.cmp(x));
            let shape = shape_from_beta(&moved);
            let v = self.eval(&shape, rest);
            if crossed % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.cache.insert(key, total);
        total
    }
}

fn shape_from_beta(beta: &[u32]) -> Vec<u32> {
    let len = beta.len() as u32;
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (len - 1 - i as u32))
        .filter(|&p| p > 0)
        .collect()
}

/// `χ^λ(ν)` for a single pair; use [`MnEvaluator`] for many.
pub fn mn_value(lambda: &Partition, nu: &Partition) -> Result<i64, PartitionError> {
    MnEvaluator::new().value(lambda, nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn s4_known_values() {
        assert_eq!(mn_value(&part(&[3, 1]), &part(&[2, 2])).unwrap(), -1);
        assert_eq!(mn_value(&part(&[2, 2]), &part(&[3, 1])).unwrap(), -1);
        assert_eq!(mn_value(&part(&[1, 1, 1, 1]), &part(&[2, 1, 1])).unwrap(), -1);
    }

    #[test]
    fn trivial_and_sign_characters() {
        let mut mn = MnEvaluator::new();
        for nu in partitions_of(7) {
            assert_eq!(mn.value(&Partition::row(7), &nu).unwrap(), 1);
            let sign = if nu.is_even_permutation() { 1 } else { -1 };
            assert_eq!(mn.value(&Partition::column(7), &nu).unwrap(), sign);
        }
    }

    #[test]
    fn identity_column_is_the_hook_degree() {
        let mut mn = MnEvaluator::new();
        for n in 1..=12 {
            for lambda in partitions_of(n) {
                let v = mn.value(&lambda, &Partition::column(n)).unwrap();
                assert_eq!(num_bigint::BigUint::from(v as u64), lambda.hook_degree());
            }
        }
    }

    #[test]
    fn natural_character_counts_fixed_points() {
        let mut mn = MnEvaluator::new();
        for nu in partitions_of(8) {
            let fixed = nu.cycle_counts().fixed_points() as i64;
            assert_eq!(mn.value(&part(&[7, 1]), &nu).unwrap(), fixed - 1);
        }
        assert_eq!(mn.value(&part(&[6, 1]), &part(&[2, 1, 1, 1, 1, 1])).unwrap(), 4);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(mn_value(&part(&[2, 1]), &part(&[2, 2])).is_err());
    }
}
