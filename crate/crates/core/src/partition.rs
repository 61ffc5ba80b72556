//! Integer partitions and the combinatorics attached to them: conjugation,
//! dominance, p-regularity, hooks, cycle counts and the Mullineux map.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PartitionError;

/// A weakly decreasing sequence of positive integers.
///
/// The derived ordering is lexicographic on the parts, so for partitions of
/// the same size `(n) > (n-1,1) > ... > (1^n)`; the canonical enumeration
/// order used throughout the crate is the *descending* one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::NonPositivePart(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Builds a partition from parts in any order (zeros dropped).
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    /// The one-part partition `(n)`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::default()
        } else {
            Self::from_sorted(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Self::from_sorted(vec![1; n as usize])
    }

    /// `(n-r, r)`, or `(n)` when `r == 0`.
    pub fn two_row(n: u32, r: u32) -> Self {
        assert!(2 * r <= n, "(n-r, r) needs 2r <= n");
        Self::from_unsorted(vec![n - r, r])
    }

    /// `(n-r, r-1, 1)` for `r >= 2`.
    pub fn hook_companion(n: u32, r: u32) -> Self {
        assert!(r >= 2 && 2 * r <= n + 1, "(n-r, r-1, 1) needs r >= 2 and n-r >= r-1");
        Self::from_unsorted(vec![n - r, r - 1, 1])
    }

    /// The hook `(n-r, 1^r)`.
    pub fn hook(n: u32, r: u32) -> Self {
        assert!(r < n);
        let mut parts = vec![n - r];
        parts.extend(std::iter::repeat_n(1, r as usize));
        Self::from_sorted(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let mut parts = vec![0u32; width];
        for &p in &self.parts {
            for c in parts.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Self::from_sorted(parts)
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Dominance order: `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool, PartitionError> {
        if self.size != other.size {
            return Err(PartitionError::SizeMismatch(self.size, other.size));
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No part value repeated `p` or more times.
    pub fn is_p_regular(&self, p: u32) -> bool {
        self.parts.chunk_by(|a, b| a == b).all(|run| (run.len() as u32) < p)
    }

    /// No part divisible by `p`; the cycle types of p′-elements.
    pub fn is_p_prime_class(&self, p: u32) -> bool {
        self.parts.iter().all(|&x| x % p != 0)
    }

    /// All parts odd and pairwise distinct: the classes that split in `A_n`.
    pub fn has_odd_distinct_parts(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1) && self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// Sign of a permutation with this cycle type.
    pub fn is_even_permutation(&self) -> bool {
        (self.size as usize - self.len()).is_multiple_of(2)
    }

    /// Order of an element of this cycle type.
    pub fn lcm_of_parts(&self) -> u64 {
        self.parts.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)))
    }

    /// Hook length of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| {
                        let arm = row - j - 1;
                        let leg = conj.part(j as usize) - i as u32 - 1;
                        arm + leg + 1
                    })
                    .collect()
            })
            .collect()
    }

    /// Degree of the irreducible character labelled by this partition.
    pub fn hook_degree(&self) -> BigUint {
        let product = self
            .hook_lengths()
            .iter()
            .flatten()
            .fold(BigUint::one(), |acc, &h| acc * h);
        factorial(self.size) / product
    }

    /// Principal hook lengths `h_1 > h_2 > ... > h_d` of a self-conjugate partition.
    pub fn diagonal_hooks(&self) -> Result<Vec<u32>, PartitionError> {
        if !self.is_self_conjugate() {
            return Err(PartitionError::NotSelfConjugate(self.clone()));
        }
        let hooks = self.hook_lengths();
        Ok((0..self.len())
            .take_while(|&i| self.parts[i] as usize > i)
            .map(|i| hooks[i][i])
            .collect())
    }

    /// The multiplicity view of a cycle type.
    pub fn cycle_counts(&self) -> CycleCounts {
        let mut counts = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_insert(0) += 1;
        }
        CycleCounts { counts }
    }

    /// Order of the centralizer of an element of this cycle type in `S_n`.
    pub fn centralizer_order(&self) -> BigUint {
        self.cycle_counts()
            .counts
            .iter()
            .fold(BigUint::one(), |acc, (&len, &mult)| {
                acc * BigUint::from(len).pow(mult) * factorial(mult)
            })
    }

    /// Size of the `S_n` conjugacy class of this cycle type.
    pub fn class_size(&self) -> BigUint {
        factorial(self.size) / self.centralizer_order()
    }

    /// The partition with one cell removed from the end of row `i`, if the
    /// result is still a partition.
    pub fn remove_from_row(&self, i: usize) -> Option<Partition> {
        if i >= self.len() || self.part(i) <= self.part(i + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[i] -= 1;
        Some(Self::from_unsorted(parts))
    }

    /// All partitions obtained by removing one removable cell.
    pub fn remove_one_cell(&self) -> Vec<Partition> {
        (0..self.len()).filter_map(|i| self.remove_from_row(i)).collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Multiplicities of cycle lengths, `a_r` = number of `r`-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CycleCounts {
    counts: BTreeMap<u32, u32>,
}

impl CycleCounts {
    pub fn new(counts: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let counts = counts.into_iter().filter(|&(len, mult)| len > 0 && mult > 0).collect();
        CycleCounts { counts }
    }

    pub fn count(&self, len: u32) -> u32 {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    pub fn fixed_points(&self) -> u32 {
        self.count(1)
    }

    pub fn degree(&self) -> u32 {
        self.counts.iter().map(|(l, m)| l * m).sum()
    }

    pub fn cycles(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.counts.iter().map(|(&l, &m)| (l, m))
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (&len, &mult) in self.counts.iter().rev() {
            parts.extend(std::iter::repeat_n(len, mult as usize));
        }
        Partition::from_sorted(parts)
    }
}

impl From<&Partition> for CycleCounts {
    fn from(p: &Partition) -> Self {
        p.cycle_counts()
    }
}

/// All partitions of `n` in descending reverse-lexicographic order, `(n)`
/// first and `(1^n)` last.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn extend(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted(prefix.clone()));
            return;
        }
        for k in (1..=remaining.min(max)).rev() {
            prefix.push(k);
            extend(remaining - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out
}

/// p-regular partitions of `n` in canonical order.
pub fn p_regular_partitions(n: u32, p: u32) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|l| l.is_p_regular(p)).collect()
}

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Degree of `χ^{(n-r,r)}`: `C(n,r)·(n-2r+1)/(n-r+1)`.
pub fn two_row_degree(n: u32, r: u32) -> Result<BigUint, PartitionError> {
    if 2 * r > n {
        return Err(PartitionError::TwoRowOutOfRange { n, r });
    }
    Ok(binomial(n, r) * (n - 2 * r + 1) / (n - r + 1))
}

/// `f_r` = number of `r`-subsets of `{1..n}` fixed setwise by an element of
/// cycle type `c`, for `r = 0..=rmax`: the coefficients of `∏ (1 + x^i)^{a_i}`.
pub fn fixed_subset_counts(c: &CycleCounts, rmax: u32) -> Vec<BigUint> {
    let len = rmax as usize + 1;
    let mut poly = vec![BigUint::zero(); len];
    poly[0] = BigUint::one();
    for (cycle, mult) in c.iter() {
        for _ in 0..mult {
            multiply_by_one_plus_power(&mut poly, cycle as usize);
        }
    }
    poly
}

/// In place `poly *= (1 + x^k)`, truncated.
pub(crate) fn multiply_by_one_plus_power(poly: &mut [BigUint], k: usize) {
    for d in (k..poly.len()).rev() {
        let lower = poly[d - k].clone();
        poly[d] += lower;
    }
}

/// Mullineux symbol column: size of the removed p-rim and number of rows met.
pub type SymbolColumn = (u32, u32);

/// Cells of the p-rim of `parts` as `(row, column)` pairs.
fn p_rim(parts: &[u32], p: u32) -> Vec<(usize, u32)> {
    let rows = parts.len();
    let next = |i: usize| if i + 1 < rows { parts[i + 1] } else { 0 };
    // rim path from the top right, row by row
    let mut path: Vec<(usize, u32)> = Vec::new();
    let mut row_start = Vec::with_capacity(rows);
    for (i, &len) in parts.iter().enumerate() {
        row_start.push(path.len());
        let lo = next(i).saturating_sub(1);
        for j in (lo..len).rev() {
            path.push((i, j));
        }
    }
    let mut rim = Vec::new();
    let mut start_row = 0usize;
    while start_row < rows {
        let begin = row_start[start_row];
        let end = (begin + p as usize).min(path.len());
        rim.extend_from_slice(&path[begin..end]);
        let last_row = path[end - 1].0;
        start_row = last_row + 1;
    }
    rim
}

/// The Mullineux symbol of a p-regular partition: repeatedly strip the p-rim.
pub fn mullineux_symbol(lambda: &Partition, p: u32) -> Result<Vec<SymbolColumn>, PartitionError> {
    if !is_prime(p) {
        return Err(PartitionError::NotPrime(p));
    }
    if !lambda.is_p_regular(p) {
        return Err(PartitionError::NotPRegular(lambda.clone(), p));
    }
    let mut parts = lambda.parts.clone();
    let mut symbol = Vec::new();
    while !parts.is_empty() {
        let rim = p_rim(&parts, p);
        symbol.push((rim.len() as u32, parts.len() as u32));
        for (row, _) in rim {
            parts[row] -= 1;
        }
        parts.retain(|&x| x > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::Internal(format!(
                "removing the {p}-rim of {lambda} left a non-partition"
            )));
        }
    }
    Ok(symbol)
}

/// The Mullineux involution on the p-regular partitions of one `n`.
///
/// Each partition's symbol `(A_i; R_i)` is mapped to `(A_i; A_i - R_i + ε_i)`
/// with `ε_i = 1` exactly when `p ∤ A_i`; the image partition is recovered by
/// looking the transformed symbol up among all p-regular partitions of `n`.
#[derive(Clone, Debug)]
pub struct MullineuxMap {
    n: u32,
    p: u32,
    image: HashMap<Partition, Partition>,
}

impl MullineuxMap {
    pub fn new(n: u32, p: u32) -> Result<Self, PartitionError> {
        if !is_prime(p) {
            return Err(PartitionError::NotPrime(p));
        }
        let regular = p_regular_partitions(n, p);
        let mut by_symbol = HashMap::with_capacity(regular.len());
        for lambda in &regular {
            let symbol = mullineux_symbol(lambda, p)?;
            if let Some(other) = by_symbol.insert(symbol, lambda.clone()) {
                return Err(PartitionError::Internal(format!(
                    "{lambda} and {other} share a Mullineux symbol"
                )));
            }
        }
        let mut image = HashMap::with_capacity(regular.len());
        for lambda in &regular {
            let twisted: Vec<SymbolColumn> = mullineux_symbol(lambda, p)?
                .into_iter()
                .map(|(a, r)| (a, a - r + u32::from(a % p != 0)))
                .collect();
            let target = by_symbol
                .get(&twisted)
                .ok_or_else(|| PartitionError::Internal(format!("no partition has the twisted symbol of {lambda}")))?;
            image.insert(lambda.clone(), target.clone());
        }
        Ok(MullineuxMap { n, p, image })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn apply(&self, lambda: &Partition) -> Result<Partition, PartitionError> {
        if lambda.size() != self.n {
            return Err(PartitionError::SizeMismatch(lambda.size(), self.n));
        }
        self.image
            .get(lambda)
            .cloned()
            .ok_or_else(|| PartitionError::NotPRegular(lambda.clone(), self.p))
    }

    pub fn fixed_points(&self) -> Vec<Partition> {
        let mut fixed: Vec<_> = self
            .image
            .iter()
            .filter(|(a, b)| a == b)
            .map(|(a, _)| a.clone())
            .collect();
        fixed.sort_unstable_by(|a, b| b.cmp(a));
        fixed
    }
}

/// `m(λ)` with `D^λ ⊗ sgn ≅ D^{m(λ)}`.
pub fn mullineux(lambda: &Partition, p: u32) -> Result<Partition, PartitionError> {
    if !lambda.is_p_regular(p) {
        return Err(PartitionError::NotPRegular(lambda.clone(), p));
    }
    MullineuxMap::new(lambda.size(), p)?.apply(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Independent count of partitions of `n` with parts at most `k`.
    fn count(n: u32, k: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        count(n, k - 1) + if k <= n { count(n - k, k) } else { 0 }
    }

    #[test]
    fn enumerates_partitions_of_four() {
        let got: Vec<Vec<u32>> = partitions_of(4).into_iter().map(Vec::from).collect();
        assert_eq!(
            got,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions_of(1), vec![part(&[1])]);
        assert_eq!(partitions_of(0), vec![Partition::default()]);
    }

    #[test]
    fn partition_counts_match_recursive_counter() {
        for n in 0..=20 {
            assert_eq!(partitions_of(n).len() as u64, count(n, n), "n = {n}");
        }
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn rejects_malformed_parts() {
        assert!(matches!(
            Partition::new(vec![1, 2]),
            Err(PartitionError::NotDecreasing(_))
        ));
        assert!(matches!(
            Partition::new(vec![2, 0]),
            Err(PartitionError::NonPositivePart(_))
        ));
    }

    #[test]
    fn conjugates() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[2, 2]).conjugate(), part(&[2, 2]));
        assert_eq!(Partition::row(6).conjugate(), Partition::column(6));
    }

    #[test]
    fn dominance_examples() {
        assert!(part(&[4]).dominates(&part(&[2, 2])).unwrap());
        assert!(!part(&[3, 3]).dominates(&part(&[4, 1, 1])).unwrap());
        assert!(!part(&[4, 1, 1]).dominates(&part(&[3, 3])).unwrap());
        assert!(part(&[2, 1]).dominates(&part(&[2, 1])).unwrap());
        assert!(matches!(
            part(&[2]).dominates(&part(&[2, 1])),
            Err(PartitionError::SizeMismatch(2, 3))
        ));
    }

    #[test]
    fn p_regularity() {
        assert!(!part(&[2, 2]).is_p_regular(2));
        assert!(part(&[4, 2, 1]).is_p_regular(3));
        assert!(!part(&[1, 1, 1, 1]).is_p_regular(3));
    }

    #[test]
    fn odd_distinct_parts() {
        assert!(part(&[5]).has_odd_distinct_parts());
        assert!(!part(&[3, 1, 1]).has_odd_distinct_parts());
        assert!(!part(&[2, 2, 1]).has_odd_distinct_parts());
    }

    #[test]
    fn hook_degrees() {
        assert_eq!(part(&[2, 2]).hook_degree(), BigUint::from(2u32));
        assert_eq!(Partition::row(9).hook_degree(), BigUint::one());
        assert_eq!(part(&[4, 2]).hook_lengths(), vec![vec![5, 4, 2, 1], vec![2, 1]]);
        assert_eq!(part(&[4, 2]).hook_degree(), BigUint::from(9u32));
    }

    #[test]
    fn two_row_degrees() {
        assert_eq!(two_row_degree(4, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(two_row_degree(7, 1).unwrap(), BigUint::from(6u32));
        assert_eq!(two_row_degree(8, 3).unwrap(), BigUint::from(28u32));
        assert!(two_row_degree(5, 3).is_err());
    }

    #[test]
    fn diagonal_hook_examples() {
        assert_eq!(part(&[3, 1, 1]).diagonal_hooks().unwrap(), vec![5]);
        assert_eq!(part(&[2, 2]).diagonal_hooks().unwrap(), vec![3, 1]);
        assert_eq!(part(&[1]).diagonal_hooks().unwrap(), vec![1]);
        assert!(part(&[3, 1]).diagonal_hooks().is_err());
    }

    #[test]
    fn mullineux_examples() {
        assert_eq!(mullineux(&part(&[4, 2, 1]), 3).unwrap(), part(&[4, 2, 1]));
        assert_eq!(mullineux(&part(&[3, 2]), 7).unwrap(), part(&[2, 2, 1]));
        for lambda in p_regular_partitions(7, 2) {
            assert_eq!(mullineux(&lambda, 2).unwrap(), lambda);
        }
        assert!(matches!(
            mullineux(&part(&[1, 1, 1]), 3),
            Err(PartitionError::NotPRegular(..))
        ));
        assert!(matches!(mullineux(&part(&[2]), 4), Err(PartitionError::NotPrime(4))));
    }

    #[test]
    fn mullineux_symbol_of_421_at_three() {
        assert_eq!(mullineux_symbol(&part(&[4, 2, 1]), 3).unwrap(), vec![(6, 3), (1, 1)]);
    }

    #[test]
    fn fixed_subsets() {
        let double_transposition = part(&[2, 2]).cycle_counts();
        assert_eq!(fixed_subset_counts(&double_transposition, 2)[2], BigUint::from(2u32));
        let identity = Partition::column(7).cycle_counts();
        for (r, f) in fixed_subset_counts(&identity, 7).into_iter().enumerate() {
            assert_eq!(f, binomial(7, r as u32));
        }
        let long = Partition::row(6).cycle_counts();
        let f = fixed_subset_counts(&long, 6);
        assert!(f[1..6].iter().all(Zero::is_zero));
    }

    #[test]
    fn class_sizes() {
        assert_eq!(part(&[2, 2]).class_size(), BigUint::from(3u32));
        assert_eq!(Partition::column(6).class_size(), BigUint::one());
        assert_eq!(Partition::row(6).class_size(), factorial(5));
    }

    #[test]
    fn cycle_counts_round_trip() {
        for lambda in partitions_of(9) {
            assert_eq!(lambda.cycle_counts().to_partition(), lambda);
            assert_eq!(lambda.cycle_counts().degree(), 9);
        }
    }
}
