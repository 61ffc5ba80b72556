//! Exact Gaussian elimination over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, rest) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in rest.iter_mut().zip(top) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<BigInt>]) -> usize {
    let mut q = to_rational(m);
    echelon(&mut q).len()
}

/// Coefficients `c` with `Σ_i c_i · basis[i] = target`, if a solution exists.
/// The rows of `basis` must be linearly independent.
pub fn solve_in_row_basis(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    // augmented system: column i of the transpose is basis row i
    let width = target.len();
    let mut m: Vec<Vec<BigRational>> = (0..width)
        .map(|j| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(b[j].clone())).collect();
            row.push(BigRational::from_integer(target[j].clone()));
            row
        })
        .collect();
    let pivots = echelon(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    if pivots.len() != k {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&ints(&[&[1, 1], &[2, -1]])), 2);
        assert_eq!(rank(&ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&ints(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn solves_for_row_coefficients() {
        let basis = ints(&[&[1, 1], &[2, -1]]);
        let target: Vec<BigInt> = [4, 1].iter().map(|&x| BigInt::from(x)).collect();
        let c = solve_in_row_basis(&basis, &target).unwrap();
        assert_eq!(c, vec![BigRational::from_integer(2.into()), BigRational::one()]);
        let dep = ints(&[&[1, 1], &[2, 2]]);
        assert!(solve_in_row_basis(&dep, &target).is_none());
    }
}
