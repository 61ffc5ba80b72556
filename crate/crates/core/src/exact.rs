//! Exact character values: integers and quadratic irrationals `(a + b√D)/2`.
//!
//! [`Quadratic`] is generic over the integer type so the same arithmetic runs
//! on machine integers and on arbitrary-precision ones; the crate root fixes
//! the arbitrary-precision instance as [`crate::AlgebraicValue`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{ArithmeticError, TableError};
use crate::AlgebraicValue;

/// Integer types usable as coefficients of a [`Quadratic`].
pub trait ExactInt: Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive {}

impl<T> ExactInt for T where T: Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + FromPrimitive + ToPrimitive
{}

/// An algebraic integer in `Z` or in the ring of integers of one quadratic field.
///
/// `Surd { a, b, d }` stands for `(a + b√d)/2` with `b ≠ 0`, `d` squarefree and
/// `d ∉ {0, 1}`; when `d ≢ 1 (mod 4)` both `a` and `b` are even. Values are
/// kept normalized, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Quadratic<T> {
    Int(T),
    Surd { a: T, b: T, d: T },
}

fn small<T: ExactInt>(v: u32) -> T {
    T::from_u32(v).expect("small constant fits the integer type")
}

impl<T: ExactInt> Quadratic<T> {
    pub fn int(v: T) -> Self {
        Quadratic::Int(v)
    }

    pub fn zero() -> Self {
        Quadratic::Int(T::zero())
    }

    pub fn one() -> Self {
        Quadratic::Int(T::one())
    }

    /// `(a + b√d)/2`, normalized. Square factors of `d` move into `b`, and a
    /// vanishing irrational part demotes the value to an integer.
    pub fn new(a: T, b: T, d: T) -> Result<Self, ArithmeticError> {
        if d.is_zero() {
            return Err(ArithmeticError::ZeroRadicand);
        }
        let (root, d) = split_square(d);
        let b = b * root;
        let two = small::<T>(2);
        if b.is_zero() || d.is_one() {
            let num = a.clone() + if d.is_one() { b.clone() } else { T::zero() };
            if !num.is_even() {
                return Err(not_integral(&a, &b, &d));
            }
            return Ok(Quadratic::Int(num / two));
        }
        let d_mod_4 = d.mod_floor(&small(4));
        let integral = if d_mod_4.is_one() {
            (a.clone() - b.clone()).is_even()
        } else {
            a.is_even() && b.is_even()
        };
        if !integral {
            return Err(not_integral(&a, &b, &d));
        }
        Ok(Quadratic::Surd { a, b, d })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Quadratic::Int(v) if v.is_zero())
    }

    pub fn as_int(&self) -> Option<&T> {
        match self {
            Quadratic::Int(v) => Some(v),
            Quadratic::Surd { .. } => None,
        }
    }

    pub fn radicand(&self) -> Option<&T> {
        match self {
            Quadratic::Int(_) => None,
            Quadratic::Surd { d, .. } => Some(d),
        }
    }

    /// Numerator coefficients `(a, b)` of `(a + b√d)/2`.
    fn halves(&self) -> (T, T) {
        match self {
            Quadratic::Int(v) => (v.clone() * small(2), T::zero()),
            Quadratic::Surd { a, b, .. } => (a.clone(), b.clone()),
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<Option<T>, ArithmeticError> {
        match (self.radicand(), other.radicand()) {
            (Some(x), Some(y)) if x != y => Err(ArithmeticError::RadicandMismatch(x.to_string(), y.to_string())),
            (Some(x), _) | (_, Some(x)) => Ok(Some(x.clone())),
            (None, None) => Ok(None),
        }
    }

    fn from_halves(a: T, b: T, d: Option<T>) -> Result<Self, ArithmeticError> {
        match d {
            Some(d) => Self::new(a, b, d),
            None => Ok(Quadratic::Int(a / small(2))),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithmeticError> {
        if let (Quadratic::Int(x), Quadratic::Int(y)) = (self, other) {
            return Ok(Quadratic::Int(x.clone() + y.clone()));
        }
        let d = self.common_radicand(other)?;
        let (a1, b1) = self.halves();
        let (a2, b2) = other.halves();
        Self::from_halves(a1 + a2, b1 + b2, d)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithmeticError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithmeticError> {
        match (self, other) {
            (Quadratic::Int(x), Quadratic::Int(y)) => Ok(Quadratic::Int(x.clone() * y.clone())),
            (Quadratic::Int(k), v) | (v, Quadratic::Int(k)) => Ok(v.scale(k)),
            _ => {
                let d = self.common_radicand(other)?.expect("both irrational");
                let (a1, b1) = self.halves();
                let (a2, b2) = other.halves();
                // ((a1 + b1√d)(a2 + b2√d))/4 rewritten over 2
                let two = small::<T>(2);
                let a = (a1.clone() * a2.clone() + b1.clone() * b2.clone() * d.clone()) / two.clone();
                let b = (a1 * b2 + a2 * b1) / two;
                Self::new(a, b, d)
            }
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        match self {
            Quadratic::Int(v) => Quadratic::Int(v.clone() * k.clone()),
            Quadratic::Surd { a, b, d } => {
                if k.is_zero() {
                    Quadratic::zero()
                } else {
                    Quadratic::Surd {
                        a: a.clone() * k.clone(),
                        b: b.clone() * k.clone(),
                        d: d.clone(),
                    }
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-T::one()))
    }

    /// `√d ↦ -√d`.
    pub fn galois_conjugate(&self) -> Self {
        match self {
            Quadratic::Int(_) => self.clone(),
            Quadratic::Surd { a, b, d } => Quadratic::Surd {
                a: a.clone(),
                b: -b.clone(),
                d: d.clone(),
            },
        }
    }

    /// Complex conjugation: the Galois conjugate for imaginary fields.
    pub fn complex_conjugate(&self) -> Self {
        match self {
            Quadratic::Surd { d, .. } if d.is_negative() => self.galois_conjugate(),
            _ => self.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, Quadratic::Surd { d, .. } if d.is_negative())
    }

    /// Exact sign of a real value; `None` for non-real values.
    pub fn real_sign(&self) -> Option<Ordering> {
        match self {
            Quadratic::Int(v) => Some(v.cmp(&T::zero())),
            Quadratic::Surd { a, b, d } => {
                if d.is_negative() {
                    return None;
                }
                let sa = a.cmp(&T::zero());
                let sb = b.cmp(&T::zero());
                if sa != Ordering::Less && sb != Ordering::Less {
                    return Some(Ordering::Greater);
                }
                if sa != Ordering::Greater && sb != Ordering::Greater {
                    return Some(Ordering::Less);
                }
                // opposite signs: compare a² with b²d
                let lhs = a.clone() * a.clone();
                let rhs = b.clone() * b.clone() * d.clone();
                Some(match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                })
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.real_sign() == Some(Ordering::Greater)
    }

    /// `x + x̄`, always a rational integer.
    pub fn trace(&self) -> T {
        let (a, _) = self.halves();
        a
    }

    /// `x · x̄`, always a rational integer.
    pub fn norm(&self) -> T {
        match self {
            Quadratic::Int(v) => v.clone() * v.clone(),
            Quadratic::Surd { a, b, d } => (a.clone() * a.clone() - b.clone() * b.clone() * d.clone()) / small(4),
        }
    }

    /// Floating-point approximation `(re, im)`, for display only.
    pub fn approx(&self) -> (f64, f64) {
        match self {
            Quadratic::Int(v) => (v.to_f64().unwrap_or(f64::NAN), 0.0),
            Quadratic::Surd { a, b, d } => {
                let a = a.to_f64().unwrap_or(f64::NAN);
                let b = b.to_f64().unwrap_or(f64::NAN);
                let d = d.to_f64().unwrap_or(f64::NAN);
                if d < 0.0 {
                    (a / 2.0, b * (-d).sqrt() / 2.0)
                } else {
                    ((a + b * d.sqrt()) / 2.0, 0.0)
                }
            }
        }
    }
}

fn not_integral<T: ExactInt>(a: &T, b: &T, d: &T) -> ArithmeticError {
    ArithmeticError::NotAlgebraicInteger {
        a: a.to_string(),
        b: b.to_string(),
        d: d.to_string(),
    }
}

/// Writes `d = k²·d'` with `d'` squarefree and returns `(k, d')`.
fn split_square<T: ExactInt>(d: T) -> (T, T) {
    let sign = if d.is_negative() { -T::one() } else { T::one() };
    let mut rest = d.abs();
    let mut root = T::one();
    let mut k = small::<T>(2);
    while k.clone() * k.clone() <= rest {
        let sq = k.clone() * k.clone();
        while (rest.clone() % sq.clone()).is_zero() {
            rest = rest / sq.clone();
            root = root * k.clone();
        }
        k = k + T::one();
    }
    (root, rest * sign)
}

impl<T: ExactInt> From<T> for Quadratic<T> {
    fn from(v: T) -> Self {
        Quadratic::Int(v)
    }
}

impl<T: ExactInt> fmt::Display for Quadratic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quadratic::Int(v) => write!(f, "{v}"),
            Quadratic::Surd { a, b, d } => {
                let sign = if b.is_negative() { '-' } else { '+' };
                let b = b.abs();
                if b.is_one() {
                    write!(f, "({a}{sign}sqrt({d}))/2")
                } else {
                    write!(f, "({a}{sign}{b}*sqrt({d}))/2")
                }
            }
        }
    }
}

/// A sum of values from possibly different quadratic fields, kept as
/// `(a + Σ b_D √D)/2` so that mixed radicands cancel exactly.
#[derive(Clone, Debug, Default)]
pub struct QuadraticSum<T> {
    rational: T,
    surds: BTreeMap<T, T>,
}

impl<T: ExactInt + Ord> QuadraticSum<T> {
    pub fn new() -> Self {
        QuadraticSum {
            rational: T::zero(),
            surds: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, v: &Quadratic<T>) {
        match v {
            Quadratic::Int(x) => self.rational = self.rational.clone() + x.clone() * small(2),
            Quadratic::Surd { a, b, d } => {
                self.rational = self.rational.clone() + a.clone();
                let entry = self.surds.entry(d.clone()).or_insert_with(T::zero);
                *entry = entry.clone() + b.clone();
            }
        }
    }

    /// The sum as a rational number, failing if an irrational part survives.
    pub fn to_rational(&self) -> Result<Ratio<T>, ArithmeticError> {
        if let Some((d, b)) = self.surds.iter().find(|(_, b)| !b.is_zero()) {
            return Err(ArithmeticError::NotRational(format!(
                "({} + {}*sqrt({}) + ...)/2",
                self.rational, b, d
            )));
        }
        Ok(Ratio::new(self.rational.clone(), small(2)))
    }
}

/// A class function on the columns of one table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    values: Vec<AlgebraicValue>,
}

impl ClassFunction {
    pub fn new(values: Vec<AlgebraicValue>) -> Self {
        ClassFunction { values }
    }

    pub fn constant(len: usize, v: i64) -> Self {
        ClassFunction {
            values: vec![AlgebraicValue::Int(BigInt::from(v)); len],
        }
    }

    pub fn zero(len: usize) -> Self {
        Self::constant(len, 0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[AlgebraicValue] {
        &self.values
    }

    pub fn into_values(self) -> Vec<AlgebraicValue> {
        self.values
    }

    pub fn get(&self, i: usize) -> &AlgebraicValue {
        &self.values[i]
    }

    fn zip_with(
        &self,
        other: &ClassFunction,
        op: impl Fn(&AlgebraicValue, &AlgebraicValue) -> Result<AlgebraicValue, ArithmeticError>,
    ) -> Result<ClassFunction, TableError> {
        if self.len() != other.len() {
            return Err(TableError::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| op(x, y))
            .collect::<Result<_, _>>()?;
        Ok(ClassFunction { values })
    }

    /// Entrywise product: the character of the tensor product.
    pub fn pointwise_product(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.zip_with(other, |x, y| x.checked_mul(y))
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.zip_with(other, |x, y| x.checked_add(y))
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.zip_with(other, |x, y| x.checked_sub(y))
    }

    pub fn scale(&self, k: &BigInt) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v.scale(k)).collect(),
        }
    }

    pub fn galois_conjugate(&self) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v.galois_conjugate()).collect(),
        }
    }
}

impl From<Vec<AlgebraicValue>> for ClassFunction {
    fn from(values: Vec<AlgebraicValue>) -> Self {
        ClassFunction { values }
    }
}

impl FromIterator<AlgebraicValue> for ClassFunction {
    fn from_iter<I: IntoIterator<Item = AlgebraicValue>>(iter: I) -> Self {
        ClassFunction {
            values: iter.into_iter().collect(),
        }
    }
}

impl From<i64> for AlgebraicValue {
    fn from(v: i64) -> Self {
        Quadratic::Int(BigInt::from(v))
    }
}

impl From<i32> for AlgebraicValue {
    fn from(v: i32) -> Self {
        Quadratic::Int(BigInt::from(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SmallAlgebraicValue;

    fn q(a: i64, b: i64, d: i64) -> SmallAlgebraicValue {
        Quadratic::new(a, b, d).unwrap()
    }

    #[test]
    fn golden_ratio_pair() {
        let alpha = q(1, 1, 5);
        let beta = q(1, -1, 5);
        assert_eq!(alpha.checked_add(&beta).unwrap(), Quadratic::Int(1));
        assert_eq!(alpha.checked_mul(&beta).unwrap(), Quadratic::Int(-1));
        assert_eq!(alpha.galois_conjugate(), beta);
        assert_eq!(alpha.galois_conjugate().galois_conjugate(), alpha);
        assert_eq!(alpha.checked_add(&Quadratic::zero()).unwrap(), alpha);
    }

    #[test]
    fn integers_are_fixed_by_conjugation() {
        let seven: SmallAlgebraicValue = Quadratic::Int(7);
        assert_eq!(seven.galois_conjugate(), seven);
    }

    #[test]
    fn normalizes_square_factors_and_demotes() {
        // (2 + 2√12)/2 = 1 + 2√3 = (2 + 4√3)/2
        assert_eq!(q(2, 2, 12), Quadratic::Surd { a: 2, b: 4, d: 3 });
        assert_eq!(q(1, 3, 9), Quadratic::Int(5));
        assert_eq!(q(4, 0, 7), Quadratic::Int(2));
        let omega = q(-1, 1, -3);
        assert_eq!(omega.checked_mul(&omega).unwrap(), omega.galois_conjugate());
    }

    #[test]
    fn rejects_non_integers_and_mixed_fields() {
        assert!(matches!(
            Quadratic::new(1i64, 1, 3),
            Err(ArithmeticError::NotAlgebraicInteger { .. })
        ));
        assert!(matches!(
            Quadratic::new(1i64, 0, 5),
            Err(ArithmeticError::NotAlgebraicInteger { .. })
        ));
        assert!(matches!(Quadratic::new(1i64, 1, 0), Err(ArithmeticError::ZeroRadicand)));
        assert!(matches!(
            q(1, 1, 5).checked_add(&q(-1, 1, -7)),
            Err(ArithmeticError::RadicandMismatch(..))
        ));
    }

    #[test]
    fn exact_signs() {
        assert!(q(1, 1, 5).is_positive());
        assert_eq!(q(1, -1, 5).real_sign(), Some(Ordering::Less));
        assert_eq!(q(-1, 1, -7).real_sign(), None);
        // (6 - 2√5)/2 = 3 - √5 > 0
        assert!(q(6, -2, 5).is_positive());
    }

    #[test]
    fn trace_and_norm() {
        let alpha = q(1, 1, 5);
        assert_eq!(alpha.trace(), 1);
        assert_eq!(alpha.norm(), -1);
        assert_eq!(q(-1, 1, -7).norm(), 2);
    }

    #[test]
    fn mixed_radicand_sums_cancel() {
        let mut sum = QuadraticSum::new();
        sum.add(&q(1, 1, 5));
        sum.add(&q(-1, 1, -7));
        sum.add(&q(1, -1, 5));
        sum.add(&q(-1, -1, -7));
        sum.add(&Quadratic::Int(3));
        assert_eq!(sum.to_rational().unwrap(), Ratio::from_integer(3));
        sum.add(&q(1, 1, 5));
        assert!(sum.to_rational().is_err());
    }

    #[test]
    fn class_function_products() {
        let u = ClassFunction::new(vec![3.into(), (-1).into(), 1.into(), (-1).into(), 0.into()]);
        let ones = ClassFunction::constant(5, 1);
        assert_eq!(u.pointwise_product(&ones).unwrap(), u);
        let sq = u.pointwise_product(&u).unwrap();
        let expect: ClassFunction = [9, 1, 1, 1, 0].into_iter().map(AlgebraicValue::from).collect();
        assert_eq!(sq, expect);
        assert!(u.pointwise_product(&ClassFunction::zero(4)).is_err());
    }
}
