//! Exact coefficients: rationals, or Laurent polynomials in a formal
//! invertible variable `q` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring element in canonical form.
///
/// A `LaurentQ` value always has a nonzero coefficient at some nonzero
/// exponent; anything supported only at `q^0` collapses to `Rational`.
/// This makes derived structural equality coincide with ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    LaurentQ(BTreeMap<i64, BigRational>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// The formal variable `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    /// `λ·q^e`.
    pub fn monomial(coeff: BigRational, e: i64) -> Self {
        let mut m = BTreeMap::new();
        m.insert(e, coeff);
        Self::from_coeffs(m)
    }

    /// Builds the canonical form from an exponent → coefficient map.
    pub fn from_coeffs(mut coeffs: BTreeMap<i64, BigRational>) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        if coeffs.keys().all(|&e| e == 0) {
            Scalar::Rational(coeffs.remove(&0).unwrap_or_else(BigRational::zero))
        } else {
            Scalar::LaurentQ(coeffs)
        }
    }

    /// Exponent → coefficient view (the zero scalar has empty support).
    pub fn coeffs(&self) -> BTreeMap<i64, BigRational> {
        match self {
            Scalar::Rational(r) if r.is_zero() => BTreeMap::new(),
            Scalar::Rational(r) => BTreeMap::from([(0, r.clone())]),
            Scalar::LaurentQ(m) => m.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::LaurentQ(_) => None,
        }
    }

    /// Number of nonzero q-monomials.
    pub fn support_len(&self) -> usize {
        match self {
            Scalar::Rational(r) if r.is_zero() => 0,
            Scalar::Rational(_) => 1,
            Scalar::LaurentQ(m) => m.len(),
        }
    }

    /// Returns `(λ, e)` when the scalar is a single nonzero term `λ·q^e`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        match self {
            Scalar::Rational(r) if r.is_zero() => None,
            Scalar::Rational(r) => Some((r.clone(), 0)),
            Scalar::LaurentQ(m) if m.len() == 1 => {
                let (e, c) = m.iter().next().unwrap();
                Some((c.clone(), *e))
            }
            Scalar::LaurentQ(_) => None,
        }
    }

    /// Inverse of a unit: a nonzero rational or a monomial `λ·q^m`.
    pub fn unit_inverse(&self) -> Result<Scalar> {
        let (c, e) = self.as_monomial().ok_or_else(|| Error::InverseOfNonUnit(self.to_string()))?;
        Ok(Scalar::monomial(c.recip(), -e))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.unit_inverse()? } else { self.clone() };
        let mut acc = Scalar::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Substitutes a rational value for `q`.
    pub fn eval_q(&self, q: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in self.coeffs() {
            if q.is_zero() && e < 0 {
                return Err(Error::InverseOfNonUnit("0".into()));
            }
            acc += c * pow_rational(q, e);
        }
        Ok(acc)
    }

    pub(crate) fn needs_parens(&self) -> bool {
        self.support_len() > 1
    }
}

fn pow_rational(q: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= q;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => {
                let mut m = self.coeffs();
                for (e, c) in rhs.coeffs() {
                    *m.entry(e).or_insert_with(BigRational::zero) += c;
                }
                Scalar::from_coeffs(m)
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => {
                let mut m: BTreeMap<i64, BigRational> = BTreeMap::new();
                let (lhs, rhs) = (self.coeffs(), rhs.coeffs());
                for (e1, c1) in &lhs {
                    for (e2, c2) in &rhs {
                        *m.entry(e1 + e2).or_insert_with(BigRational::zero) += c1 * c2;
                    }
                }
                Scalar::from_coeffs(m)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::LaurentQ(m) => Scalar::LaurentQ(m.iter().map(|(e, c)| (*e, -c)).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Mul, mul);
forward_owned!(Sub, sub);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders in the expression grammar accepted by the CLI parser:
/// `3`, `-1/2`, `q^-2`, `3*q^2 - 1/2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let qpart = match *e {
                0 => None,
                1 => Some("q".to_string()),
                e => Some(format!("q^{e}")),
            };
            match qpart {
                None => write!(f, "{}", fmt_rational(&abs))?,
                Some(qs) if abs.is_one() => write!(f, "{qs}")?,
                Some(qs) => write!(f, "{}*{qs}", fmt_rational(&abs))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(terms: &[(i64, i64)]) -> Scalar {
        Scalar::from_coeffs(terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))).collect())
    }

    #[test]
    fn difference_of_squares() {
        let q = Scalar::q();
        let a = &q + &Scalar::one();
        let b = &q - &Scalar::one();
        assert_eq!(&a * &b, lq(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn monomial_inverse() {
        let x = Scalar::monomial(BigRational::from_integer(3.into()), 2);
        let inv = x.unit_inverse().unwrap();
        assert_eq!(inv, Scalar::monomial(BigRational::new(1.into(), 3.into()), -2));
        assert!((&inv * &x).is_one());
    }

    #[test]
    fn non_units_rejected() {
        assert!(matches!(Scalar::zero().unit_inverse(), Err(Error::InverseOfNonUnit(_))));
        let s = &Scalar::q() + &Scalar::one();
        assert!(matches!(s.unit_inverse(), Err(Error::InverseOfNonUnit(_))));
    }

    #[test]
    fn canonical_collapse() {
        let s = &Scalar::q() - &Scalar::q();
        assert_eq!(s, Scalar::zero());
        let t = &Scalar::q_pow(2) * &Scalar::q_pow(-2);
        assert_eq!(t, Scalar::one());
        assert!(matches!(t, Scalar::Rational(_)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::q_pow(-2).to_string(), "q^-2");
        assert_eq!(Scalar::frac(-1, 2).to_string(), "-1/2");
        assert_eq!(lq(&[(0, 1), (2, -1)]).to_string(), "1 - q^2");
        assert_eq!(lq(&[(-1, 3), (1, 1)]).to_string(), "3*q^-1 + q");
    }

    #[test]
    fn pow_and_eval() {
        let s = lq(&[(1, 1), (0, 1)]);
        let cube = s.pow(3).unwrap();
        assert_eq!(cube, lq(&[(3, 1), (2, 3), (1, 3), (0, 1)]));
        let two = BigRational::from_integer(2.into());
        assert_eq!(cube.eval_q(&two).unwrap(), BigRational::from_integer(27.into()));
    }
}
