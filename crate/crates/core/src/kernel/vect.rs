use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::basis::BasisIndex;
use super::scalar::Scalar;

/// Finitely supported formal linear combination of basis vectors.
///
/// Zero coefficients are never stored, so derived equality is equality of
/// vectors.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Vect {
    terms: BTreeMap<BasisIndex, Scalar>,
}

impl Vect {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: BasisIndex) -> Self {
        Self::term(Scalar::one(), i)
    }

    pub fn term(c: Scalar, i: BasisIndex) -> Self {
        let mut v = Self::zero();
        v.add_term(c, i);
        v
    }

    /// `λ·1` in the ground field.
    pub fn scalar(c: Scalar) -> Self {
        Self::term(c, BasisIndex::Unit)
    }

    pub fn from_terms<I: IntoIterator<Item = (Scalar, BasisIndex)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (c, i) in terms {
            v.add_term(c, i);
        }
        v
    }

    pub fn add_term(&mut self, c: Scalar, i: BasisIndex) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(i) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c·v`.
    pub fn add_scaled(&mut self, c: &Scalar, v: &Vect) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &v.terms {
            self.add_term(c * x, i.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: &BasisIndex) -> Scalar {
        self.terms.get(i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisIndex> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Scalar) -> Vect {
        let mut out = Vect::zero();
        out.add_scaled(c, self);
        out
    }

    /// Bilinear tensor product: `Σ λᵢμⱼ · Pair(bᵢ, cⱼ)`.
    pub fn tensor(&self, other: &Vect) -> Vect {
        let mut out = Vect::zero();
        for (i, x) in &self.terms {
            for (j, y) in &other.terms {
                out.add_term(x * y, BasisIndex::pair(i.clone(), j.clone()));
            }
        }
        out
    }

    /// Applies `f` to every basis index, keeping coefficients.
    pub fn map_basis(&self, mut f: impl FnMut(&BasisIndex) -> BasisIndex) -> Vect {
        Vect::from_terms(self.terms.iter().map(|(i, c)| (c.clone(), f(i))))
    }

    /// Rewrites every tensor index in canonical left-nested form.
    pub fn normalize_tensors(&self) -> Vect {
        self.map_basis(BasisIndex::normalize_tensor)
    }

    /// Coefficient of the ground-field basis vector; meaningful for values
    /// of counits and characters.
    pub fn as_scalar(&self) -> Scalar {
        self.coeff(&BasisIndex::Unit)
    }

    /// Groups a vector over `Pair(left, right)` indices by the right leg.
    pub fn split_right(&self) -> BTreeMap<BasisIndex, Vect> {
        let mut out: BTreeMap<BasisIndex, Vect> = BTreeMap::new();
        for (i, c) in &self.terms {
            let (l, r) = i.split().expect("split_right on a non-tensor vector");
            out.entry(r.clone()).or_default().add_term(c.clone(), l.clone());
        }
        out
    }

    /// Groups a vector over `Pair(left, right)` indices by the left leg.
    pub fn split_left(&self) -> BTreeMap<BasisIndex, Vect> {
        let mut out: BTreeMap<BasisIndex, Vect> = BTreeMap::new();
        for (i, c) in &self.terms {
            let (l, r) = i.split().expect("split_left on a non-tensor vector");
            out.entry(l.clone()).or_default().add_term(c.clone(), r.clone());
        }
        out
    }
}

impl FromIterator<(Scalar, BasisIndex)> for Vect {
    fn from_iter<T: IntoIterator<Item = (Scalar, BasisIndex)>>(iter: T) -> Self {
        Vect::from_terms(iter)
    }
}

impl<'a> Add<&'a Vect> for &'a Vect {
    type Output = Vect;
    fn add(self, rhs: &'a Vect) -> Vect {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl<'a> Sub<&'a Vect> for &'a Vect {
    type Output = Vect;
    fn sub(self, rhs: &'a Vect) -> Vect {
        let mut out = self.clone();
        out.add_scaled(&Scalar::int(-1), rhs);
        out
    }
}

impl Neg for &Vect {
    type Output = Vect;
    fn neg(self) -> Vect {
        self.scale(&Scalar::int(-1))
    }
}

impl std::iter::Sum for Vect {
    fn sum<I: Iterator<Item = Vect>>(iter: I) -> Vect {
        let mut out = Vect::zero();
        for v in iter {
            out.add_scaled(&Scalar::one(), &v);
        }
        out
    }
}

/// Renders `coef*basis` terms joined by `+`/`-`, in the CLI expression
/// grammar when the basis labels belong to it.
impl fmt::Display for Vect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.as_monomial() {
                Some((r, _)) if r < num_rational::BigRational::from_integer(0.into()) => (true, -c),
                _ => (false, c.clone()),
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit_basis = i.is_unit_monomial();
            let cs = if mag.needs_parens() { format!("({mag})") } else { mag.to_string() };
            if unit_basis {
                write!(f, "{cs}")?;
            } else if mag.is_one() {
                write!(f, "{i}")?;
            } else {
                write!(f, "{cs} * {i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisIndex::GroupLike as G;

    fn c(p: i64) -> Vect {
        Vect::basis(G(p))
    }

    #[test]
    fn tensor_with_zero() {
        assert!(Vect::zero().tensor(&c(1)).is_zero());
    }

    #[test]
    fn tensor_of_basis_vectors() {
        let t = c(1).tensor(&c(2));
        assert_eq!(t, Vect::basis(BasisIndex::pair(G(1), G(2))));
    }

    #[test]
    fn tensor_distributes() {
        // (2c0 + 3c1) ⊗ (c0 - c1), expanded by hand.
        let v = &c(0).scale(&Scalar::int(2)) + &c(1).scale(&Scalar::int(3));
        let w = &c(0) - &c(1);
        let expected = Vect::from_terms([
            (Scalar::int(2), BasisIndex::pair(G(0), G(0))),
            (Scalar::int(-2), BasisIndex::pair(G(0), G(1))),
            (Scalar::int(3), BasisIndex::pair(G(1), G(0))),
            (Scalar::int(-3), BasisIndex::pair(G(1), G(1))),
        ]);
        assert_eq!(v.tensor(&w), expected);
        assert!(v.tensor(&w).len() <= v.len() * w.len());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let v = &c(3) - &c(3);
        assert!(v.is_zero());
        assert_eq!(v.len(), 0);
    }

    #[test]
    fn display() {
        let v = Vect::from_terms([
            (Scalar::one() - Scalar::q_pow(2), BasisIndex::pair(BasisIndex::mono(0, 0, 0), G(2))),
            (Scalar::q_pow(2), BasisIndex::pair(BasisIndex::mono(1, 0, 0), G(1))),
        ]);
        assert_eq!(v.to_string(), "(1 - q^2) * 1 # c_2 + q^2 * v # c_1");
    }
}
