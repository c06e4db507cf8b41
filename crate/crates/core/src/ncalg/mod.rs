//! Associative unital algebras over the scalar ring: a rewriting engine for
//! finite presentations, the quantum Euclidean group, and finite-dimensional
//! algebras given by tables.

mod eq2;
mod finite;
mod rewrite;

pub use eq2::{Eq2Algebra, Gen};
pub use finite::{elem, elem_of, FiniteGroup, GroupAlgebra, TableAlgebra};
pub use rewrite::{Presentation, Rule, Strategy, DEFAULT_STEP_BOUND};

use crate::error::Result;
use crate::kernel::tensor::apply_at;
use crate::kernel::{BasisIndex, SampleSpec, Sampler, Scalar, Vect};

pub trait Algebra: Send + Sync {
    fn name(&self) -> String;

    fn one(&self) -> Vect;

    fn mul_basis(&self, a: &BasisIndex, b: &BasisIndex) -> Result<Vect>;

    /// Generators whose ordered product is exactly `a` (empty for the unit).
    /// Maps extended multiplicatively are evaluated through this list.
    fn factor(&self, a: &BasisIndex) -> Result<Vec<BasisIndex>>;

    /// Inverse of `a` when it is recognized as a unit.
    fn recognize_unit(&self, _a: &Vect) -> Option<Vect> {
        None
    }

    fn finite_basis(&self) -> Option<Vec<BasisIndex>> {
        None
    }

    fn sample_basis(&self, s: &mut Sampler, spec: &SampleSpec) -> BasisIndex;

    fn mul(&self, a: &Vect, b: &Vect) -> Result<Vect> {
        let mut out = Vect::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&(x * y), &self.mul_basis(i, j)?);
            }
        }
        Ok(out)
    }

    fn mul_all(&self, xs: &[&Vect]) -> Result<Vect> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    fn pow(&self, a: &Vect, n: u32) -> Result<Vect> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Random element: a short combination of sampled basis vectors.
    fn sample(&self, s: &mut Sampler, spec: &SampleSpec) -> Vect {
        let n = s.support(spec);
        let mut v = Vect::zero();
        for _ in 0..n {
            let c = s.coeff();
            v.add_term(c, self.sample_basis(s, spec));
        }
        if v.is_zero() {
            self.one()
        } else {
            v
        }
    }
}

/// Multiplies legs `pos..pos+count` of every term of `v` together.
pub fn mul_legs(alg: &dyn Algebra, v: &Vect, pos: usize, count: usize) -> Result<Vect> {
    apply_at(v, pos, count, |l| {
        let mut acc = alg.one();
        for x in l {
            acc = alg.mul(&acc, &Vect::basis(x.clone()))?;
        }
        Ok(acc)
    })
}

/// `λ·1`.
pub fn scalar_elem(alg: &dyn Algebra, c: Scalar) -> Vect {
    alg.one().scale(&c)
}

/// Splits a vector of `P⊗V` by the right leg into its left coefficients.
pub fn left_coefficients(v: &Vect) -> Vec<(BasisIndex, Vect)> {
    v.split_right().into_iter().collect()
}
