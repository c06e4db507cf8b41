use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::basis::BasisIndex;
use super::vect::Vect;
use crate::error::{Error, Result};

type Rule = dyn Fn(&BasisIndex) -> Result<Vect> + Send + Sync;

/// A linear map given by its values on basis vectors.
///
/// Images are memoized. The cache is shared between clones and tolerates
/// concurrent readers and writers; racing writers insert identical values.
#[derive(Clone)]
pub struct LinMap {
    name: Arc<str>,
    rule: Arc<Rule>,
    cache: Arc<RwLock<HashMap<BasisIndex, Vect>>>,
}

impl LinMap {
    pub fn new(name: impl Into<String>, rule: impl Fn(&BasisIndex) -> Result<Vect> + Send + Sync + 'static) -> Self {
        let name: String = name.into();
        LinMap { name: name.into(), rule: Arc::new(rule), cache: Arc::new(RwLock::new(HashMap::new())) }
    }

    pub fn identity() -> Self {
        LinMap::new("id", |i| Ok(Vect::basis(i.clone())))
    }

    /// A map defined on a finite set of basis vectors; anything else is
    /// rejected with `UndefinedOnBasis`.
    pub fn from_table(name: impl Into<String>, table: HashMap<BasisIndex, Vect>) -> Self {
        let name: String = name.into();
        let n2 = name.clone();
        LinMap::new(name, move |i| {
            table.get(i).cloned().ok_or_else(|| Error::UndefinedOnBasis { map: n2.clone(), index: i.clone() })
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply_basis(&self, i: &BasisIndex) -> Result<Vect> {
        if let Some(v) = self.cache.read().expect("cache poisoned").get(i) {
            return Ok(v.clone());
        }
        let v = (self.rule)(i)?;
        self.cache.write().expect("cache poisoned").insert(i.clone(), v.clone());
        Ok(v)
    }

    /// Evaluates the rule without touching the cache.
    pub fn apply_basis_uncached(&self, i: &BasisIndex) -> Result<Vect> {
        (self.rule)(i)
    }

    pub fn apply(&self, v: &Vect) -> Result<Vect> {
        let mut out = Vect::zero();
        for (i, c) in v.iter() {
            out.add_scaled(c, &self.apply_basis(i)?);
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        let (f, g) = (self.clone(), other.clone());
        LinMap::new(format!("{}∘{}", self.name, other.name), move |i| f.apply(&g.apply_basis(i)?))
    }

    /// Applies the rule to `Pair(a, b)`.
    pub fn apply2(&self, a: &BasisIndex, b: &BasisIndex) -> Result<Vect> {
        self.apply_basis(&BasisIndex::pair(a.clone(), b.clone()))
    }

    /// Bilinear evaluation on a pair of vectors.
    pub fn apply_pair(&self, a: &Vect, b: &Vect) -> Result<Vect> {
        self.apply(&a.tensor(b))
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap({})", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Scalar;
    use BasisIndex::GroupLike as G;

    fn shift() -> LinMap {
        LinMap::new("shift", |i| match i {
            G(p) => Ok(Vect::term(Scalar::int(*p), G(p + 1))),
            other => Err(Error::UndefinedOnBasis { map: "shift".into(), index: other.clone() }),
        })
    }

    #[test]
    fn identity_and_zero() {
        let v = Vect::from_terms([(Scalar::int(2), G(1)), (Scalar::q(), G(4))]);
        assert_eq!(LinMap::identity().apply(&v).unwrap(), v);
        assert!(shift().apply(&Vect::zero()).unwrap().is_zero());
    }

    #[test]
    fn linearity_oracle() {
        let f = shift();
        let v = Vect::from_terms([(Scalar::int(2), G(3)), (Scalar::one(), G(5))]);
        let separate = &f.apply_basis(&G(3)).unwrap().scale(&Scalar::int(2)) + &f.apply_basis(&G(5)).unwrap();
        assert_eq!(f.apply(&v).unwrap(), separate);
    }

    #[test]
    fn cache_is_transparent() {
        let f = shift();
        for p in -3..3 {
            let a = f.apply_basis(&G(p)).unwrap();
            let b = f.apply_basis(&G(p)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, f.apply_basis_uncached(&G(p)).unwrap());
        }
    }

    #[test]
    fn undefined_index_is_reported() {
        let err = shift().apply(&Vect::basis(BasisIndex::Unit)).unwrap_err();
        assert!(matches!(err, Error::UndefinedOnBasis { .. }));
    }

    #[test]
    fn composition_is_associative() {
        let f = shift();
        let g = LinMap::new("dbl", |i| Ok(Vect::term(Scalar::int(2), i.clone())));
        let h = LinMap::new("neg", |i| match i {
            G(p) => Ok(Vect::basis(G(-p))),
            _ => Ok(Vect::zero()),
        });
        let v = Vect::from_terms([(Scalar::int(3), G(2)), (Scalar::int(-1), G(-4))]);
        let l = f.compose(&g).compose(&h).apply(&v).unwrap();
        let r = f.compose(&g.compose(&h)).apply(&v).unwrap();
        assert_eq!(l, r);
        assert_eq!(LinMap::identity().compose(&f).apply(&v).unwrap(), f.apply(&v).unwrap());
    }
}
