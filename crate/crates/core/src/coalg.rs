//! Coalgebras given by `Δ` and `ε` on a basis, Sweedler iteration, and the
//! convolution product of maps from a coalgebra into an algebra.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::tensor::{apply_at, contract_at, legs};
use crate::kernel::{BasisIndex, Check, CheckReport, LinMap, SampleSpec, Sampler, Scalar, Vect};
use crate::ncalg::Algebra;

pub trait Coalgebra: Send + Sync {
    fn name(&self) -> String;

    fn delta_basis(&self, c: &BasisIndex) -> Result<Vect>;

    fn counit_basis(&self, c: &BasisIndex) -> Result<Scalar>;

    fn finite_basis(&self) -> Option<Vec<BasisIndex>> {
        None
    }

    fn sample_basis(&self, s: &mut Sampler, spec: &SampleSpec) -> BasisIndex;

    /// Basis vectors a check should cover: the whole basis when finite,
    /// otherwise the configured window.
    fn window(&self, spec: &SampleSpec) -> Vec<BasisIndex>;

    fn delta(&self, v: &Vect) -> Result<Vect> {
        let mut out = Vect::zero();
        for (i, c) in v.iter() {
            out.add_scaled(c, &self.delta_basis(i)?);
        }
        Ok(out)
    }

    fn counit(&self, v: &Vect) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (i, c) in v.iter() {
            acc += &(c * &self.counit_basis(i)?);
        }
        Ok(acc)
    }

    fn sample(&self, s: &mut Sampler, spec: &SampleSpec) -> Vect {
        let n = s.support(spec);
        let mut v = Vect::zero();
        for _ in 0..n {
            let c = s.coeff();
            v.add_term(c, self.sample_basis(s, spec));
        }
        if v.is_zero() {
            Vect::basis(self.sample_basis(s, spec))
        } else {
            v
        }
    }
}

/// Applies `Δ` to leg `pos` of every term.
pub fn delta_at(c: &dyn Coalgebra, v: &Vect, pos: usize) -> Result<Vect> {
    apply_at(v, pos, 1, |l| c.delta_basis(&l[0]))
}

/// Applies `ε` to leg `pos`, contracting it.
pub fn counit_at(c: &dyn Coalgebra, v: &Vect, pos: usize) -> Result<Vect> {
    contract_at(v, pos, |i| c.counit_basis(i))
}

/// `c₍₁₎⊗…⊗c₍ₙ₎`, obtained by splitting the last leg repeatedly.
pub fn sweedler_iterate(c: &dyn Coalgebra, v: &Vect, n: usize) -> Result<Vect> {
    assert!(n >= 1, "Sweedler iteration needs n ≥ 1");
    let mut out = v.clone();
    for k in 1..n {
        out = delta_at(c, &out, k - 1)?;
    }
    Ok(out)
}

/// Same legs, obtained by splitting the first leg repeatedly.
pub fn sweedler_iterate_left(c: &dyn Coalgebra, v: &Vect, n: usize) -> Result<Vect> {
    assert!(n >= 1, "Sweedler iteration needs n ≥ 1");
    let mut out = v.clone();
    for _ in 1..n {
        out = delta_at(c, &out, 0)?;
    }
    Ok(out)
}

/// Coassociativity and both counit laws on every basis vector of the window.
pub fn check_coalgebra(c: &dyn Coalgebra, spec: &SampleSpec) -> Vec<CheckReport> {
    let mut coassoc = Check::new("coalgebra.coassociativity");
    let mut counit = Check::new("coalgebra.counit");
    for b in c.window(spec) {
        let v = Vect::basis(b.clone());
        let sides = (|| {
            let d = c.delta(&v)?;
            Ok((delta_at(c, &d, 0)?, delta_at(c, &d, 1)?))
        })();
        coassoc.eq_res(&b, sides);
        let left = (|| Ok((counit_at(c, &c.delta(&v)?, 0)?, v.clone())))();
        counit.eq_res(format!("(ε⊗id)Δ {b}"), left);
        let right = (|| Ok((counit_at(c, &c.delta(&v)?, 1)?, v.clone())))();
        counit.eq_res(format!("(id⊗ε)Δ {b}"), right);
    }
    vec![coassoc.finish(), counit.finish()]
}

/// Coalgebra spanned by group-like elements `c_p`, indexed by all of ℤ or by
/// a finite set.
#[derive(Clone, Debug)]
pub struct GroupLikeCoalgebra {
    name: String,
    finite: Option<Vec<i64>>,
}

impl GroupLikeCoalgebra {
    pub fn integers() -> Self {
        GroupLikeCoalgebra { name: "kZ".into(), finite: None }
    }

    pub fn finite(name: impl Into<String>, n: usize) -> Self {
        GroupLikeCoalgebra { name: name.into(), finite: Some((0..n as i64).collect()) }
    }

    fn index(&self, c: &BasisIndex) -> Result<i64> {
        match (c.as_group_like(), &self.finite) {
            (Some(p), None) => Ok(p),
            (Some(p), Some(set)) if set.contains(&p) => Ok(p),
            _ => Err(Error::UndefinedOnBasis { map: format!("{} coproduct", self.name), index: c.clone() }),
        }
    }
}

impl Coalgebra for GroupLikeCoalgebra {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn delta_basis(&self, c: &BasisIndex) -> Result<Vect> {
        self.index(c)?;
        Ok(Vect::basis(BasisIndex::pair(c.clone(), c.clone())))
    }

    fn counit_basis(&self, c: &BasisIndex) -> Result<Scalar> {
        self.index(c)?;
        Ok(Scalar::one())
    }

    fn finite_basis(&self) -> Option<Vec<BasisIndex>> {
        self.finite.as_ref().map(|s| s.iter().map(|p| BasisIndex::GroupLike(*p)).collect())
    }

    fn sample_basis(&self, s: &mut Sampler, spec: &SampleSpec) -> BasisIndex {
        match &self.finite {
            Some(set) => BasisIndex::GroupLike(*s.choose(set)),
            None => BasisIndex::GroupLike(s.p(spec)),
        }
    }

    fn window(&self, spec: &SampleSpec) -> Vec<BasisIndex> {
        self.finite_basis().unwrap_or_else(|| spec.window().map(BasisIndex::GroupLike).collect())
    }
}

/// Finite-dimensional coalgebra with `Δ` and `ε` given as linear maps.
#[derive(Clone, Debug)]
pub struct MapCoalgebra {
    name: String,
    basis: Vec<BasisIndex>,
    delta: LinMap,
    counit: LinMap,
}

impl MapCoalgebra {
    /// `counit` returns `λ·Unit`.
    pub fn new(name: impl Into<String>, basis: Vec<BasisIndex>, delta: LinMap, counit: LinMap) -> Self {
        MapCoalgebra { name: name.into(), basis, delta, counit }
    }
}

impl Coalgebra for MapCoalgebra {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn delta_basis(&self, c: &BasisIndex) -> Result<Vect> {
        self.delta.apply_basis(c)
    }

    fn counit_basis(&self, c: &BasisIndex) -> Result<Scalar> {
        Ok(self.counit.apply_basis(c)?.as_scalar())
    }

    fn finite_basis(&self) -> Option<Vec<BasisIndex>> {
        Some(self.basis.clone())
    }

    fn sample_basis(&self, s: &mut Sampler, _spec: &SampleSpec) -> BasisIndex {
        s.choose(&self.basis).clone()
    }

    fn window(&self, _spec: &SampleSpec) -> Vec<BasisIndex> {
        self.basis.clone()
    }
}

/// `(f*g)(c) = f(c₍₁₎)g(c₍₂₎)`.
pub fn convolve(c: Arc<dyn Coalgebra>, p: Arc<dyn Algebra>, f: &LinMap, g: &LinMap) -> LinMap {
    let (f, g) = (f.clone(), g.clone());
    LinMap::new(format!("{}*{}", f.name(), g.name()), move |i| {
        let d = c.delta_basis(i)?;
        let mut out = Vect::zero();
        for (j, k) in d.iter() {
            let l = legs(j);
            let v = p.mul(&f.apply_basis(&l[0])?, &g.apply_basis(&l[1])?)?;
            out.add_scaled(k, &v);
        }
        Ok(out)
    })
}

/// `c ↦ ε(c)·1`, the unit of the convolution algebra.
pub fn unit_counit(c: Arc<dyn Coalgebra>, p: Arc<dyn Algebra>) -> LinMap {
    LinMap::new("ηε", move |i| Ok(p.one().scale(&c.counit_basis(i)?)))
}

/// Pointwise inverse on a group-like basis: `c ↦ f(c)⁻¹`.
pub fn conv_inverse_grouplike(c: Arc<dyn Coalgebra>, p: Arc<dyn Algebra>, f: &LinMap) -> LinMap {
    let f = f.clone();
    LinMap::new(format!("{}⁻¹", f.name()), move |i| {
        let d = c.delta_basis(i)?;
        if d != Vect::basis(BasisIndex::pair(i.clone(), i.clone())) || !c.counit_basis(i)?.is_one() {
            return Err(Error::NotInvertibleAt(i.clone()));
        }
        p.recognize_unit(&f.apply_basis(i)?).ok_or_else(|| Error::NotInvertibleAt(i.clone()))
    })
}

/// Checks `f*g = g*f = ηε` on the window.
pub fn check_conv_inverse(
    id: &str,
    c: Arc<dyn Coalgebra>,
    p: Arc<dyn Algebra>,
    f: &LinMap,
    g: &LinMap,
    spec: &SampleSpec,
) -> CheckReport {
    let fg = convolve(c.clone(), p.clone(), f, g);
    let gf = convolve(c.clone(), p.clone(), g, f);
    let u = unit_counit(c.clone(), p);
    let mut chk = Check::new(id);
    for b in c.window(spec) {
        chk.eq_res(format!("f*g at {b}"), (|| Ok((fg.apply_basis(&b)?, u.apply_basis(&b)?)))());
        chk.eq_res(format!("g*f at {b}"), (|| Ok((gf.apply_basis(&b)?, u.apply_basis(&b)?)))());
    }
    chk.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Status;
    use crate::ncalg::Eq2Algebra;
    use std::collections::HashMap;
    use BasisIndex::GroupLike as G;

    fn x() -> BasisIndex {
        G(100)
    }
    fn y() -> BasisIndex {
        G(101)
    }

    fn matrix_like() -> MapCoalgebra {
        let mut d = HashMap::new();
        d.insert(x(), Vect::basis(BasisIndex::pair(x(), x())));
        d.insert(
            y(),
            Vect::from_terms([
                (Scalar::one(), BasisIndex::pair(x(), y())),
                (Scalar::one(), BasisIndex::pair(y(), x())),
            ]),
        );
        let mut e = HashMap::new();
        e.insert(x(), Vect::scalar(Scalar::one()));
        e.insert(y(), Vect::zero());
        MapCoalgebra::new("xy", vec![x(), y()], LinMap::from_table("Δ", d), LinMap::from_table("ε", e))
    }

    #[test]
    fn group_like_iteration() {
        let c = GroupLikeCoalgebra::integers();
        let v = Vect::basis(G(3));
        assert_eq!(sweedler_iterate(&c, &v, 1).unwrap(), v);
        assert_eq!(sweedler_iterate(&c, &v, 3).unwrap(), Vect::basis(BasisIndex::tensor([G(3), G(3), G(3)])));
    }

    #[test]
    fn iteration_order_irrelevant() {
        let c = matrix_like();
        let v = &Vect::basis(y()).scale(&Scalar::int(2)) + &Vect::basis(x());
        assert_eq!(sweedler_iterate(&c, &v, 3).unwrap(), sweedler_iterate_left(&c, &v, 3).unwrap());
    }

    #[test]
    fn coalgebra_checks() {
        let spec = SampleSpec::default();
        assert!(check_coalgebra(&GroupLikeCoalgebra::integers(), &spec).iter().all(|r| r.passed()));
        assert!(check_coalgebra(&matrix_like(), &spec).iter().all(|r| r.passed()));

        // Δc_0 := c_0⊗c_1
        let bad = MapCoalgebra::new(
            "bad",
            vec![G(0), G(1)],
            LinMap::new("Δ", |i| {
                Ok(if *i == G(0) {
                    Vect::basis(BasisIndex::pair(G(0), G(1)))
                } else {
                    Vect::basis(BasisIndex::pair(i.clone(), i.clone()))
                })
            }),
            LinMap::new("ε", |_| Ok(Vect::scalar(Scalar::one()))),
        );
        // still coassociative, but the left counit law breaks at c_0
        let reports = check_coalgebra(&bad, &spec);
        assert_eq!(reports[0].status, Status::Pass);
        let r = &reports[1];
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.as_ref().unwrap().input, "(ε⊗id)Δ c_0");
    }

    #[test]
    fn convolution_on_group_likes() {
        let c: Arc<dyn Coalgebra> = Arc::new(GroupLikeCoalgebra::integers());
        let p: Arc<dyn Algebra> = Arc::new(Eq2Algebra::new(Scalar::q()).unwrap());
        let f = LinMap::new("f", |i| Ok(Eq2Algebra::v_pow(i.as_group_like().unwrap())));
        let g = LinMap::new("g", |i| Ok(Eq2Algebra::mono(0, i.as_group_like().unwrap().unsigned_abs() as u32, 0)));
        let fg = convolve(c.clone(), p.clone(), &f, &g);
        for k in -3..3 {
            let expect = p.mul(&f.apply_basis(&G(k)).unwrap(), &g.apply_basis(&G(k)).unwrap()).unwrap();
            assert_eq!(fg.apply_basis(&G(k)).unwrap(), expect);
        }
        let u = unit_counit(c.clone(), p.clone());
        let fu = convolve(c.clone(), p.clone(), &f, &u);
        assert_eq!(fu.apply_basis(&G(2)).unwrap(), f.apply_basis(&G(2)).unwrap());
    }

    #[test]
    fn grouplike_inverse() {
        let c: Arc<dyn Coalgebra> = Arc::new(GroupLikeCoalgebra::integers());
        let p: Arc<dyn Algebra> = Arc::new(Eq2Algebra::new(Scalar::q()).unwrap());
        let two_q = &Scalar::int(2) * &Scalar::q();
        let f = LinMap::new("f", move |_| Ok(Vect::term(two_q.clone(), BasisIndex::mono(2, 0, 0))));
        let inv = conv_inverse_grouplike(c.clone(), p.clone(), &f);
        let half = Scalar::monomial(num_rational::BigRational::new(1.into(), 2.into()), -1);
        assert_eq!(inv.apply_basis(&G(1)).unwrap(), Vect::term(half, BasisIndex::mono(-2, 0, 0)));
        assert!(check_conv_inverse("inv", c.clone(), p.clone(), &f, &inv, &SampleSpec::default()).passed());

        let z = LinMap::new("z", |_| Ok(&Eq2Algebra::v_pow(1) + &Eq2Algebra::mono(0, 1, 0)));
        let zi = conv_inverse_grouplike(c, p, &z);
        assert!(matches!(zi.apply_basis(&G(0)), Err(Error::NotInvertibleAt(_))));
    }
}
