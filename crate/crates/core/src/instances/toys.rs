//! Small finite instances: a bialgebra entwining for the primary side and
//! group toys for the dual side.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cleft::Trivialization;
use crate::coalg::{Coalgebra, GroupLikeCoalgebra};
use crate::crossprod::{trivial_sigma, CrossedProductData};
use crate::dualcross::{DualCleft, DualCrossedData, DualEntwiningData, DualGauge, QuotientCoalgebra};
use crate::entwine::{EntwiningData, PsiGen};
use crate::error::{Error, Result};
use crate::kernel::{BasisIndex, LinMap, Scalar, Vect};
use crate::ncalg::{elem, elem_of, Algebra, FiniteGroup, GroupAlgebra};

fn undefined(map: &str, i: &BasisIndex) -> Error {
    Error::UndefinedOnBasis { map: map.into(), index: i.clone() }
}

/// `C = kℤ_N`, `P = k[ℤ_N×ℤ_N]` with `(g,k)` at index `g·N+k`,
/// `ψ(h⊗(g,k)) = (g,k)⊗(h+k)`, `ψ^C(h⊗g) = g⊗(h+g)` and `e = 0`.
/// Here `M = span{(g,0)}` and `ψ(C⊗M) ⊆ M⊗C`.
pub struct Bialgebra {
    pub n: usize,
    pub ent: Arc<EntwiningData>,
    pub triv: Trivialization,
    /// `ρ(c,u) = ε(c)u`, `σ = ε⊗ε`.
    pub trivial: CrossedProductData,
    /// Derived from `Φ(h) = (0,h)`.
    pub cleft: CrossedProductData,
}

pub fn bialgebra(n: usize) -> Result<Bialgebra> {
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let zn = FiniteGroup::cyclic(n);
    let group = Arc::new(FiniteGroup::product(&zn, &zn));
    let p: Arc<dyn Algebra> = Arc::new(GroupAlgebra::new(group.clone()));
    let c: Arc<dyn Coalgebra> = Arc::new(GroupLikeCoalgebra::finite(format!("kZ_{n}"), n));
    let psi: PsiGen = Arc::new(move |h, u| {
        let h = elem_of(h, n)?;
        let u_i = elem_of(u, n * n)?;
        let k = u_i % n;
        Ok(Vect::basis(BasisIndex::pair(u.clone(), elem((h + k) % n))))
    });
    let psi_c = LinMap::new("psiC", move |i| {
        let (h, g) = i.split().ok_or_else(|| undefined("psiC", i))?;
        let (hi, gi) = (elem_of(h, n)?, elem_of(g, n)?);
        Ok(Vect::basis(BasisIndex::pair(g.clone(), elem((hi + gi) % n))))
    });
    let gens = vec![("m".to_string(), Vect::basis(elem(if n > 1 { n } else { 0 })))];
    let ent = Arc::new(
        EntwiningData::new(format!("bialg-z{n}"), p.clone(), c.clone(), psi, psi_c, elem(0), gens, Vec::new())
            .with_psi_preserving_m(true),
    );
    let e1 = ent.clone();
    let rho = LinMap::new("rho_triv", move |i| {
        let (c, u) = i.split().ok_or_else(|| undefined("rho", i))?;
        Ok(Vect::basis(u.clone()).scale(&e1.c.counit_basis(c)?))
    });
    let trivial = CrossedProductData::new(ent.clone(), rho, trivial_sigma(&ent));
    let phi = LinMap::new("Phi", move |i| Ok(Vect::basis(elem(elem_of(i, n)?))));
    let phi_inv = LinMap::new("Phi_inv", move |i| Ok(Vect::basis(elem((n - elem_of(i, n)?) % n))));
    let triv = Trivialization::new(ent.clone(), phi, phi_inv);
    let cleft = triv.derive();
    Ok(Bialgebra { n, ent, triv, trivial, cleft })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToyKind {
    /// `ψ(g⊗h) = h⊗g`
    Flip,
    /// `ψ(g⊗h) = h⊗h⁻¹gh`
    Conj,
    /// `ψ(g⊗h) = h⊗gh`
    Regular,
}

impl ToyKind {
    pub fn name(self) -> &'static str {
        match self {
            ToyKind::Flip => "flip",
            ToyKind::Conj => "conj",
            ToyKind::Regular => "regular",
        }
    }
}

/// A dual-side toy: `C = P = kG` with `κ ≡ 1` on group elements and
/// `ψ^P(u⊗v) = v⊗uv`.
pub struct DualToy {
    pub kind: ToyKind,
    pub group: Arc<FiniteGroup>,
    pub ent: Arc<DualEntwiningData>,
    pub m: Arc<QuotientCoalgebra>,
    /// `ρ̄(c) = 1⊗c`, `σ̄(m) = ε(m)1⊗1`.
    pub trivial: DualCrossedData,
    /// Present for the regular toy, where `Φ = id`.
    pub cleft: Option<DualCleft>,
}

impl DualToy {
    pub fn name(&self) -> String {
        let g = self.group.name().replace('_', "").to_lowercase();
        format!("{}-{g}", self.kind.name())
    }

    /// The data to check: derived from `Φ` when available.
    pub fn data(&self) -> DualCrossedData {
        match &self.cleft {
            Some(c) => c.derive(),
            None => self.trivial.clone(),
        }
    }

    /// Every assignment of group elements to the basis of `M`, capped at
    /// `limit` gauges.
    pub fn gauges(&self, limit: usize) -> Result<Vec<DualGauge>> {
        let mb = self.m.finite_basis().unwrap_or_default();
        let order = self.group.order();
        let total = (order as u128).checked_pow(mb.len() as u32).unwrap_or(u128::MAX);
        let count = total.min(limit as u128) as usize;
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let mut rest = k;
            let mut table = BTreeMap::new();
            for b in &mb {
                table.insert(b.clone(), elem(rest % order));
                rest /= order;
            }
            out.push(DualGauge::from_table(self.ent.clone(), self.m.clone(), table)?);
        }
        Ok(out)
    }
}

pub fn dual_toy(kind: ToyKind, group: FiniteGroup) -> Result<DualToy> {
    let group = Arc::new(group);
    let n = group.order();
    let c: Arc<dyn Coalgebra> = Arc::new(GroupLikeCoalgebra::finite(format!("k{}", group.name()), n));
    let p: Arc<dyn Algebra> = Arc::new(GroupAlgebra::new(group.clone()));
    let g1 = group.clone();
    let psi = LinMap::new(format!("psi_{}", kind.name()), move |i| {
        let (a, b) = i.split().ok_or_else(|| undefined("psi", i))?;
        let (g, h) = (elem_of(a, n)?, elem_of(b, n)?);
        let right = match kind {
            ToyKind::Flip => g,
            ToyKind::Conj => g1.conj(g, h),
            ToyKind::Regular => g1.mul(g, h),
        };
        Ok(Vect::basis(BasisIndex::pair(elem(h), elem(right))))
    });
    let kappa = LinMap::new("kappa", move |i| {
        elem_of(i, n)?;
        Ok(Vect::scalar(Scalar::one()))
    });
    let g2 = group.clone();
    let psi_p = LinMap::new("psiP", move |i| {
        let (a, b) = i.split().ok_or_else(|| undefined("psiP", i))?;
        let (u, v) = (elem_of(a, n)?, elem_of(b, n)?);
        Ok(Vect::basis(BasisIndex::pair(elem(v), elem(g2.mul(u, v)))))
    });
    let ent =
        Arc::new(DualEntwiningData { name: format!("{}-{}", kind.name(), group.name()), c, p, psi, kappa, psi_p });
    let m = ent.quotient()?;
    let trivial = DualCrossedData::trivial(ent.clone(), m.clone());
    let cleft = (kind == ToyKind::Regular).then(|| {
        let g3 = group.clone();
        let phi = LinMap::new("Phi", move |i| Ok(Vect::basis(elem(elem_of(i, n)?))));
        let phi_inv = LinMap::new("Phi_inv", move |i| Ok(Vect::basis(elem(g3.inv(elem_of(i, n)?)))));
        DualCleft::new(ent.clone(), m.clone(), phi, phi_inv)
    });
    Ok(DualToy { kind, group, ent, m, trivial, cleft })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{SampleSpec, Status};

    fn assert_no_failures(reports: &[crate::kernel::CheckReport]) {
        for r in reports {
            assert_ne!(r.status, Status::Fail, "{r}");
        }
    }

    #[test]
    fn bialgebra_toy_passes_and_rho_hats_agree() {
        let b = bialgebra(3).unwrap();
        let spec = SampleSpec::default().with_trials(15);
        assert_no_failures(&b.ent.check_entwining(&spec));
        assert_no_failures(&b.ent.check_psi_c(&spec));
        assert_no_failures(&b.trivial.check_axioms(&spec));
        assert_no_failures(&b.cleft.check_axioms(&spec));
        assert_no_failures(&b.triv.validate(&spec));
        // ρ differs off M but ρ̂ agrees on M
        let u = Vect::basis(elem(4));
        let c1 = Vect::basis(elem(1));
        assert_ne!(b.trivial.rho(&c1, &u).unwrap(), b.cleft.rho(&c1, &u).unwrap());
        assert!(b.trivial.check_rho_hat_equal(&b.cleft, &spec).passed());
        assert_eq!(
            b.trivial.check_axioms(&spec).iter().find(|r| r.id == "crossed.iii-simplified").unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn quotient_dimensions() {
        let flip = dual_toy(ToyKind::Flip, FiniteGroup::cyclic(4)).unwrap();
        assert_eq!(flip.m.dim(), 4);
        let conj = dual_toy(ToyKind::Conj, FiniteGroup::s3()).unwrap();
        assert_eq!(conj.m.dim(), 3);
        // representatives are the smallest index in each class
        assert_eq!(conj.m.finite_basis().unwrap(), vec![elem(0), elem(1), elem(4)]);
        let reg = dual_toy(ToyKind::Regular, FiniteGroup::s3()).unwrap();
        assert_eq!(reg.m.finite_basis().unwrap(), vec![elem(0)]);
    }

    #[test]
    fn dual_toys_pass() {
        let spec = SampleSpec::default();
        for (kind, g) in [
            (ToyKind::Flip, FiniteGroup::cyclic(3)),
            (ToyKind::Conj, FiniteGroup::s3()),
            (ToyKind::Regular, FiniteGroup::cyclic(4)),
            (ToyKind::Regular, FiniteGroup::s3()),
        ] {
            let toy = dual_toy(kind, g).unwrap();
            assert_no_failures(&toy.ent.check());
            assert!(toy.m.check_coideal().passed());
            let data = toy.data();
            assert_no_failures(&data.check_axioms());
            if let Some(cl) = &toy.cleft {
                assert_no_failures(&cl.validate(&spec));
                assert_no_failures(&cl.check_theta(&data, &spec));
            }
            for g in toy.gauges(4).unwrap() {
                assert_no_failures(&g.validate(&spec));
                assert_no_failures(&g.check_equivalence(&data));
            }
        }
    }
}
