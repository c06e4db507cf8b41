//! Cleft entwining extensions: a trivialization `Φ : C → P` yields crossed
//! product data and an algebra isomorphism `Θ : M ⋊ C → P`.

use std::sync::Arc;

use crate::coalg::{check_conv_inverse, delta_at};
use crate::crossprod::CrossedProductData;
use crate::entwine::EntwiningData;
use crate::kernel::tensor::apply_at;
use crate::kernel::{Check, CheckReport, LinMap, SampleSpec, Sampler, Vect};
use crate::ncalg::mul_legs;
use crate::Result;

/// Applies `f` to leg `pos`.
pub fn map_leg(v: &Vect, pos: usize, f: &LinMap) -> Result<Vect> {
    apply_at(v, pos, 1, |l| f.apply_basis(&l[0]))
}

#[derive(Clone)]
pub struct Trivialization {
    pub ent: Arc<EntwiningData>,
    pub phi: LinMap,
    pub phi_inv: LinMap,
}

impl Trivialization {
    pub fn new(ent: Arc<EntwiningData>, phi: LinMap, phi_inv: LinMap) -> Self {
        Trivialization { ent, phi, phi_inv }
    }

    /// `Φ(e) = 1`, convolution invertibility and both covariance conditions.
    pub fn validate(&self, spec: &SampleSpec) -> Vec<CheckReport> {
        let ent = self.ent.as_ref();
        let cc = ent.c.as_ref();
        let mut unit = Check::new("cleft.phi-unit");
        unit.eq_res("Φ(e)", self.phi.apply(&ent.e_vect()).map(|v| (v, ent.p.one())));
        let inv = check_conv_inverse(
            "cleft.convolution-inverse",
            ent.c.clone(),
            ent.p.clone(),
            &self.phi,
            &self.phi_inv,
            spec,
        );
        let mut cov = Check::new("cleft.cov-phi");
        let mut cov_inv = Check::new("cleft.cov-phi-inv");
        let mut s = Sampler::for_stream(spec.seed, "cleft-cov");
        for _ in 0..spec.trials {
            let b = Vect::basis(cc.sample_basis(&mut s, spec));
            let c = Vect::basis(cc.sample_basis(&mut s, spec));
            // ψ(b⊗Φ(c)) = (Φ⊗id)ψ^C(b⊗c)
            cov.eq_res(
                format!("b={b}; c={c}"),
                (|| {
                    let lhs = ent.psi(&b, &self.phi.apply(&c)?)?;
                    let rhs = map_leg(&ent.psic_at(&b.tensor(&c), 0)?, 0, &self.phi)?;
                    Ok((lhs, rhs))
                })(),
            );
            // Φ⁻¹(c)⊗e = Φ⁻¹(c₂)_α⊗c₁^α
            cov_inv.eq_res(
                format!("c={c}"),
                (|| {
                    let lhs = self.phi_inv.apply(&c)?.tensor(&ent.e_vect());
                    let t = delta_at(cc, &c, 0)?;
                    let t = map_leg(&t, 1, &self.phi_inv)?;
                    Ok((lhs, ent.psi_at(&t, 0)?))
                })(),
            );
        }
        vec![unit.finish(), inv, cov.finish(), cov_inv.finish()]
    }

    /// `ρ(c,u) = Φ(c₁)u_αΦ⁻¹(c₂^α)` and `σ(b,c) = Φ(b₁)Φ(c_A)Φ⁻¹(b₂^A)`.
    pub fn derive(&self) -> CrossedProductData {
        let (t1, t2) = (self.clone(), self.clone());
        let rho = LinMap::new("rho_Phi", move |i| {
            let ent = t1.ent.as_ref();
            let t = delta_at(ent.c.as_ref(), &Vect::basis(i.clone()), 0)?;
            let t = ent.psi_at(&t, 1)?;
            let t = map_leg(&t, 0, &t1.phi)?;
            let t = map_leg(&t, 2, &t1.phi_inv)?;
            mul_legs(ent.p.as_ref(), &t, 0, 3)
        });
        let sigma = LinMap::new("sigma_Phi", move |i| {
            let ent = t2.ent.as_ref();
            let t = delta_at(ent.c.as_ref(), &Vect::basis(i.clone()), 0)?;
            let t = ent.psic_at(&t, 1)?;
            let t = map_leg(&t, 0, &t2.phi)?;
            let t = map_leg(&t, 1, &t2.phi)?;
            let t = map_leg(&t, 2, &t2.phi_inv)?;
            mul_legs(ent.p.as_ref(), &t, 0, 3)
        });
        CrossedProductData::new(self.ent.clone(), rho, sigma)
    }

    /// `Θ(x⊗c) = xΦ(c)`.
    pub fn theta(&self, a: &Vect) -> Result<Vect> {
        let t = map_leg(a, 1, &self.phi)?;
        mul_legs(self.ent.p.as_ref(), &t, 0, 2)
    }

    /// `Θ⁻¹(u) = u_αΦ⁻¹(e^α₁)⊗e^α₂`.
    pub fn theta_inv(&self, u: &Vect) -> Result<Vect> {
        let ent = self.ent.as_ref();
        let t = ent.psi(&ent.e_vect(), u)?;
        let t = delta_at(ent.c.as_ref(), &t, 1)?;
        let t = map_leg(&t, 1, &self.phi_inv)?;
        mul_legs(ent.p.as_ref(), &t, 0, 2)
    }

    /// `Θ` is multiplicative on `M⊗C` and inverse to `Θ⁻¹` on both sides.
    pub fn check_theta(&self, data: &CrossedProductData, spec: &SampleSpec) -> Vec<CheckReport> {
        let mut s = Sampler::for_stream(spec.seed, "cleft-theta");
        let mut hom = Check::new("cleft.theta-hom");
        let mut left = Check::new("cleft.theta-inverse");
        let mut right = Check::new("cleft.theta-inverse-right");
        for _ in 0..spec.trials {
            let r = (|| -> Result<()> {
                let a = data.sample_mc(&mut s, spec)?;
                let b = data.sample_mc(&mut s, spec)?;
                let input = format!("a={a}; b={b}");
                hom.eq_res(
                    &input,
                    (|| {
                        let lhs = self.theta(&data.mul_raw(&a, &b)?)?;
                        let rhs = self.ent.p.mul(&self.theta(&a)?, &self.theta(&b)?)?;
                        Ok((lhs, rhs))
                    })(),
                );
                left.eq_res(&input, self.theta(&a).and_then(|t| self.theta_inv(&t)).map(|v| (v, a.clone())));
                let u = self.ent.p.sample(&mut s, spec);
                right.eq_res(format!("u={u}"), self.theta_inv(&u).and_then(|t| self.theta(&t)).map(|v| (v, u.clone())));
                Ok(())
            })();
            if let Err(err) = r {
                hom.holds("sampling", false, format!("error: {err}"), "-");
            }
        }
        vec![hom.finish(), left.finish(), right.finish()]
    }

    /// The predicate `ψ^C(c⊗e) = e⊗c` together with the explicit spot check
    /// `Φ(e_A₁)Φ⁻¹(e_A₂)⊗e_A₃⊗b^A = 1⊗e⊗b`, where `ψ^C(b⊗e) = e_A⊗b^A`.
    pub fn check_lemma26(&self, spec: &SampleSpec) -> Vec<CheckReport> {
        let ent = self.ent.as_ref();
        let cc = ent.c.as_ref();
        let mut spot = Check::new("lemma26.spot-check");
        for b in cc.window(spec).into_iter().map(Vect::basis) {
            spot.eq_res(
                format!("b={b}"),
                (|| {
                    let t = ent.psic_at(&b.tensor(&ent.e_vect()), 0)?;
                    let t = delta_at(cc, &t, 0)?;
                    let t = delta_at(cc, &t, 1)?;
                    let t = map_leg(&t, 0, &self.phi)?;
                    let t = map_leg(&t, 1, &self.phi_inv)?;
                    let lhs = mul_legs(ent.p.as_ref(), &t, 0, 2)?;
                    Ok((lhs, ent.p.one().tensor(&ent.e_vect()).tensor(&b)))
                })(),
            );
        }
        vec![ent.check_lemma26_predicate(spec), spot.finish()]
    }
}
