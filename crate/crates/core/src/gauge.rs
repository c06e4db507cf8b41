//! Gauge transformations `γ : C → M` between crossed product data with the
//! same entwining, and the algebra isomorphisms they induce.

use std::sync::Arc;

use crate::cleft::map_leg;
use crate::coalg::{check_conv_inverse, convolve, delta_at, unit_counit};
use crate::crossprod::{trivial_sigma, CrossedProductData};
use crate::entwine::EntwiningData;
use crate::kernel::tensor::legs;
use crate::kernel::{BasisIndex, Check, CheckReport, LinMap, SampleSpec, Sampler, Scalar, Vect};
use crate::ncalg::mul_legs;
use crate::Result;

#[derive(Clone)]
pub struct GaugeTransformation {
    pub ent: Arc<EntwiningData>,
    pub gamma: LinMap,
    pub gamma_inv: LinMap,
}

impl GaugeTransformation {
    pub fn new(ent: Arc<EntwiningData>, gamma: LinMap, gamma_inv: LinMap) -> Self {
        GaugeTransformation { ent, gamma, gamma_inv }
    }

    /// `γ = ε·1`.
    pub fn identity(ent: Arc<EntwiningData>) -> Self {
        let u = unit_counit(ent.c.clone(), ent.p.clone());
        GaugeTransformation::new(ent, u.clone(), u)
    }

    /// `γ(c) = λ(c)·1` on a group-like coalgebra; `λ` must not vanish.
    pub fn scalar(ent: Arc<EntwiningData>, lambda: Arc<dyn Fn(&BasisIndex) -> Scalar + Send + Sync>) -> Result<Self> {
        let (e1, e2, l1, l2) = (ent.clone(), ent.clone(), lambda.clone(), lambda);
        let gamma = LinMap::new("gamma", move |i| Ok(e1.p.one().scale(&l1(i))));
        let gamma_inv = LinMap::new("gamma_inv", move |i| Ok(e2.p.one().scale(&l2(i).unit_inverse()?)));
        Ok(GaugeTransformation::new(ent, gamma, gamma_inv))
    }

    /// Random scalar gauge `λ_p = ±(1 + k)^{±1}`, with `λ(e) = 1`.
    pub fn random_scalar(ent: Arc<EntwiningData>, s: &mut Sampler, spec: &SampleSpec) -> Result<Self> {
        let window = ent.c.window(spec);
        let mut table = std::collections::HashMap::new();
        for c in window {
            let k = s.int_in(1, 4);
            let mut l = if s.coin() { Scalar::int(k) } else { Scalar::frac(1, k) };
            if s.coin() {
                l = -&l;
            }
            if s.coin() {
                l = &l * &Scalar::q_pow(s.int_in(-2, 2));
            }
            table.insert(c, l);
        }
        table.insert(ent.e.clone(), Scalar::one());
        let lambda = Arc::new(move |i: &BasisIndex| table.get(i).cloned().unwrap_or_else(Scalar::one));
        GaugeTransformation::scalar(ent, lambda)
    }

    /// Convolution product `γ * δ`.
    pub fn compose(&self, other: &GaugeTransformation) -> GaugeTransformation {
        let (c, p) = (self.ent.c.clone(), self.ent.p.clone());
        GaugeTransformation::new(
            self.ent.clone(),
            convolve(c.clone(), p.clone(), &self.gamma, &other.gamma),
            convolve(c, p, &other.gamma_inv, &self.gamma_inv),
        )
    }

    pub fn inverse(&self) -> GaugeTransformation {
        GaugeTransformation::new(self.ent.clone(), self.gamma_inv.clone(), self.gamma.clone())
    }

    /// `γ(e) = 1`, convolution invertibility, values in `M` and covariance
    /// `ψ^C₂₃ψ₁₂(id⊗γ⊗id)(id⊗Δ) = (γ⊗id⊗id)(Δ⊗id)ψ^C`.
    pub fn validate(&self, spec: &SampleSpec) -> Vec<CheckReport> {
        let ent = self.ent.as_ref();
        let cc = ent.c.as_ref();
        let mut unit = Check::new("gauge.unit");
        unit.eq_res("γ(e)", self.gamma.apply(&ent.e_vect()).map(|v| (v, ent.p.one())));
        let inv = check_conv_inverse(
            "gauge.convolution-inverse",
            ent.c.clone(),
            ent.p.clone(),
            &self.gamma,
            &self.gamma_inv,
            spec,
        );
        let mut in_m = Check::new("gauge.values-in-M");
        for c in cc.window(spec) {
            match self.gamma.apply_basis(&c).and_then(|g| Ok((ent.is_fixed_point(&g)?, g))) {
                Ok((ok, g)) => in_m.holds(format!("γ({c})"), ok, g, "element of M"),
                Err(err) => in_m.holds(format!("γ({c})"), false, format!("error: {err}"), "-"),
            }
        }
        let mut cov = Check::new("gauge.covariance");
        let mut s = Sampler::for_stream(spec.seed, "gauge-cov");
        for _ in 0..spec.trials {
            let b = Vect::basis(cc.sample_basis(&mut s, spec));
            let c = Vect::basis(cc.sample_basis(&mut s, spec));
            cov.eq_res(
                format!("b={b}; c={c}"),
                (|| {
                    let t = delta_at(cc, &b.tensor(&c), 1)?; // b c1 c2
                    let t = map_leg(&t, 1, &self.gamma)?; // b g c2
                    let t = ent.psi_at(&t, 0)?; // g_α b^α c2
                    let lhs = ent.psic_at(&t, 1)?; // g_α c2_A b^αA
                    let t = ent.psic_at(&b.tensor(&c), 0)?; // c_A b^A
                    let t = delta_at(cc, &t, 0)?;
                    let rhs = map_leg(&t, 0, &self.gamma)?;
                    Ok((lhs, rhs))
                })(),
            );
        }
        vec![unit.finish(), inv, in_m.finish(), cov.finish()]
    }

    /// `ρ^γ(c,u) = γ(c₁)ρ(c₂,u_α)γ⁻¹(c₃^α)` and
    /// `σ^γ(b,c) = γ(b₁)ρ(b₂,γ(c_A₁)_α)σ(b₃^α,c_A₂)γ⁻¹(b₄^A)`.
    pub fn transform(&self, data: &CrossedProductData) -> CrossedProductData {
        let (g1, d1) = (self.clone(), data.clone());
        let rho = LinMap::new("rho_gamma", move |i| {
            let ent = g1.ent.as_ref();
            let cc = ent.c.as_ref();
            let t = delta_at(cc, &Vect::basis(i.clone()), 0)?; // c1 c' u
            let t = delta_at(cc, &t, 1)?; // c1 c2 c3 u
            let t = ent.psi_at(&t, 2)?; // c1 c2 u_α c3^α
            let t = d1.rho_at(&t, 1)?; // c1 r c3^α
            let t = map_leg(&t, 0, &g1.gamma)?;
            let t = map_leg(&t, 2, &g1.gamma_inv)?;
            mul_legs(ent.p.as_ref(), &t, 0, 3)
        });
        let (g2, d2) = (self.clone(), data.clone());
        let sigma = LinMap::new("sigma_gamma", move |i| {
            let ent = g2.ent.as_ref();
            let cc = ent.c.as_ref();
            let l = legs(i);
            let t = Vect::basis(l[0].clone());
            let t = delta_at(cc, &t, 0)?;
            let t = delta_at(cc, &t, 1)?;
            let t = delta_at(cc, &t, 2)?; // b1 b2 b3 b4
            let t = t.tensor(&Vect::basis(l[1].clone()));
            let t = ent.psic_at(&t, 3)?; // b1 b2 b3 c_A b4^A
            let t = delta_at(cc, &t, 3)?; // b1 b2 b3 d1 d2 b4^A
            let t = map_leg(&t, 3, &g2.gamma)?; // b1 b2 b3 g d2 b4^A
            let t = ent.psi_at(&t, 2)?; // b1 b2 g_α b3^α d2 b4^A
            let t = d2.rho_at(&t, 1)?; // b1 r b3^α d2 b4^A
            let t = d2.sigma_at(&t, 2)?; // b1 r s b4^A
            let t = map_leg(&t, 0, &g2.gamma)?;
            let t = map_leg(&t, 3, &g2.gamma_inv)?;
            mul_legs(ent.p.as_ref(), &t, 0, 4)
        });
        CrossedProductData::new(data.ent.clone(), rho, sigma)
    }

    /// `Θ_γ(x⊗c) = xγ(c₁)⊗c₂`, from the transformed product to the original.
    pub fn theta(&self, a: &Vect) -> Result<Vect> {
        let t = delta_at(self.ent.c.as_ref(), a, 1)?;
        let t = map_leg(&t, 1, &self.gamma)?;
        mul_legs(self.ent.p.as_ref(), &t, 0, 2)
    }

    /// `γ` recovered from `Θ` as `(id⊗ε)Θ(1⊗c)`.
    pub fn recover_from_theta(&self, c: &Vect) -> Result<Vect> {
        let t = self.theta(&self.ent.p.one().tensor(c))?;
        crate::coalg::counit_at(self.ent.c.as_ref(), &t, 1)
    }

    /// The transformed data satisfies every axiom, and `Θ_γ` is a left
    /// `M`-linear, right `C`-colinear algebra isomorphism with inverse
    /// `Θ_{γ⁻¹}`.
    pub fn check_equivalence(&self, data: &CrossedProductData, spec: &SampleSpec) -> Vec<CheckReport> {
        let ent = self.ent.as_ref();
        let cc = ent.c.as_ref();
        let gd = self.transform(data);
        let mut out: Vec<CheckReport> = gd.check_axioms(spec).into_iter().map(|r| r.prefixed("gauge")).collect();
        let inv = self.inverse();
        let mut hom = Check::new("gauge.theta-hom");
        let mut bij = Check::new("gauge.theta-inverse");
        let mut colin = Check::new("gauge.theta-colinear");
        let mut lin = Check::new("gauge.theta-left-linear");
        let mut conv = Check::new("gauge.converse");
        let mut s = Sampler::for_stream(spec.seed, "gauge-theta");
        for _ in 0..spec.trials {
            let r = (|| -> Result<()> {
                let a = gd.sample_mc(&mut s, spec)?;
                let b = gd.sample_mc(&mut s, spec)?;
                let x = ent.sample_m(&mut s, spec)?;
                let c = Vect::basis(cc.sample_basis(&mut s, spec));
                let input = format!("a={a}; b={b}");
                hom.eq_res(
                    &input,
                    (|| {
                        let lhs = self.theta(&gd.mul_raw(&a, &b)?)?;
                        let rhs = data.mul_raw(&self.theta(&a)?, &self.theta(&b)?)?;
                        Ok((lhs, rhs))
                    })(),
                );
                bij.eq_res(&input, (|| Ok((inv.theta(&self.theta(&a)?)?, a.clone())))());
                bij.eq_res(&input, (|| Ok((self.theta(&inv.theta(&a)?)?, a.clone())))());
                colin.eq_res(
                    &input,
                    (|| {
                        let lhs = delta_at(cc, &self.theta(&a)?, 1)?;
                        let rhs = apply_theta_first(self, &delta_at(cc, &a, 1)?)?;
                        Ok((lhs, rhs))
                    })(),
                );
                lin.eq_res(
                    format!("x={x}; a={a}"),
                    (|| {
                        let xe = x.tensor(&ent.e_vect());
                        Ok((self.theta(&gd.mul_raw(&xe, &a)?)?, data.mul_raw(&xe, &self.theta(&a)?)?))
                    })(),
                );
                conv.eq_res(format!("c={c}"), (|| Ok((self.recover_from_theta(&c)?, self.gamma.apply(&c)?)))());
                Ok(())
            })();
            if let Err(err) = r {
                hom.holds("sampling", false, format!("error: {err}"), "-");
            }
        }
        out.extend([hom.finish(), bij.finish(), colin.finish(), lin.finish(), conv.finish()]);
        out
    }

    /// `σ(b,c) = γ(b₁)ρ(b₂,γ(c_A))γ⁻¹(b₃^A)`: the transform of `(ρ, σ_triv)`.
    pub fn coboundary(&self, rho_data: &CrossedProductData) -> CrossedProductData {
        let trivial = rho_data.with_sigma(trivial_sigma(&rho_data.ent));
        self.transform(&trivial)
    }
}

fn apply_theta_first(g: &GaugeTransformation, v: &Vect) -> Result<Vect> {
    // legs x c1 c2: Θ on (x, c1), c2 untouched
    let t = delta_at(g.ent.c.as_ref(), v, 1)?;
    let t = map_leg(&t, 1, &g.gamma)?;
    mul_legs(g.ent.p.as_ref(), &t, 0, 2)
}

/// `(γ₂ applied to (γ₁ applied to D))` against `(γ₁ * γ₂)` applied to `D`,
/// comparing `ρ` and `σ` values on samples.
pub fn check_group_law(
    data: &CrossedProductData,
    g1: &GaugeTransformation,
    g2: &GaugeTransformation,
    spec: &SampleSpec,
) -> CheckReport {
    let ent = data.ent.as_ref();
    let cc = ent.c.as_ref();
    let twice = g2.transform(&g1.transform(data));
    let once = g2.compose(g1).transform(data);
    let back = g1.inverse().transform(&g1.transform(data));
    let mut chk = Check::new("gauge.group-law");
    let mut s = Sampler::for_stream(spec.seed, "gauge-group");
    for _ in 0..spec.trials {
        let r = (|| -> Result<()> {
            let b = Vect::basis(cc.sample_basis(&mut s, spec));
            let c = Vect::basis(cc.sample_basis(&mut s, spec));
            let u = ent.p.sample(&mut s, spec);
            let input = format!("b={b}; c={c}; u={u}");
            chk.eq_res(&input, (|| Ok((twice.rho(&b, &u)?, once.rho(&b, &u)?)))());
            chk.eq_res(&input, (|| Ok((twice.sigma(&b, &c)?, once.sigma(&b, &c)?)))());
            chk.eq_res(&input, (|| Ok((back.rho(&b, &u)?, data.rho(&b, &u)?)))());
            chk.eq_res(&input, (|| Ok((back.sigma(&b, &c)?, data.sigma(&b, &c)?)))());
            Ok(())
        })();
        if let Err(err) = r {
            chk.holds("sampling", false, format!("error: {err}"), "-");
        }
    }
    chk.finish()
}
