//! The quantum Euclidean group over the quantum hyperboloid.

use std::sync::Arc;

use crate::cleft::{map_leg, Trivialization};
use crate::coalg::{Coalgebra, GroupLikeCoalgebra};
use crate::crossprod::CrossedProductData;
use crate::entwine::{EntwiningData, InstanceParams, PsiGen};
use crate::error::{Error, Result};
use crate::kernel::{BasisIndex, Check, CheckReport, LinMap, SampleSpec, Sampler, Scalar, Vect};
use crate::ncalg::{Algebra, Eq2Algebra, Gen};

fn c(p: i64) -> BasisIndex {
    BasisIndex::GroupLike(p)
}

fn grouplike(i: &BasisIndex) -> Result<i64> {
    i.as_group_like().ok_or_else(|| Error::UndefinedOnBasis { map: "psi".into(), index: i.clone() })
}

/// The generator rules for ψ.
pub fn psi_gen(params: &InstanceParams) -> PsiGen {
    let q = params.q_scalar();
    let mu = Scalar::rational(params.mu.clone());
    let nu = Scalar::rational(params.nu.clone());
    Arc::new(move |ci: &BasisIndex, g: &BasisIndex| {
        let p = grouplike(ci)?;
        let q2p = q.pow(2 * p)?;
        let t = |k: Scalar, x: Gen, r: i64| Vect::term(k, BasisIndex::pair(x.index(), c(r)));
        let one = Scalar::one();
        Ok(if *g == Gen::V.index() {
            t(one, Gen::V, p + 1)
        } else if *g == Gen::Vi.index() {
            t(one, Gen::Vi, p - 1)
        } else if *g == Gen::N.index() {
            let k = &mu * &q2p;
            &(&t(one, Gen::N, p) + &t(k.clone(), Gen::V, p)) - &t(k, Gen::V, p + 1)
        } else if *g == Gen::Nb.index() {
            let k = &nu * &q2p;
            &(&t(one, Gen::Nb, p) + &t(k.clone(), Gen::Vi, p)) - &t(k, Gen::Vi, p - 1)
        } else {
            return Err(Error::UndefinedOnBasis { map: "psi".into(), index: g.clone() });
        })
    })
}

/// `ψ^C(c_p⊗c_r) = c_r⊗c_{p+r-s}`.
pub fn psi_c(s: i64) -> LinMap {
    LinMap::new("psiC", move |i| {
        let (b, cc) = i.split().ok_or_else(|| Error::UndefinedOnBasis { map: "psiC".into(), index: i.clone() })?;
        let (p, r) = (grouplike(b)?, grouplike(cc)?);
        Ok(Vect::basis(BasisIndex::pair(c(r), c(p + r - s))))
    })
}

/// `z = v + μ⁻¹q^{-2s}n` and `z̄ = v⁻¹ + ν⁻¹q^{-2s}n̄`.
pub fn hyperboloid_generators(params: &InstanceParams) -> Result<(Vect, Vect)> {
    let q = params.q_scalar();
    let qs = q.pow(-2 * params.s)?;
    let mu_inv = Scalar::rational(params.mu.clone()).unit_inverse()?;
    let nu_inv = Scalar::rational(params.nu.clone()).unit_inverse()?;
    let z = &Vect::basis(Gen::V.index()) + &Vect::term(&mu_inv * &qs, Gen::N.index());
    let zb = &Vect::basis(Gen::Vi.index()) + &Vect::term(&nu_inv * &qs, Gen::Nb.index());
    Ok((z, zb))
}

pub fn entwining(params: &InstanceParams) -> Result<EntwiningData> {
    params.validate()?;
    let alg = Eq2Algebra::new(params.q_scalar())?;
    let relations = alg
        .defining_relations()
        .into_iter()
        .map(|(name, terms)| {
            let terms = terms.into_iter().map(|(k, w)| (k, w.into_iter().map(Gen::index).collect())).collect();
            (name, terms)
        })
        .collect();
    let (z, zb) = hyperboloid_generators(params)?;
    let p: Arc<dyn Algebra> = Arc::new(alg);
    let cc: Arc<dyn Coalgebra> = Arc::new(GroupLikeCoalgebra::integers());
    Ok(EntwiningData::new(
        "eq2",
        p,
        cc,
        psi_gen(params),
        psi_c(params.s),
        c(params.s),
        vec![("z".into(), z), ("zb".into(), zb)],
        relations,
    ))
}

/// `Φ(c_p) = v^{p-s}`, with inverse `Φ⁻¹(c_p) = v^{s-p}`.
pub fn trivialization(ent: Arc<EntwiningData>, s: i64) -> Trivialization {
    let phi = LinMap::new("Phi", move |i| Ok(Vect::basis(BasisIndex::mono(grouplike(i)? - s, 0, 0))));
    let phi_inv = LinMap::new("Phi_inv", move |i| Ok(Vect::basis(BasisIndex::mono(s - grouplike(i)?, 0, 0))));
    Trivialization::new(ent, phi, phi_inv)
}

/// Entwining data, trivialization and the derived crossed product data.
pub struct Eq2 {
    pub ent: Arc<EntwiningData>,
    pub triv: Trivialization,
    pub data: CrossedProductData,
}

pub fn make(params: &InstanceParams) -> Result<Eq2> {
    let ent = Arc::new(entwining(params)?);
    let triv = trivialization(ent.clone(), params.s);
    let data = triv.derive();
    Ok(Eq2 { ent, triv, data })
}

impl Eq2 {
    /// `z·z̄ − q²·z̄·z = (1 − q²)·1` in normal form.
    pub fn check_hyperboloid(&self, params: &InstanceParams) -> CheckReport {
        let mut chk = Check::new("eq2.hyperboloid");
        chk.eq_res(
            "z*zb - q^2*zb*z",
            (|| {
                let (z, zb) = hyperboloid_generators(params)?;
                let p = &self.ent.p;
                let q2 = params.q_scalar().pow(2)?;
                let lhs = &p.mul(&z, &zb)? - &p.mul(&zb, &z)?.scale(&q2);
                Ok((lhs, p.one().scale(&(&Scalar::one() - &q2))))
            })(),
        );
        chk.finish()
    }

    /// The derived `ρ` and `σ` against their closed forms over the window:
    /// `ρ(c_p,v^{±1}) = 1`, `ρ(c_p,n) = q^{2p}(q^{-2s}n + μ(v−1))`,
    /// `ρ(c_p,n̄) = q^{2p}(q^{-2s}n̄ + ν(v⁻¹−1))` and `σ ≡ 1`.
    pub fn check_closed_forms(&self, params: &InstanceParams, spec: &SampleSpec) -> Vec<CheckReport> {
        let mut rho = Check::new("eq2.rho-closed-form");
        let mut sigma = Check::new("eq2.sigma-closed-form");
        let p = &self.ent.p;
        let one = p.one();
        let q = params.q_scalar();
        let mu = Scalar::rational(params.mu.clone());
        let nu = Scalar::rational(params.nu.clone());
        let gen = |g: Gen| Vect::basis(g.index());
        for k in spec.window() {
            let cp = Vect::basis(c(k));
            let r = (|| -> Result<()> {
                let q2p = q.pow(2 * k)?;
                let qs = q.pow(-2 * params.s)?;
                rho.eq(format!("c_{k}, v"), &self.data.rho(&cp, &gen(Gen::V))?, &one);
                rho.eq(format!("c_{k}, vi"), &self.data.rho(&cp, &gen(Gen::Vi))?, &one);
                let n = &(&gen(Gen::N).scale(&qs) + &gen(Gen::V).scale(&mu)) - &one.scale(&mu);
                rho.eq(format!("c_{k}, n"), &self.data.rho(&cp, &gen(Gen::N))?, &n.scale(&q2p));
                let nb = &(&gen(Gen::Nb).scale(&qs) + &gen(Gen::Vi).scale(&nu)) - &one.scale(&nu);
                rho.eq(format!("c_{k}, nb"), &self.data.rho(&cp, &gen(Gen::Nb))?, &nb.scale(&q2p));
                for j in spec.window() {
                    sigma.eq(format!("c_{k}, c_{j}"), &self.data.sigma(&cp, &Vect::basis(c(j)))?, &one);
                }
                Ok(())
            })();
            if let Err(err) = r {
                rho.holds(format!("c_{k}"), false, format!("error: {err}"), "-");
            }
        }
        vec![rho.finish(), sigma.finish()]
    }

    /// The character `κ(v^{±1}) = 1`, `κ(n) = κ(n̄) = 0` makes
    /// `c◁u = (κ⊗id)ψ(c⊗u)` a unital right action of `P` on `C`.
    pub fn check_kappa_action(&self, spec: &SampleSpec) -> CheckReport {
        let mut chk = Check::new("eq2.kappa-action");
        let ent = &self.ent;
        let kappa = LinMap::new("kappa", |i| match i {
            BasisIndex::Monomial { a: 0, b: 0, .. } => Ok(Vect::scalar(Scalar::one())),
            BasisIndex::Monomial { .. } => Ok(Vect::zero()),
            _ => Err(Error::UndefinedOnBasis { map: "kappa".into(), index: i.clone() }),
        });
        let act = |c: &Vect, u: &Vect| map_leg(&ent.psi(c, u)?, 0, &kappa);
        let mut s = Sampler::for_stream(spec.seed, "eq2.kappa-action");
        for k in spec.window() {
            let cv = Vect::basis(c(k));
            for _ in 0..spec.trials.div_ceil(11).max(1) {
                let (u, w) = (ent.p.sample(&mut s, spec), ent.p.sample(&mut s, spec));
                let input = format!("c=c_{k}; u={u}; w={w}");
                chk.eq_res(&input, (|| Ok((act(&act(&cv, &u)?, &w)?, act(&cv, &ent.p.mul(&u, &w)?)?)))());
                let kap = |x: &Vect| kappa.apply(x).map(|v| v.as_scalar());
                chk.eq_res(
                    &input,
                    (|| Ok((Vect::scalar(kap(&ent.p.mul(&u, &w)?)?), Vect::scalar(&kap(&u)? * &kap(&w)?))))(),
                );
            }
            chk.eq_res(format!("c=c_{k}"), act(&cv, &ent.p.one()).map(|v| (v, cv.clone())));
        }
        chk.finish()
    }

    /// `1, z, z̄, zz̄` are fixed points and `v, n, n̄` are not; `ψ(c_p⊗z)`
    /// lies in `M⊗C` exactly when `p = s`.
    pub fn check_frontier(&self, params: &InstanceParams, spec: &SampleSpec) -> Vec<CheckReport> {
        let ent = &self.ent;
        let mut fixed = Check::new("eq2.fixed-points");
        let mut leave = Check::new("eq2.psi-leaves-m");
        let r = (|| -> Result<()> {
            let (z, zb) = hyperboloid_generators(params)?;
            let zzb = ent.p.mul(&z, &zb)?;
            for (name, x, expect) in [
                ("1", ent.p.one(), true),
                ("z", z.clone(), true),
                ("zb", zb, true),
                ("z*zb", zzb, true),
                ("v", Vect::basis(Gen::V.index()), false),
                ("n", Vect::basis(Gen::N.index()), false),
                ("nb", Vect::basis(Gen::Nb.index()), false),
            ] {
                let got = ent.is_fixed_point(&x)?;
                fixed.holds(name, got == expect, got, expect);
            }
            for k in spec.window() {
                let got = ent.psi_leaves_m(&c(k), &z)?;
                leave.holds(format!("c_{k} # z"), got == (k != params.s), got, k != params.s);
            }
            Ok(())
        })();
        if let Err(err) = r {
            fixed.holds("setup", false, format!("error: {err}"), "-");
        }
        vec![fixed.finish(), leave.finish()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Status;

    fn params() -> InstanceParams {
        InstanceParams::default()
    }

    #[test]
    fn psi_on_n_matches_rule() {
        let e = entwining(&params()).unwrap();
        let got = e.psi(&Vect::basis(c(2)), &Vect::basis(Gen::N.index())).unwrap();
        let k = &Scalar::int(3) * &Scalar::q_pow(4);
        let expect = Vect::from_terms([
            (Scalar::one(), BasisIndex::pair(Gen::N.index(), c(2))),
            (k.clone(), BasisIndex::pair(Gen::V.index(), c(2))),
            (-&k, BasisIndex::pair(Gen::V.index(), c(3))),
        ]);
        assert_eq!(got, expect);
    }

    #[test]
    fn psi_on_nv_agrees_with_both_factor_orders() {
        // n·v = q^-2·v·n, so ψ(c_0⊗nv) computed through the word n,v must
        // equal q^-2 times ψ along v,n.
        let e = entwining(&params()).unwrap();
        let nv = e.psi_word(&c(0), &[Gen::N.index(), Gen::V.index()]).unwrap();
        let vn = e.psi_word(&c(0), &[Gen::V.index(), Gen::N.index()]).unwrap().scale(&Scalar::q_pow(-2));
        assert_eq!(nv, vn);
        let direct = e
            .psi(&Vect::basis(c(0)), &Eq2Algebra::new(Scalar::q()).unwrap().from_gens(&[Gen::N, Gen::V]).unwrap())
            .unwrap();
        assert_eq!(direct, nv);
        // q^-2·vn⊗c_1 + μ·v²⊗c_1 − μ·v²⊗c_2
        let expect = Vect::from_terms([
            (Scalar::q_pow(-2), BasisIndex::pair(BasisIndex::mono(1, 1, 0), c(1))),
            (Scalar::int(3), BasisIndex::pair(BasisIndex::mono(2, 0, 0), c(1))),
            (Scalar::int(-3), BasisIndex::pair(BasisIndex::mono(2, 0, 0), c(2))),
        ]);
        assert_eq!(direct, expect);
    }

    #[test]
    fn entwining_axioms_hold() {
        let e = entwining(&params()).unwrap();
        let spec = SampleSpec::default().with_trials(20);
        for r in e.check_entwining(&spec) {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        for r in e.check_psi_c(&spec) {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        assert!(e.check_coaction(&spec).passed());
        assert!(e.check_lemma26_predicate(&spec).passed());
        for r in e.check_trivial_cocycle_admissible(&spec) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn fixed_points() {
        let e = entwining(&params()).unwrap();
        let (z, zb) = hyperboloid_generators(&params()).unwrap();
        assert!(e.is_fixed_point(&e.p.one()).unwrap());
        assert!(e.is_fixed_point(&z).unwrap());
        assert!(e.is_fixed_point(&zb).unwrap());
        assert!(e.is_fixed_point(&e.p.mul(&z, &zb).unwrap()).unwrap());
        for g in [Gen::V, Gen::N, Gen::Nb] {
            assert!(!e.is_fixed_point(&Vect::basis(g.index())).unwrap());
        }
        assert_eq!(
            e.coaction(&Vect::basis(Gen::V.index())).unwrap(),
            Vect::basis(BasisIndex::pair(Gen::V.index(), c(1)))
        );
        assert!(e.psi_leaves_m(&c(1), &z).unwrap());
        assert!(!e.psi_leaves_m(&c(0), &z).unwrap());
    }

    #[test]
    fn hyperboloid_relation() {
        let e = entwining(&params()).unwrap();
        let (z, zb) = hyperboloid_generators(&params()).unwrap();
        let p = &e.p;
        let q2 = Scalar::q_pow(2);
        let lhs = &p.mul(&z, &zb).unwrap() - &p.mul(&zb, &z).unwrap().scale(&q2);
        assert_eq!(lhs, p.one().scale(&(&Scalar::one() - &q2)));
    }

    #[test]
    fn derived_rho_and_sigma_match_closed_forms() {
        let pr = InstanceParams { s: 1, ..params() };
        let e = make(&pr).unwrap();
        let p = &e.ent.p;
        let (v, vi) = (Vect::basis(Gen::V.index()), Vect::basis(Gen::Vi.index()));
        let (n, nb) = (Vect::basis(Gen::N.index()), Vect::basis(Gen::Nb.index()));
        for k in -3..=3 {
            let cp = Vect::basis(c(k));
            let q2p = Scalar::q_pow(2 * k);
            assert_eq!(e.data.rho(&cp, &v).unwrap(), p.one());
            assert_eq!(e.data.rho(&cp, &vi).unwrap(), p.one());
            // q^{2p}(q^{-2s}n + μ(v-1))
            let expect = &(&n.scale(&Scalar::q_pow(-2)) + &v.scale(&Scalar::int(3))) - &p.one().scale(&Scalar::int(3));
            assert_eq!(e.data.rho(&cp, &n).unwrap(), expect.scale(&q2p));
            let expect =
                &(&nb.scale(&Scalar::q_pow(-2)) + &vi.scale(&Scalar::int(5))) - &p.one().scale(&Scalar::int(5));
            assert_eq!(e.data.rho(&cp, &nb).unwrap(), expect.scale(&q2p));
            for r in -2..=2 {
                assert_eq!(e.data.sigma(&cp, &Vect::basis(c(r))).unwrap(), p.one());
            }
        }
    }

    #[test]
    fn cleft_structure_holds() {
        let e = make(&params()).unwrap();
        let spec = SampleSpec::default().with_trials(10);
        for r in e
            .triv
            .validate(&spec)
            .into_iter()
            .chain(e.triv.check_theta(&e.data, &spec))
            .chain(e.triv.check_lemma26(&spec))
            .chain(e.data.check_axioms(&spec))
        {
            assert!(!r.failed(), "{r}");
        }
        for r in e.data.check_comodule_compat(&spec) {
            assert!(r.passed(), "{r}");
            assert_eq!(r.trials, 5);
        }
    }

    #[test]
    fn scalar_gauges() {
        use crate::gauge::{check_group_law, GaugeTransformation};
        use crate::kernel::Sampler;
        let e = make(&params()).unwrap();
        let spec = SampleSpec::default().with_trials(5);
        let mut s = Sampler::new(3);
        let g1 = GaugeTransformation::random_scalar(e.ent.clone(), &mut s, &spec).unwrap();
        let g2 = GaugeTransformation::random_scalar(e.ent.clone(), &mut s, &spec).unwrap();
        for r in g1.validate(&spec).into_iter().chain(g1.check_equivalence(&e.data, &spec)) {
            assert!(!r.failed(), "{r}");
        }
        assert!(check_group_law(&e.data, &g1, &g2, &spec).passed());
        let cob = g1.coboundary(&e.data);
        for r in cob.check_axioms(&spec) {
            assert!(!r.failed(), "{r}");
        }
        // σ^γ(c_p, c_r) = λ_p λ_r / λ_{p+r-s} for the trivial starting σ
        let lam = |p: i64| g1.gamma.apply_basis(&c(p)).unwrap();
        let p1 = &e.ent.p;
        let got = cob.sigma(&Vect::basis(c(2)), &Vect::basis(c(-1))).unwrap();
        let expect = p1.mul(&p1.mul(&lam(2), &lam(-1)).unwrap(), &g1.gamma_inv.apply_basis(&c(1)).unwrap()).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn instance_checks_pass() {
        for pr in [params(), InstanceParams { s: 2, ..params() }] {
            let e = make(&pr).unwrap();
            let spec = SampleSpec::default();
            assert!(e.check_hyperboloid(&pr).passed());
            let k = e.check_kappa_action(&spec.with_trials(11));
            assert!(k.passed() && k.trials == 33, "{k}");
            for r in e.check_closed_forms(&pr, &spec).into_iter().chain(e.check_frontier(&pr, &spec)) {
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn perturbed_psi_fails() {
        let e = entwining(&params()).unwrap();
        let good = psi_gen(&params());
        let bad: PsiGen = Arc::new(move |ci, g| {
            if *g == Gen::V.index() {
                Ok(Vect::basis(BasisIndex::pair(g.clone(), ci.clone())))
            } else {
                good(ci, g)
            }
        });
        let e2 = e.with_psi_gen(bad);
        let reports = e2.check_entwining(&SampleSpec::default().with_trials(10));
        assert!(reports.iter().any(|r| r.failed()));
    }
}
