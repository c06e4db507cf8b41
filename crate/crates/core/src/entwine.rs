//! Entwining data `(P, C, ψ, e, ψ^C)`: ψ given on generators and extended
//! multiplicatively, the induced coaction on `P`, fixed points, and the
//! compatibility conditions for `ψ^C`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;

use crate::coalg::{counit_at, delta_at, Coalgebra};
use crate::error::{Error, Result};
use crate::kernel::tensor::apply_at;
use crate::kernel::{BasisIndex, Check, CheckReport, LinMap, SampleSpec, Sampler, Scalar, Vect};
use crate::ncalg::{mul_legs, Algebra};

/// `ψ(c⊗g)` for a basis vector `c` and a generator `g` of `P`.
pub type PsiGen = Arc<dyn Fn(&BasisIndex, &BasisIndex) -> Result<Vect> + Send + Sync>;

/// A relation among generators of `P`: `Σ λᵢ·(gᵢ₁⋯gᵢₖ)`.
pub type Relation = (String, Vec<(Scalar, Vec<BasisIndex>)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceParams {
    /// `None` keeps `q` symbolic.
    pub q: Option<BigRational>,
    pub mu: BigRational,
    pub nu: BigRational,
    pub s: i64,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            q: None,
            mu: BigRational::from_integer(3.into()),
            nu: BigRational::from_integer(5.into()),
            s: 0,
        }
    }
}

impl InstanceParams {
    pub fn q_scalar(&self) -> Scalar {
        match &self.q {
            None => Scalar::q(),
            Some(r) => Scalar::rational(r.clone()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        use num_traits::Zero;
        if self.q.as_ref().is_some_and(|q| q.is_zero()) {
            return Err(Error::Invalid("q must be invertible".into()));
        }
        if self.mu.is_zero() || self.nu.is_zero() {
            return Err(Error::Invalid("mu and nu must be nonzero".into()));
        }
        Ok(())
    }
}

impl fmt::Display for InstanceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.q {
            None => write!(f, "q=q")?,
            Some(q) => write!(f, "q={q}")?,
        }
        write!(f, " mu={} nu={} s={}", self.mu, self.nu, self.s)
    }
}

pub struct EntwiningData {
    pub name: String,
    pub p: Arc<dyn Algebra>,
    pub c: Arc<dyn Coalgebra>,
    psi_gen: PsiGen,
    psi_cache: RwLock<HashMap<(BasisIndex, BasisIndex), Vect>>,
    pub psi_c: LinMap,
    pub e: BasisIndex,
    /// Named generators of the fixed-point subalgebra.
    pub m_generators: Vec<(String, Vect)>,
    pub relations: Vec<Relation>,
    /// Whether `ψ(C⊗M) ⊆ M⊗C` is asserted for this instance.
    pub psi_preserves_m: bool,
}

impl fmt::Debug for EntwiningData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EntwiningData")
            .field("name", &self.name)
            .field("P", &self.p.name())
            .field("C", &self.c.name())
            .field("e", &self.e)
            .finish()
    }
}

impl EntwiningData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        p: Arc<dyn Algebra>,
        c: Arc<dyn Coalgebra>,
        psi_gen: PsiGen,
        psi_c: LinMap,
        e: BasisIndex,
        m_generators: Vec<(String, Vect)>,
        relations: Vec<Relation>,
    ) -> Self {
        EntwiningData {
            name: name.into(),
            p,
            c,
            psi_gen,
            psi_cache: RwLock::new(HashMap::new()),
            psi_c,
            e,
            m_generators,
            relations,
            psi_preserves_m: false,
        }
    }

    pub fn with_psi_preserving_m(mut self, flag: bool) -> Self {
        self.psi_preserves_m = flag;
        self
    }

    /// Same data with a different generator rule for ψ.
    pub fn with_psi_gen(&self, psi_gen: PsiGen) -> Self {
        EntwiningData { psi_gen, psi_cache: RwLock::new(HashMap::new()), ..self.shallow_clone() }
    }

    pub fn with_psi_c(&self, psi_c: LinMap) -> Self {
        EntwiningData { psi_c, ..self.shallow_clone() }
    }

    fn shallow_clone(&self) -> Self {
        EntwiningData {
            name: self.name.clone(),
            p: self.p.clone(),
            c: self.c.clone(),
            psi_gen: self.psi_gen.clone(),
            psi_cache: RwLock::new(self.psi_cache.read().expect("cache poisoned").clone()),
            psi_c: self.psi_c.clone(),
            e: self.e.clone(),
            m_generators: self.m_generators.clone(),
            relations: self.relations.clone(),
            psi_preserves_m: self.psi_preserves_m,
        }
    }

    /// `ψ(c⊗u)` on basis vectors, through the factorization of `u` into
    /// generators.
    pub fn psi_basis(&self, c: &BasisIndex, u: &BasisIndex) -> Result<Vect> {
        let key = (c.clone(), u.clone());
        if let Some(v) = self.psi_cache.read().expect("cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let gens = self.p.factor(u)?;
        let out = match gens.len() {
            0 => self.p.one().tensor(&Vect::basis(c.clone())),
            1 => (self.psi_gen)(c, &gens[0])?,
            n => {
                let refs: Vec<Vect> = gens[..n - 1].iter().map(|g| Vect::basis(g.clone())).collect();
                let prefix = self.p.mul_all(&refs.iter().collect::<Vec<_>>())?;
                let head = self.psi(&Vect::basis(c.clone()), &prefix)?;
                self.push_generator(&head, &gens[n - 1])?
            }
        };
        self.psi_cache.write().expect("cache poisoned").insert(key, out.clone());
        Ok(out)
    }

    /// `x⊗c ↦ x·g_α⊗c^α`.
    fn push_generator(&self, v: &Vect, g: &BasisIndex) -> Result<Vect> {
        let step = apply_at(v, 1, 1, |l| {
            let r = (self.psi_gen)(&l[0], g)?;
            Ok(r)
        })?;
        mul_legs(self.p.as_ref(), &step, 0, 2)
    }

    /// ψ on `C⊗P`, bilinearly.
    pub fn psi(&self, c: &Vect, u: &Vect) -> Result<Vect> {
        let mut out = Vect::zero();
        for (i, a) in c.iter() {
            for (j, b) in u.iter() {
                out.add_scaled(&(a * b), &self.psi_basis(i, j)?);
            }
        }
        Ok(out)
    }

    /// Applies ψ to legs `pos` (in `C`) and `pos+1` (in `P`).
    pub fn psi_at(&self, v: &Vect, pos: usize) -> Result<Vect> {
        apply_at(v, pos, 2, |l| self.psi_basis(&l[0], &l[1]))
    }

    /// Applies ψ^C to legs `pos`, `pos+1`.
    pub fn psic_at(&self, v: &Vect, pos: usize) -> Result<Vect> {
        apply_at(v, pos, 2, |l| self.psi_c.apply2(&l[0], &l[1]))
    }

    pub fn psi_c(&self, b: &Vect, c: &Vect) -> Result<Vect> {
        self.psi_c.apply_pair(b, c)
    }

    /// ψ along a free word of generators, without reducing the word in `P`.
    pub fn psi_word(&self, c: &BasisIndex, word: &[BasisIndex]) -> Result<Vect> {
        let mut acc = self.p.one().tensor(&Vect::basis(c.clone()));
        for g in word {
            acc = self.push_generator(&acc, g)?;
        }
        Ok(acc)
    }

    /// `Δ_R u = ψ(e⊗u)`.
    pub fn coaction(&self, u: &Vect) -> Result<Vect> {
        self.psi(&Vect::basis(self.e.clone()), u)
    }

    pub fn is_fixed_point(&self, u: &Vect) -> Result<bool> {
        Ok(self.coaction(u)? == u.tensor(&Vect::basis(self.e.clone())))
    }

    /// Whether every left coefficient of `v ∈ P⊗C` lies in `M`.
    pub fn in_m_tensor_c(&self, v: &Vect) -> Result<bool> {
        for (_, x) in v.split_right() {
            if !self.is_fixed_point(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn e_vect(&self) -> Vect {
        Vect::basis(self.e.clone())
    }

    /// Random element of `M`: a combination of products of the registered
    /// generators. Membership is not re-tested here; see
    /// [`check_m_generators`](Self::check_m_generators).
    pub fn sample_m(&self, s: &mut Sampler, spec: &SampleSpec) -> Result<Vect> {
        if self.m_generators.is_empty() {
            return Err(Error::SamplingExhausted { space: "M".into(), attempts: 0 });
        }
        loop {
            let mut x = Vect::zero();
            for _ in 0..s.support(spec) {
                let len = s.index(spec.max_degree as usize + 1);
                let mut term = self.p.one();
                for _ in 0..len {
                    let (_, g) = s.choose(&self.m_generators);
                    term = self.p.mul(&term, g)?;
                }
                x.add_scaled(&s.coeff(), &term);
            }
            if !x.is_zero() {
                return Ok(x);
            }
        }
    }

    /// Every registered generator of `M` is a fixed point of the coaction.
    pub fn check_m_generators(&self) -> CheckReport {
        let mut chk = Check::new("entwining.m-generators");
        for (name, g) in &self.m_generators {
            match self.coaction(g) {
                Ok(lhs) => {
                    let rhs = g.tensor(&self.e_vect());
                    chk.eq(name, &lhs, &rhs);
                }
                Err(e) => chk.holds(name, false, format!("error: {e}"), "-"),
            }
        }
        chk.finish()
    }

    /// All five entwining identities plus the relation-kill checks.
    pub fn check_entwining(&self, spec: &SampleSpec) -> Vec<CheckReport> {
        let mut s = Sampler::for_stream(spec.seed, "entwining");
        let p = self.p.as_ref();
        let cc = self.c.as_ref();
        let mut mult = Check::new("entwining.ent-A");
        let mut unit = Check::new("entwining.ent-A-unit");
        let mut comult = Check::new("entwining.ent-B");
        let mut counit = Check::new("entwining.ent-B-counit");
        for _ in 0..spec.trials {
            let c = cc.sample(&mut s, spec);
            let u = p.sample(&mut s, spec);
            let w = p.sample(&mut s, spec);
            let input = format!("c={c}; u={u}; u'={w}");
            mult.eq_res(
                &input,
                (|| {
                    let lhs = self.psi(&c, &p.mul(&u, &w)?)?;
                    let t = self.psi(&c, &u)?.tensor(&w);
                    let rhs = mul_legs(p, &self.psi_at(&t, 1)?, 0, 2)?;
                    Ok((lhs, rhs))
                })(),
            );
            unit.eq_res(format!("c={c}"), (|| Ok((self.psi(&c, &p.one())?, p.one().tensor(&c))))());
            comult.eq_res(
                &input,
                (|| {
                    let lhs = delta_at(cc, &self.psi(&c, &u)?, 1)?;
                    let t = cc.delta(&c)?.tensor(&u);
                    let rhs = self.psi_at(&self.psi_at(&t, 1)?, 0)?;
                    Ok((lhs, rhs))
                })(),
            );
            counit.eq_res(
                &input,
                (|| {
                    let lhs = counit_at(cc, &self.psi(&c, &u)?, 1)?;
                    Ok((lhs, u.scale(&cc.counit(&c)?)))
                })(),
            );
        }
        vec![
            mult.finish(),
            unit.finish(),
            comult.finish(),
            counit.finish(),
            self.check_relation_kill(spec),
            self.check_m_generators(),
        ]
    }

    /// `ψ(c⊗r) = 0` for every defining relation `r` and every `c` in the window.
    pub fn check_relation_kill(&self, spec: &SampleSpec) -> CheckReport {
        let mut chk = Check::new("entwining.relation-kill");
        for c in self.c.window(spec) {
            for (name, rel) in &self.relations {
                let r = (|| {
                    let mut acc = Vect::zero();
                    for (k, word) in rel {
                        acc.add_scaled(k, &self.psi_word(&c, word)?);
                    }
                    Ok((acc, Vect::zero()))
                })();
                chk.eq_res(format!("psi({c} # ({name}))"), r);
            }
        }
        chk.finish()
    }

    /// Both conditions on ψ^C.
    pub fn check_psi_c(&self, spec: &SampleSpec) -> Vec<CheckReport> {
        let cc = self.c.as_ref();
        let mut cond1 = Check::new("psiC.condition1");
        let mut cond2 = Check::new("psiC.condition2");
        let window = cc.window(spec);
        for b in &window {
            for c in &window {
                let (bv, cv) = (Vect::basis(b.clone()), Vect::basis(c.clone()));
                let input = format!("{b} # {c}");
                cond1.eq_res(
                    &input,
                    (|| {
                        let lhs = delta_at(cc, &self.psi_c(&bv, &cv)?, 1)?;
                        let t = cc.delta(&bv)?.tensor(&cv);
                        let rhs = self.psic_at(&self.psic_at(&t, 1)?, 0)?;
                        Ok((lhs, rhs))
                    })(),
                );
                cond2.eq_res(
                    &input,
                    (|| {
                        let lhs = counit_at(cc, &self.psi_c(&bv, &cv)?, 1)?;
                        Ok((lhs, cv.scale(&cc.counit(&bv)?)))
                    })(),
                );
            }
            let bv = Vect::basis(b.clone());
            cond2.eq_res(format!("e # {b}"), (|| Ok((self.psi_c(&self.e_vect(), &bv)?, cc.delta(&bv)?)))());
        }
        vec![cond1.finish(), cond2.finish()]
    }

    /// `ψ^C(c⊗e) = e⊗c` for all `c` in the window.
    pub fn check_lemma26_predicate(&self, spec: &SampleSpec) -> CheckReport {
        let mut chk = Check::new("lemma26.predicate");
        for c in self.c.window(spec) {
            let cv = Vect::basis(c.clone());
            chk.eq_res(format!("{c} # e"), (|| Ok((self.psi_c(&cv, &self.e_vect())?, self.e_vect().tensor(&cv))))());
        }
        chk.finish()
    }

    /// The two conditions for the trivial cocycle `ε⊗ε` to be admissible:
    /// `ε(e_A)c^A = c` and `ε(c_A)ε(b^A_B)a^B = ε(b_A)ε(c_B)a^{AB}`.
    pub fn check_trivial_cocycle_admissible(&self, spec: &SampleSpec) -> Vec<CheckReport> {
        let cc = self.c.as_ref();
        let mut unit = Check::new("lemma34.unit");
        let mut cocycle = Check::new("lemma34.cocycle");
        let window = cc.window(spec);
        for c in &window {
            let cv = Vect::basis(c.clone());
            unit.eq_res(format!("{c}"), (|| Ok((counit_at(cc, &self.psi_c(&cv, &self.e_vect())?, 0)?, cv.clone())))());
        }
        let mut s = Sampler::for_stream(spec.seed, "lemma34");
        let trials = match cc.finite_basis() {
            Some(b) => b.len().pow(3),
            None => spec.trials,
        };
        for k in 0..trials {
            let (a, b, c) = match cc.finite_basis() {
                Some(basis) => {
                    let n = basis.len();
                    (basis[k / (n * n)].clone(), basis[(k / n) % n].clone(), basis[k % n].clone())
                }
                None => (cc.sample_basis(&mut s, spec), cc.sample_basis(&mut s, spec), cc.sample_basis(&mut s, spec)),
            };
            let (av, bv, cv) = (Vect::basis(a.clone()), Vect::basis(b.clone()), Vect::basis(c.clone()));
            cocycle.eq_res(
                format!("a={a}; b={b}; c={c}"),
                (|| {
                    // a⊗b⊗c → a⊗c_A⊗b^A → ε(c_A) a⊗b^A → b^A_B⊗a^B → ε(b^A_B) a^B
                    let t = av.tensor(&bv).tensor(&cv);
                    let t = self.psic_at(&t, 1)?;
                    let t = counit_at(cc, &t, 1)?;
                    let t = self.psic_at(&t, 0)?;
                    let lhs = counit_at(cc, &t, 0)?;
                    // a⊗b⊗c → b_A⊗a^A⊗c → ε(b_A) a^A⊗c → c_B⊗a^{AB} → ε(c_B) a^{AB}
                    let t = av.tensor(&bv).tensor(&cv);
                    let t = self.psic_at(&t, 0)?;
                    let t = counit_at(cc, &t, 0)?;
                    let t = self.psic_at(&t, 0)?;
                    let rhs = counit_at(cc, &t, 0)?;
                    Ok((lhs, rhs))
                })(),
            );
        }
        vec![unit.finish(), cocycle.finish()]
    }

    /// Coaction laws: `(id⊗ε)Δ_R = id` and `(id⊗Δ)Δ_R = (Δ_R⊗id)Δ_R`.
    pub fn check_coaction(&self, spec: &SampleSpec) -> CheckReport {
        let mut s = Sampler::for_stream(spec.seed, "coaction");
        let mut chk = Check::new("entwining.coaction");
        let cc = self.c.as_ref();
        for _ in 0..spec.trials {
            let u = self.p.sample(&mut s, spec);
            chk.eq_res(format!("(id#eps) u={u}"), (|| Ok((counit_at(cc, &self.coaction(&u)?, 1)?, u.clone())))());
            chk.eq_res(
                format!("coassoc u={u}"),
                (|| {
                    let d = self.coaction(&u)?;
                    let lhs = delta_at(cc, &d, 1)?;
                    let rhs = apply_at(&d, 0, 1, |l| self.coaction(&Vect::basis(l[0].clone())))?;
                    Ok((lhs, rhs))
                })(),
            );
        }
        chk.finish()
    }

    /// Left coefficients of `ψ(c⊗x)` that leave `M`, for `x` among the
    /// generators of `M`.
    pub fn psi_leaves_m(&self, c: &BasisIndex, x: &Vect) -> Result<bool> {
        Ok(!self.in_m_tensor_c(&self.psi(&Vect::basis(c.clone()), x)?)?)
    }
}
