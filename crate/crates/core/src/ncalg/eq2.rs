//! The quantum Euclidean group: generators v, v⁻¹, n, n̄ with
//! vn = q²nv, vn̄ = q²n̄v, nn̄ = q²n̄n and vv⁻¹ = v⁻¹v = 1.

use std::collections::HashMap;
use std::sync::RwLock;

use super::rewrite::{Presentation, Rule, Strategy};
use super::Algebra;
use crate::error::{Error, Result};
use crate::kernel::{BasisIndex, SampleSpec, Sampler, Scalar, Vect};

/// Generator symbols in the order used by the word order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    V = 0,
    Vi = 1,
    N = 2,
    Nb = 3,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::V, Gen::Vi, Gen::N, Gen::Nb];

    pub fn index(self) -> BasisIndex {
        match self {
            Gen::V => BasisIndex::mono(1, 0, 0),
            Gen::Vi => BasisIndex::mono(-1, 0, 0),
            Gen::N => BasisIndex::mono(0, 1, 0),
            Gen::Nb => BasisIndex::mono(0, 0, 1),
        }
    }

    pub fn name(self) -> &'static str {
        ["v", "vi", "n", "nb"][self as usize]
    }

    fn from_u8(g: u8) -> Gen {
        Gen::ALL[g as usize]
    }
}

pub struct Eq2Algebra {
    q: Scalar,
    pres: Presentation,
    cache: RwLock<HashMap<(BasisIndex, BasisIndex), Vect>>,
}

impl Eq2Algebra {
    /// `q` is the formal variable or a nonzero rational.
    pub fn new(q: Scalar) -> Result<Self> {
        let q2 = q.pow(2)?;
        let qm2 = q.pow(-2)?;
        let (v, vi, n, nb) = (0u8, 1u8, 2u8, 3u8);
        let rules = vec![
            Rule::new(&[n, v], vec![(qm2.clone(), vec![v, n])]),
            Rule::new(&[nb, v], vec![(qm2.clone(), vec![v, nb])]),
            Rule::new(&[nb, n], vec![(qm2, vec![n, nb])]),
            Rule::new(&[v, vi], vec![(Scalar::one(), vec![])]),
            Rule::new(&[vi, v], vec![(Scalar::one(), vec![])]),
            // consequences of the relations above, needed for confluence
            Rule::new(&[n, vi], vec![(q2.clone(), vec![vi, n])]),
            Rule::new(&[nb, vi], vec![(q2, vec![vi, nb])]),
        ];
        Ok(Eq2Algebra {
            q,
            pres: Presentation::new(&["v", "vi", "n", "nb"], rules),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn gen(&self, g: Gen) -> Vect {
        Vect::basis(g.index())
    }

    pub fn mono(k: i64, a: u32, b: u32) -> Vect {
        Vect::basis(BasisIndex::mono(k, a, b))
    }

    /// `v^k`, also for negative `k`.
    pub fn v_pow(k: i64) -> Vect {
        Self::mono(k, 0, 0)
    }

    pub fn mono_word(k: i64, a: u32, b: u32) -> Vec<u8> {
        let mut w = vec![if k < 0 { 1u8 } else { 0u8 }; k.unsigned_abs() as usize];
        w.extend(std::iter::repeat_n(2u8, a as usize));
        w.extend(std::iter::repeat_n(3u8, b as usize));
        w
    }

    fn word_to_mono(w: &[u8]) -> Result<BasisIndex> {
        let (mut k, mut a, mut b) = (0i64, 0u32, 0u32);
        let mut stage = 0;
        for &g in w {
            match (g, stage) {
                (0, 0) if k >= 0 => k += 1,
                (1, 0) if k <= 0 => k -= 1,
                (2, s) if s <= 1 => {
                    stage = 1;
                    a += 1
                }
                (3, _) => {
                    stage = 2;
                    b += 1
                }
                _ => return Err(Error::Invalid(format!("word {w:?} is not in normal form"))),
            }
        }
        Ok(BasisIndex::mono(k, a, b))
    }

    /// Normal form of a combination of free words in the generators.
    pub fn normal_form(&self, words: &Vect, strat: Strategy) -> Result<Vect> {
        let nf = self.pres.normal_form(words, strat)?;
        let mut out = Vect::zero();
        for (i, c) in nf.iter() {
            match i {
                BasisIndex::Word(w) => out.add_term(c.clone(), Self::word_to_mono(w)?),
                other => return Err(Error::Invalid(format!("unexpected index {other}"))),
            }
        }
        Ok(out)
    }

    /// Element represented by an ordered product of generators.
    pub fn from_gens(&self, gens: &[Gen]) -> Result<Vect> {
        let w: Vec<u8> = gens.iter().map(|g| *g as u8).collect();
        self.normal_form(&Vect::basis(BasisIndex::Word(w)), Strategy::Leftmost)
    }

    /// The defining relations as combinations of generator words, each of
    /// which must vanish in the algebra.
    pub fn defining_relations(&self) -> Vec<(String, Vec<(Scalar, Vec<Gen>)>)> {
        use Gen::*;
        let q2 = self.q.pow(2).expect("q is a unit");
        let m = -&q2;
        vec![
            ("v*n - q^2*n*v".into(), vec![(Scalar::one(), vec![V, N]), (m.clone(), vec![N, V])]),
            ("v*nb - q^2*nb*v".into(), vec![(Scalar::one(), vec![V, Nb]), (m.clone(), vec![Nb, V])]),
            ("n*nb - q^2*nb*n".into(), vec![(Scalar::one(), vec![N, Nb]), (m, vec![Nb, N])]),
            ("v*vi - 1".into(), vec![(Scalar::one(), vec![V, Vi]), (Scalar::int(-1), vec![])]),
            ("vi*v - 1".into(), vec![(Scalar::one(), vec![Vi, V]), (Scalar::int(-1), vec![])]),
        ]
    }

    fn parts(i: &BasisIndex) -> Result<(i64, u32, u32)> {
        match i {
            BasisIndex::Monomial { k, a, b } => Ok((*k, *a, *b)),
            other => Err(Error::UndefinedOnBasis { map: "E_q(2) product".into(), index: other.clone() }),
        }
    }
}

impl Algebra for Eq2Algebra {
    fn name(&self) -> String {
        "E_q(2)".into()
    }

    fn one(&self) -> Vect {
        Self::mono(0, 0, 0)
    }

    fn mul_basis(&self, x: &BasisIndex, y: &BasisIndex) -> Result<Vect> {
        let key = (x.clone(), y.clone());
        if let Some(v) = self.cache.read().expect("cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let (k1, a1, b1) = Self::parts(x)?;
        let (k2, a2, b2) = Self::parts(y)?;
        let mut w = Self::mono_word(k1, a1, b1);
        w.extend(Self::mono_word(k2, a2, b2));
        let v = self.normal_form(&Vect::basis(BasisIndex::Word(w)), Strategy::Leftmost)?;
        self.cache.write().expect("cache poisoned").insert(key, v.clone());
        Ok(v)
    }

    fn factor(&self, x: &BasisIndex) -> Result<Vec<BasisIndex>> {
        let (k, a, b) = Self::parts(x)?;
        Ok(Self::mono_word(k, a, b).into_iter().map(|g| Gen::from_u8(g).index()).collect())
    }

    /// Only `λ·v^k` with `λ` a scalar unit is recognized.
    fn recognize_unit(&self, x: &Vect) -> Option<Vect> {
        if x.len() != 1 {
            return None;
        }
        let (i, c) = x.iter().next()?;
        match i {
            BasisIndex::Monomial { k, a: 0, b: 0 } => {
                Some(Vect::term(c.unit_inverse().ok()?, BasisIndex::mono(-k, 0, 0)))
            }
            _ => None,
        }
    }

    fn sample_basis(&self, s: &mut Sampler, spec: &SampleSpec) -> BasisIndex {
        let d = spec.max_degree as i64;
        let k = s.int_in(-d, d);
        let rest = d - k.abs();
        let a = s.int_in(0, rest);
        let b = s.int_in(0, rest - a);
        BasisIndex::mono(k, a as u32, b as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Status;

    fn alg() -> Eq2Algebra {
        Eq2Algebra::new(Scalar::q()).unwrap()
    }

    /// Closed form for products of normal monomials:
    /// v^k n^a n̄^b · v^k' n^a' n̄^b' = q^{-2k'(a+b) - 2ba'} v^{k+k'} n^{a+a'} n̄^{b+b'}.
    fn closed_form(x: (i64, u32, u32), y: (i64, u32, u32)) -> Vect {
        let e = -2 * y.0 * (x.1 + x.2) as i64 - 2 * (x.2 * y.1) as i64;
        Vect::term(Scalar::q_pow(e), BasisIndex::mono(x.0 + y.0, x.1 + y.1, x.2 + y.2))
    }

    #[test]
    fn commutation_rule() {
        let a = alg();
        let nv = a.from_gens(&[Gen::N, Gen::V]).unwrap();
        assert_eq!(nv, Vect::term(Scalar::q_pow(-2), BasisIndex::mono(1, 1, 0)));
        assert_eq!(a.from_gens(&[Gen::V, Gen::Vi]).unwrap(), a.one());
    }

    #[test]
    fn presentation_is_confluent_and_terminating() {
        let a = alg();
        assert_eq!(a.presentation().check_local_confluence().status, Status::Pass);
        assert_eq!(a.presentation().check_termination().status, Status::Pass);
    }

    #[test]
    fn products_match_closed_form() {
        let a = alg();
        for x in [(2, 1, 0), (-1, 0, 2), (0, 1, 1), (1, 2, 1)] {
            for y in [(-3, 1, 1), (0, 0, 2), (2, 2, 0), (-1, 1, 0)] {
                let got = a.mul_basis(&BasisIndex::mono(x.0, x.1, x.2), &BasisIndex::mono(y.0, y.1, y.2)).unwrap();
                assert_eq!(got, closed_form(x, y), "{x:?} * {y:?}");
            }
        }
    }

    #[test]
    fn relations_vanish() {
        let a = alg();
        for (name, rel) in a.defining_relations() {
            let mut s = Vect::zero();
            for (c, gens) in rel {
                s.add_scaled(&c, &a.from_gens(&gens).unwrap());
            }
            assert!(s.is_zero(), "{name}");
        }
    }

    #[test]
    fn unit_recognition() {
        let a = alg();
        assert_eq!(a.recognize_unit(&Eq2Algebra::v_pow(3)), Some(Eq2Algebra::v_pow(-3)));
        let x = Vect::term(&Scalar::int(2) * &Scalar::q(), BasisIndex::mono(-1, 0, 0));
        let inv = a.recognize_unit(&x).unwrap();
        assert_eq!(
            inv,
            Vect::term(
                Scalar::monomial(num_rational::BigRational::new(1.into(), 2.into()), -1),
                BasisIndex::mono(1, 0, 0)
            )
        );
        assert_eq!(a.mul(&x, &inv).unwrap(), a.one());
        let z = &a.gen(Gen::V) + &a.gen(Gen::N);
        assert!(a.recognize_unit(&z).is_none());
    }
}
