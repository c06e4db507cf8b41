//! Deliberate corruptions used to confirm that the checkers can fail.

use std::sync::Arc;

use crate::cleft::Trivialization;
use crate::dualcross::DualCrossedData;
use crate::entwine::{InstanceParams, PsiGen};
use crate::error::{Error, Result};
use crate::instances::eq2::{self, Eq2};
use crate::instances::toys::DualToy;
use crate::kernel::tensor::legs;
use crate::kernel::{BasisIndex, LinMap, Scalar, Vect};
use crate::ncalg::{elem, elem_of, Gen};

/// Name and one-line description of every mutation.
pub const MUTATIONS: &[(&str, &str)] = &[
    ("psi-shift", "psi(c_p # v) := v # c_p"),
    ("psic-shift", "psiC(c_p # c_r) := c_r # c_{p+r-s+1}"),
    ("sigma-scale", "sigma := q * sigma"),
    ("sigma-cubic", "sigma(c_p, c_r) := 2^((p-s)(r-s)^2) * sigma(c_p, c_r)"),
    ("rho-shift", "rho(c_p, u) := rho(c_{p+1}, u)"),
    ("dual-sigma", "dual sigma(m) := eps(m) g # 1 for a fixed g != 1"),
    ("dual-rho", "dual rho(c) := (g # 1) rho(c) for a fixed g != 1"),
    ("dual-sigma-twist", "dual sigma(m) += 2 eps(m) (g - 1) # (g - 1), g of largest order; keeps (i')-(iv')"),
];

pub fn is_dual(name: &str) -> bool {
    name.starts_with("dual-")
}

fn unknown(name: &str) -> Error {
    Error::Invalid(format!("unknown mutation {name}"))
}

fn grouplike(i: &BasisIndex) -> Result<i64> {
    i.as_group_like().ok_or_else(|| Error::UndefinedOnBasis { map: "mutation".into(), index: i.clone() })
}

/// The E_q(2) instance with one corruption applied. ψ-level mutations keep
/// `ρ` and `σ` as they were.
pub fn mutate_eq2(e: &Eq2, params: &InstanceParams, name: &str) -> Result<Eq2> {
    let s = params.s;
    let with_ent = |ent: Arc<crate::entwine::EntwiningData>| {
        let triv = Trivialization::new(ent.clone(), e.triv.phi.clone(), e.triv.phi_inv.clone());
        Eq2 { data: e.data.with_entwining(ent.clone()), ent, triv }
    };
    Ok(match name {
        "psi-shift" => {
            let good = eq2::psi_gen(params);
            let bad: PsiGen = Arc::new(move |c, g| {
                if *g == Gen::V.index() {
                    Ok(Vect::basis(BasisIndex::pair(g.clone(), c.clone())))
                } else {
                    good(c, g)
                }
            });
            with_ent(Arc::new(e.ent.with_psi_gen(bad)))
        }
        "psic-shift" => {
            let psi_c = LinMap::new("psiC_shift", move |i| {
                let l = legs(i);
                let (p, r) = (grouplike(&l[0])?, grouplike(&l[1])?);
                Ok(Vect::basis(BasisIndex::pair(BasisIndex::GroupLike(r), BasisIndex::GroupLike(p + r - s + 1))))
            });
            with_ent(Arc::new(e.ent.with_psi_c(psi_c)))
        }
        "sigma-scale" => {
            let sigma = e.data.sigma.clone();
            let scaled = LinMap::new("sigma_scale", move |i| Ok(sigma.apply_basis(i)?.scale(&Scalar::q())));
            Eq2 { data: e.data.with_sigma(scaled), ent: e.ent.clone(), triv: e.triv.clone() }
        }
        "sigma-cubic" => {
            let sigma = e.data.sigma.clone();
            let cubic = LinMap::new("sigma_cubic", move |i| {
                let l = legs(i);
                let (p, r) = (grouplike(&l[0])?, grouplike(&l[1])?);
                let k = Scalar::int(2).pow((p - s) * (r - s) * (r - s))?;
                Ok(sigma.apply_basis(i)?.scale(&k))
            });
            Eq2 { data: e.data.with_sigma(cubic), ent: e.ent.clone(), triv: e.triv.clone() }
        }
        "rho-shift" => {
            let rho = e.data.rho.clone();
            let shifted = LinMap::new("rho_shift", move |i| {
                let l = legs(i);
                let p = grouplike(&l[0])?;
                rho.apply2(&BasisIndex::GroupLike(p + 1), &l[1])
            });
            Eq2 { data: e.data.with_rho(shifted), ent: e.ent.clone(), triv: e.triv.clone() }
        }
        _ => return Err(unknown(name)),
    })
}

/// The toy's dual data with one corruption applied.
pub fn mutate_dual(toy: &DualToy, name: &str) -> Result<DualCrossedData> {
    let data = toy.data();
    let n = toy.group.order();
    if n < 2 {
        return Err(Error::Invalid("dual mutations need a nontrivial group".into()));
    }
    Ok(match name {
        "dual-sigma" => {
            let c = toy.ent.c.clone();
            data.with_sigma_bar(LinMap::new("sigma_bar_shift", move |i| {
                let k = c.counit_basis(i)?;
                Ok(Vect::basis(BasisIndex::pair(elem(1), elem(0))).scale(&k))
            }))
        }
        "dual-sigma-twist" => {
            // killed by κ on either leg, so the normalization conditions survive
            let (sigma, c) = (data.sigma_bar.clone(), toy.ent.c.clone());
            let g = toy.group.max_order_element();
            let twist = Vect::from_terms([
                (Scalar::int(2), BasisIndex::pair(elem(g), elem(g))),
                (Scalar::int(-2), BasisIndex::pair(elem(g), elem(0))),
                (Scalar::int(-2), BasisIndex::pair(elem(0), elem(g))),
                (Scalar::int(2), BasisIndex::pair(elem(0), elem(0))),
            ]);
            data.with_sigma_bar(LinMap::new("sigma_bar_twist", move |i| {
                Ok(&sigma.apply_basis(i)? + &twist.scale(&c.counit_basis(i)?))
            }))
        }
        "dual-rho" => {
            let (rho, g) = (data.rho_bar.clone(), toy.group.clone());
            data.with_rho_bar(LinMap::new("rho_bar_shift", move |i| {
                let t = rho.apply_basis(i)?;
                let mut out = Vect::zero();
                for (j, k) in t.iter() {
                    let l = legs(j);
                    let u = elem_of(&l[0], n)?;
                    out.add_term(k.clone(), BasisIndex::pair(elem(g.mul(1, u)), l[1].clone()));
                }
                Ok(out)
            }))
        }
        _ => return Err(unknown(name)),
    })
}
