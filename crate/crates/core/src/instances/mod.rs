//! Registered instances.

pub mod eq2;
pub mod mutations;
pub mod toys;

use crate::entwine::InstanceParams;
use crate::error::{Error, Result};
use crate::ncalg::FiniteGroup;

use toys::{Bialgebra, DualToy, ToyKind};

pub enum Instance {
    Eq2(Box<eq2::Eq2>),
    Bialgebra(Box<Bialgebra>),
    Dual(Box<DualToy>),
}

/// Largest `N` accepted for the finite toys.
pub const MAX_TOY_ORDER: usize = 6;

/// Name patterns and descriptions for `list-instances`.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("eq2", "quantum Euclidean group over the quantum hyperboloid, C = kZ"),
        ("bialg-z<N>", "C = kZ_N entwined with k[Z_N x Z_N]; psi preserves M (N <= 6)"),
        ("flip-z<N>, flip-s3", "dual toy, psi(g # h) = h # g"),
        ("conj-z<N>, conj-s3", "dual toy, psi(g # h) = h # h^-1 g h"),
        ("regular-z<N>, regular-s3", "dual toy, psi(g # h) = h # g h; dual cleft with Phi = id"),
    ]
}

fn toy_group(spec: &str) -> Result<FiniteGroup> {
    if spec == "s3" {
        return Ok(FiniteGroup::s3());
    }
    let n = spec
        .strip_prefix('z')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|n| (1..=MAX_TOY_ORDER).contains(n))
        .ok_or_else(|| Error::Invalid(format!("unknown group {spec}; expected z1..z{MAX_TOY_ORDER} or s3")))?;
    Ok(FiniteGroup::cyclic(n))
}

pub fn lookup(name: &str, params: &InstanceParams) -> Result<Instance> {
    if name == "eq2" {
        return Ok(Instance::Eq2(Box::new(eq2::make(params)?)));
    }
    let (kind, rest) = name.split_once('-').ok_or_else(|| Error::Invalid(format!("unknown instance {name}")))?;
    match kind {
        "bialg" => {
            let n = rest
                .strip_prefix('z')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|n| (1..=MAX_TOY_ORDER).contains(n))
                .ok_or_else(|| Error::Invalid(format!("unknown instance {name}")))?;
            Ok(Instance::Bialgebra(Box::new(toys::bialgebra(n)?)))
        }
        "flip" | "conj" | "regular" => {
            let kind = match kind {
                "flip" => ToyKind::Flip,
                "conj" => ToyKind::Conj,
                _ => ToyKind::Regular,
            };
            Ok(Instance::Dual(Box::new(toys::dual_toy(kind, toy_group(rest)?)?)))
        }
        _ => Err(Error::Invalid(format!("unknown instance {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_names() {
        let p = InstanceParams::default();
        assert!(matches!(lookup("eq2", &p), Ok(Instance::Eq2(_))));
        assert!(matches!(lookup("bialg-z3", &p), Ok(Instance::Bialgebra(_))));
        assert!(matches!(lookup("conj-s3", &p), Ok(Instance::Dual(_))));
        assert!(matches!(lookup("regular-z6", &p), Ok(Instance::Dual(_))));
        assert!(lookup("regular-z7", &p).is_err());
        assert!(lookup("nope", &p).is_err());
    }
}
