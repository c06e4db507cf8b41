//! Leg bookkeeping for multi-fold tensors.
//!
//! A basis vector of `V₁⊗…⊗Vₙ` is a left-nested chain of `Pair`s. Every
//! structure map in the crate is applied to a contiguous run of legs with
//! [`apply_at`], which keeps Sweedler-style computations readable: the leg
//! list is the Sweedler expression.

use super::basis::BasisIndex;
use super::scalar::Scalar;
use super::vect::Vect;
use crate::error::Result;

/// Legs of a tensor index. `Unit` has no legs; nested pairs are flattened
/// completely.
pub fn legs(i: &BasisIndex) -> Vec<BasisIndex> {
    fn walk(i: &BasisIndex, out: &mut Vec<BasisIndex>) {
        match i {
            BasisIndex::Pair(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            BasisIndex::Unit => {}
            other => out.push(other.clone()),
        }
    }
    let mut out = Vec::new();
    walk(i, &mut out);
    out
}

pub fn from_legs<I: IntoIterator<Item = BasisIndex>>(legs: I) -> BasisIndex {
    let legs: Vec<BasisIndex> = legs.into_iter().filter(|l| *l != BasisIndex::Unit).collect();
    if legs.is_empty() {
        BasisIndex::Unit
    } else {
        BasisIndex::tensor(legs)
    }
}

/// Tensor product of several vectors in canonical left-nested form.
pub fn tensor_all(vs: &[&Vect]) -> Vect {
    let mut acc = Vect::basis(BasisIndex::Unit);
    for v in vs {
        let mut next = Vect::zero();
        for (i, a) in acc.iter() {
            for (j, b) in v.iter() {
                let mut l = legs(i);
                l.extend(legs(j));
                next.add_term(a * b, from_legs(l));
            }
        }
        acc = next;
    }
    acc
}

/// Number of legs of the terms of `v`, if they all agree.
pub fn arity(v: &Vect) -> Option<usize> {
    let mut n = None;
    for (i, _) in v.iter() {
        let k = legs(i).len();
        match n {
            None => n = Some(k),
            Some(m) if m != k => return None,
            _ => {}
        }
    }
    n
}

/// Replaces legs `pos..pos+width` of every term of `v` by the legs of
/// `f(those legs)`, extending linearly. Output legs equal to `Unit` vanish,
/// so counits and scalar-valued maps contract legs away.
pub fn apply_at(v: &Vect, pos: usize, width: usize, mut f: impl FnMut(&[BasisIndex]) -> Result<Vect>) -> Result<Vect> {
    let mut out = Vect::zero();
    for (i, c) in v.iter() {
        let l = legs(i);
        assert!(pos + width <= l.len(), "leg range {pos}..{} out of bounds for {} legs", pos + width, l.len());
        let image = f(&l[pos..pos + width])?;
        for (j, d) in image.iter() {
            let mut nl: Vec<BasisIndex> = l[..pos].to_vec();
            nl.extend(legs(j));
            nl.extend_from_slice(&l[pos + width..]);
            out.add_term(c * d, from_legs(nl));
        }
    }
    Ok(out)
}

/// Contracts a leg with a scalar-valued function.
pub fn contract_at(v: &Vect, pos: usize, mut f: impl FnMut(&BasisIndex) -> Result<Scalar>) -> Result<Vect> {
    apply_at(v, pos, 1, |l| Ok(Vect::scalar(f(&l[0])?)))
}

/// Swaps legs `pos` and `pos+1`.
pub fn swap_at(v: &Vect, pos: usize) -> Vect {
    apply_at(v, pos, 2, |l| Ok(Vect::basis(BasisIndex::pair(l[1].clone(), l[0].clone())))).expect("swap cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisIndex::GroupLike as G;

    #[test]
    fn tensor_associativity_up_to_flattening() {
        let u = Vect::from_terms([(Scalar::int(2), G(0)), (Scalar::one(), G(1))]);
        let v = Vect::basis(G(5));
        let w = Vect::from_terms([(Scalar::q(), G(2)), (Scalar::int(-1), G(3))]);
        let left = u.tensor(&v).tensor(&w).normalize_tensors();
        let right = u.tensor(&v.tensor(&w)).normalize_tensors();
        assert_eq!(left, right);
        assert_eq!(left, tensor_all(&[&u, &v, &w]));
    }

    #[test]
    fn apply_and_contract() {
        let v = tensor_all(&[&Vect::basis(G(1)), &Vect::basis(G(2)), &Vect::basis(G(3))]);
        let dup = apply_at(&v, 1, 1, |l| Ok(Vect::basis(BasisIndex::pair(l[0].clone(), l[0].clone())))).unwrap();
        assert_eq!(legs(dup.support().next().unwrap()), vec![G(1), G(2), G(2), G(3)]);
        let c = contract_at(&dup, 0, |_| Ok(Scalar::int(7))).unwrap();
        assert_eq!(c, Vect::term(Scalar::int(7), BasisIndex::tensor([G(2), G(2), G(3)])));
        assert_eq!(arity(&c), Some(3));
        let s = swap_at(&c, 1);
        assert_eq!(legs(s.support().next().unwrap()), vec![G(2), G(3), G(2)]);
    }

    #[test]
    fn full_contraction_gives_scalar() {
        let v = Vect::basis(G(4));
        let c = contract_at(&v, 0, |_| Ok(Scalar::int(3))).unwrap();
        assert_eq!(c, Vect::scalar(Scalar::int(3)));
    }
}
