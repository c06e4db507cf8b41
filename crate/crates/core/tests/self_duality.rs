//! Transposing the crossed coproduct on `M⊗P` must give an associative
//! unital algebra on the dual basis. On the flip toy with trivial data that
//! algebra is the pointwise algebra of functions on the basis.

use std::collections::HashMap;

use crossed_core::coalg::Coalgebra;
use crossed_core::dualcross::DualCrossedData;
use crossed_core::instances::toys::{dual_toy, ToyKind};
use crossed_core::kernel::tensor::legs;
use crossed_core::kernel::{BasisIndex, Scalar, Vect};
use crossed_core::ncalg::{Algebra, FiniteGroup, TableAlgebra};

fn transpose(data: &DualCrossedData) -> TableAlgebra {
    let mb = data.m.finite_basis().unwrap();
    let pb = data.ent.p.finite_basis().unwrap();
    let basis: Vec<BasisIndex> =
        mb.iter().flat_map(|m| pb.iter().map(move |u| BasisIndex::pair(m.clone(), u.clone()))).collect();
    let mut products: HashMap<(BasisIndex, BasisIndex), Vect> = HashMap::new();
    for a in &basis {
        for b in &basis {
            products.insert((a.clone(), b.clone()), Vect::zero());
        }
    }
    let mut one = Vect::zero();
    for x in &basis {
        let v = Vect::basis(x.clone());
        for (j, k) in data.coproduct(&v).unwrap().iter() {
            let l = legs(j);
            let (a, b) = (BasisIndex::pair(l[0].clone(), l[1].clone()), BasisIndex::pair(l[2].clone(), l[3].clone()));
            products.get_mut(&(a, b)).unwrap().add_term(k.clone(), x.clone());
        }
        one.add_term(data.counit(&v).unwrap().as_scalar(), x.clone());
    }
    TableAlgebra::new("dual", basis, one, products)
}

fn assert_associative_unital(a: &TableAlgebra) {
    let basis = a.finite_basis().unwrap();
    for x in &basis {
        let x = Vect::basis(x.clone());
        assert_eq!(a.mul(&a.one(), &x).unwrap(), x);
        assert_eq!(a.mul(&x, &a.one()).unwrap(), x);
        for y in &basis {
            let xy = a.mul(&x, &Vect::basis(y.clone())).unwrap();
            for z in &basis {
                let z = Vect::basis(z.clone());
                let yz = a.mul(&Vect::basis(y.clone()), &z).unwrap();
                assert_eq!(a.mul(&xy, &z).unwrap(), a.mul(&x, &yz).unwrap());
            }
        }
    }
}

#[test]
fn flip_toy_transposes_to_functions() {
    for n in 1..=4 {
        let toy = dual_toy(ToyKind::Flip, FiniteGroup::cyclic(n)).unwrap();
        let a = transpose(&toy.data());
        let basis = a.finite_basis().unwrap();
        assert_eq!(basis.len(), n * n);
        let mut sum = Vect::zero();
        for x in &basis {
            sum.add_term(Scalar::one(), x.clone());
            for y in &basis {
                let xy = a.mul_basis(x, y).unwrap();
                let want = if x == y { Vect::basis(x.clone()) } else { Vect::zero() };
                assert_eq!(xy, want, "{x} * {y}");
            }
        }
        assert_eq!(a.one(), sum);
    }
}

#[test]
fn transposed_coproducts_are_algebras() {
    let toys = [
        dual_toy(ToyKind::Flip, FiniteGroup::cyclic(3)).unwrap(),
        dual_toy(ToyKind::Conj, FiniteGroup::s3()).unwrap(),
        dual_toy(ToyKind::Regular, FiniteGroup::cyclic(4)).unwrap(),
        dual_toy(ToyKind::Regular, FiniteGroup::s3()).unwrap(),
    ];
    for toy in &toys {
        assert_associative_unital(&transpose(&toy.data()));
    }
}
