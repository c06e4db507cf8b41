//! Algebraic invariants under random inputs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crossed_core::entwine::InstanceParams;
use crossed_core::gauge::GaugeTransformation;
use crossed_core::instances::eq2;
use crossed_core::kernel::{SampleSpec, Sampler, Scalar};
use num_rational::BigRational;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::btree_map(-4i64..5, (-9i64..10, 1i64..5), 0..4).prop_map(|m| {
        let coeffs: BTreeMap<i64, BigRational> =
            m.into_iter().map(|(e, (n, d))| (e, BigRational::new(n.into(), d.into()))).collect();
        Scalar::from_coeffs(coeffs)
    })
}

fn spec(seed: u64) -> SampleSpec {
    SampleSpec { seed, trials: 1, ..SampleSpec::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_form_a_ring(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn q_powers_are_units(e in -6i64..7, k in -3i64..4) {
        let x = Scalar::q_pow(e);
        prop_assert!((&x * &x.unit_inverse().unwrap()).is_one());
        prop_assert_eq!(x.pow(k).unwrap(), Scalar::q_pow(e * k));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in scalar(), b in scalar(), q in 1i64..5) {
        let q = BigRational::from_integer(q.into());
        let prod = (&a * &b).eval_q(&q).unwrap();
        prop_assert_eq!(prod, a.eval_q(&q).unwrap() * b.eval_q(&q).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eq2_product_is_associative(seed in any::<u64>()) {
        let e = eq2::make(&InstanceParams::default()).unwrap();
        let p = e.ent.p.as_ref();
        let mut s = Sampler::new(seed);
        let sp = spec(seed);
        let (a, b, c) = (p.sample(&mut s, &sp), p.sample(&mut s, &sp), p.sample(&mut s, &sp));
        let l = p.mul(&p.mul(&a, &b).unwrap(), &c).unwrap();
        let r = p.mul(&a, &p.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(p.mul(&a, &p.one()).unwrap(), a);
    }

    #[test]
    fn group_coalgebra_is_coassociative(k in -20i64..20) {
        let e = eq2::make(&InstanceParams::default()).unwrap();
        let c = e.ent.c.as_ref();
        let x = crossed_core::kernel::Vect::basis(crossed_core::kernel::BasisIndex::GroupLike(k));
        let d = c.delta(&x).unwrap();
        prop_assert_eq!(d, x.tensor(&x));
        prop_assert!(c.counit(&x).unwrap().is_one());
    }

    #[test]
    fn cleft_theta_is_multiplicative(seed in any::<u64>(), s in -2i64..3) {
        let params = InstanceParams { s, ..InstanceParams::default() };
        let e = eq2::make(&params).unwrap();
        let mut smp = Sampler::new(seed);
        let sp = spec(seed);
        let a = e.data.sample_mc(&mut smp, &sp).unwrap();
        let b = e.data.sample_mc(&mut smp, &sp).unwrap();
        let ab = e.triv.theta(&e.data.mul(&a, &b).unwrap()).unwrap();
        let p = e.ent.p.as_ref();
        prop_assert_eq!(ab, p.mul(&e.triv.theta(&a).unwrap(), &e.triv.theta(&b).unwrap()).unwrap());
        prop_assert_eq!(e.triv.theta_inv(&e.triv.theta(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn gauge_inverse_undoes_the_transform(seed in any::<u64>()) {
        let e = eq2::make(&InstanceParams::default()).unwrap();
        let sp = spec(seed);
        let g = GaugeTransformation::random_scalar(Arc::clone(&e.ent), &mut Sampler::new(seed), &sp).unwrap();
        let back = g.inverse().transform(&g.transform(&e.data));
        let mut smp = Sampler::new(seed ^ 1);
        for _ in 0..3 {
            let a = e.data.sample_mc(&mut smp, &sp).unwrap();
            let b = e.data.sample_mc(&mut smp, &sp).unwrap();
            prop_assert_eq!(back.mul(&a, &b).unwrap(), e.data.mul(&a, &b).unwrap());
        }
    }
}
