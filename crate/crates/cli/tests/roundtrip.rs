//! Rendering an element and parsing it back gives the same element.

use crossed_cli::ExprContext;
use crossed_core::entwine::InstanceParams;
use crossed_core::instances::eq2;
use crossed_core::kernel::{SampleSpec, Sampler};
use num_rational::BigRational;
use proptest::prelude::*;

fn context(q: Option<i64>) -> (ExprContext, eq2::Eq2) {
    let params = InstanceParams { q: q.map(|q| BigRational::from_integer(q.into())), ..InstanceParams::default() };
    let e = eq2::make(&params).unwrap();
    (ExprContext::eq2(e.ent.p.clone(), &params).unwrap(), e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elements_round_trip(seed in any::<u64>(), q in prop::option::of(2i64..5)) {
        let (cx, e) = context(q);
        let spec = SampleSpec { seed, ..SampleSpec::default() };
        let x = e.ent.p.sample(&mut Sampler::new(seed), &spec);
        let back = cx.parse(&x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn tensors_round_trip(seed in any::<u64>()) {
        let (cx, e) = context(None);
        let spec = SampleSpec { seed, ..SampleSpec::default() };
        let t = e.data.sample_mc(&mut Sampler::new(seed), &spec).unwrap();
        let back = cx.parse_tensor(&t.to_string()).unwrap();
        prop_assert_eq!(back, t);
    }
}
