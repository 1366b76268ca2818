mod common;

use common::{clopen, rng, CASES};
use crossrank::space::{Clopen, SpaceSpec};
use proptest::prelude::*;

fn spaces() -> [SpaceSpec; 2] {
    [SpaceSpec::binary_shift(), SpaceSpec::odometer()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn measure_is_additive(seed: u64, which in 0usize..2) {
        let sp = spaces()[which];
        let mut r = rng(seed);
        let (a, b) = (clopen(&mut r, sp), clopen(&mut r, sp));
        let union = a.union(&b).unwrap();
        let inter = a.intersect(&b).unwrap();
        prop_assert_eq!(union.measure() + inter.measure(), a.measure() + b.measure());
        prop_assert_eq!(a.complement().measure() + a.measure(), Clopen::full(sp).measure());
        prop_assert_eq!(a.difference(&b).unwrap().union(&inter).unwrap(), a.clone());
    }

    #[test]
    fn transformation_is_a_measure_preserving_automorphism(seed: u64, which in 0usize..2, k in -5i64..=5) {
        let sp = spaces()[which];
        let mut r = rng(seed);
        let (a, b) = (clopen(&mut r, sp), clopen(&mut r, sp));
        prop_assert_eq!(a.image(k).image(-k), a.clone());
        prop_assert_eq!(a.image(k).measure(), a.measure());
        prop_assert_eq!(a.intersect(&b).unwrap().image(k), a.image(k).intersect(&b.image(k)).unwrap());
        prop_assert_eq!(a.complement().image(k), a.image(k).complement());
        prop_assert_eq!(a.image(k).image(1), a.image(k + 1));
    }

    /// Equal sets compare equal however they were built.
    #[test]
    fn representations_are_canonical(seed: u64, which in 0usize..2) {
        let sp = spaces()[which];
        let mut r = rng(seed);
        let a = clopen(&mut r, sp);
        let b = clopen(&mut r, sp);
        prop_assert_eq!(a.intersect(&Clopen::full(sp)).unwrap(), a.clone());
        prop_assert_eq!(a.union(&a.complement()).unwrap(), Clopen::full(sp));
        prop_assert!(a.intersect(&a.complement()).unwrap().is_empty());
        prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        prop_assert_eq!(a.contains(&a.intersect(&b).unwrap()).unwrap(), true);
        prop_assert_eq!(a.is_disjoint(&b).unwrap(), a.intersect(&b).unwrap().is_empty());
    }
}
