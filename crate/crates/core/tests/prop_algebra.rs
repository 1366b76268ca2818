mod common;

use common::{fields, rng, CASES};
use crossrank::algebra::{fourier, inverse_fourier, quotient_at_orbit};
use crossrank::verify::gen;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn crossed_product_ring_axioms(seed: u64, which in 0usize..5) {
        let k = &fields()[which];
        let mut r = rng(seed);
        let (a, b, c) = (gen::crossed(&mut r, k), gen::crossed(&mut r, k), gen::crossed(&mut r, k));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn star_is_an_involutive_anti_homomorphism(seed: u64, which in 0usize..5) {
        let k = &fields()[which];
        let mut r = rng(seed);
        let (a, b) = (gen::crossed(&mut r, k), gen::crossed(&mut r, k));
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!((&a + &b).star(), &a.star() + &b.star());
    }

    #[test]
    fn fourier_is_a_star_isomorphism(seed: u64) {
        let k = &fields()[1];
        let mut r = rng(seed);
        let (x, y) = (gen::group_element(&mut r, k), gen::group_element(&mut r, k));
        let (fx, fy) = (fourier(&x).unwrap(), fourier(&y).unwrap());
        prop_assert_eq!(fourier(&x.try_mul(&y).unwrap()).unwrap(), &fx * &fy);
        prop_assert_eq!(fourier(&x.try_add(&y).unwrap()).unwrap(), &fx + &fy);
        prop_assert_eq!(fourier(&x.star()).unwrap(), fx.star());
        prop_assert_eq!(inverse_fourier(&fx).unwrap(), x);
        let a = gen::crossed(&mut r, k);
        prop_assert_eq!(fourier(&inverse_fourier(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn quotient_is_multiplicative(seed: u64, which in 0usize..5) {
        let k = &fields()[which];
        let mut r = rng(seed);
        let (a, b) = (gen::crossed(&mut r, k), gen::crossed(&mut r, k));
        let y = gen::periodic_point(&mut r);
        let (qa, qb) = (quotient_at_orbit(&a, &y).unwrap(), quotient_at_orbit(&b, &y).unwrap());
        prop_assert!(quotient_at_orbit(&(&a * &b), &y).unwrap() == qa.mul(&qb));
        prop_assert!(quotient_at_orbit(&(&a + &b), &y).unwrap() == qa.add(&qb));
        prop_assert!(quotient_at_orbit(&a.star(), &y).unwrap() == qa.star());
    }
}
