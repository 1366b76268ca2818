use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::algebra::{CrossedElement, CrossedMatrix};
use crate::field::{FieldContext, FieldExt};
use crate::matrix::{oracle::naive_rank, ExactMatrix};
use crate::space::Clopen;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow2(e: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e)
}

fn lamp(n: usize, cutoff: usize) -> Arc<ComponentSet> {
    Arc::new(enumerate_components(&Arc::new(PartitionScheme::lamplighter(n)), cutoff).unwrap())
}

fn as_custom(s: &PartitionScheme) -> Arc<PartitionScheme> {
    Arc::new(PartitionScheme::new(s.e().clone(), s.parts().to_vec()).unwrap())
}

fn key(cs: &ComponentSet) -> Vec<(usize, Vec<u32>, Clopen, BigRational)> {
    cs.components()
        .iter()
        .map(|w| (w.length, w.label.clone(), w.clopen.clone(), w.measure.clone()))
        .collect()
}

#[test]
fn fast_paths_agree_with_search() {
    let schemes = [
        PartitionScheme::lamplighter(0),
        PartitionScheme::lamplighter(1),
        PartitionScheme::lamplighter_with(0, BlockConvention::Zeros),
        PartitionScheme::lamplighter_with(1, BlockConvention::Zeros),
        PartitionScheme::odometer(1).unwrap(),
        PartitionScheme::odometer(2).unwrap(),
        PartitionScheme::odometer(3).unwrap(),
    ];
    for s in schemes {
        let fast = enumerate_components(&Arc::new(s.clone()), 9).unwrap();
        let slow = enumerate_generic(&as_custom(&s), 9, 100_000).unwrap();
        assert_eq!(key(&fast), key(&slow), "{s:?}");
        assert_eq!(fast.covered_mass(), slow.covered_mass());
    }
}

#[test]
fn level_zero_components() {
    let cs = lamp(0, 5);
    assert_eq!(cs.len(), 5);
    for (d, w) in (1..=5).zip(cs.components()) {
        assert_eq!(w.length, d);
        assert_eq!(w.measure, pow2(d + 1));
    }
}

#[test]
fn odometer_single_component() {
    let s = Arc::new(PartitionScheme::odometer(2).unwrap());
    let cs = enumerate_components(&s, 4).unwrap();
    assert_eq!(cs.len(), 1);
    assert_eq!(cs.components()[0].length, 4);
    assert_eq!(&cs.components()[0].clopen, s.e());
    assert!(cs.tail_mass().is_zero());
    assert!(enumerate_components(&s, 3).unwrap().is_empty());
}

#[test]
fn census_follows_macci() {
    for n in 0..3 {
        let m = 2 * n + 1;
        let cutoff = m + 7;
        let census = lamp(n, cutoff).length_census();
        assert_eq!(census[1], 1);
        for (len, &c) in census.iter().enumerate().skip(2) {
            let expect = if len > m { macci(m, len - m) } else { 0u32.into() };
            assert_eq!(num_bigint::BigUint::from(c), expect, "n={n} len={len}");
        }
    }
}

#[test]
fn tail_closed_form_matches_enumeration() {
    assert_eq!(tail_mass_closed_form(0, 1), q(3, 4));
    assert_eq!(tail_mass_closed_form(1, 4), q(29, 32));
    for n in 0..3 {
        let mut prev = BigRational::one();
        for cutoff in 1..=12 {
            let cs = lamp(n, cutoff);
            let t = tail_mass_closed_form(n, cutoff);
            assert_eq!(cs.tail_mass(), t, "n={n} L={cutoff}");
            assert!(t <= prev && t >= BigRational::zero());
            prev = t;
        }
    }
    let mut prev = BigRational::one();
    for cutoff in 1..40 {
        let t = tail_mass_closed_form(0, cutoff);
        assert!(t < prev);
        assert_eq!(t, q(cutoff as i64 + 2, 1) * pow2(cutoff + 1));
        prev = t;
    }
}

#[test]
fn translates_are_disjoint() {
    for (s, cutoff) in [
        (PartitionScheme::lamplighter(0), 7),
        (PartitionScheme::lamplighter(1), 7),
        (PartitionScheme::odometer(3).unwrap(), 8),
    ] {
        let cs = enumerate_components(&Arc::new(s), cutoff).unwrap();
        let mut seen: Vec<Clopen> = Vec::new();
        for w in cs.components() {
            for j in 0..w.length {
                let c = w.clopen.image(j as i64);
                for prior in &seen {
                    assert!(c.is_disjoint(prior).unwrap());
                }
                seen.push(c);
            }
        }
    }
}

#[test]
fn matrix_units() {
    let k = FieldContext::rational();
    let cs = lamp(0, 4);
    let w = 2;
    assert_eq!(cs.components()[w].length, 3);
    assert_eq!(
        matrix_unit(&cs, w, 0, 0, &k).unwrap(),
        CrossedElement::indicator(&cs.components()[w].clopen, &k)
    );
    let scheme = cs.scheme().clone();
    for i in 0..3 {
        for j in 0..3 {
            let e = matrix_unit(&cs, w, i, j, &k).unwrap();
            let g = matrix_unit_from_generators(&scheme, &cs.components()[w].clopen, i as u32, j as u32, &k);
            assert_eq!(e, g);
            for t in 0..3 {
                for s in 0..3 {
                    let f = matrix_unit(&cs, w, t, s, &k).unwrap();
                    let expect = if j == t {
                        matrix_unit(&cs, w, i, s, &k).unwrap()
                    } else {
                        CrossedElement::zero(scheme.space(), &k)
                    };
                    assert_eq!(&e * &f, expect);
                }
            }
        }
    }
    assert_eq!(matrix_unit(&cs, w, 3, 0, &k), Err(ApproxError::IndexOutOfRange));
    let h = component_unit(&cs, w, &k).unwrap();
    assert_eq!(&h * &h, h);
    let mut gens = vec![CrossedElement::indicator(scheme.e(), &k)];
    for z in scheme.parts() {
        let g = CrossedElement::chi_t(z, &k, 1);
        gens.push(g.star());
        gens.push(g);
    }
    for g in &gens {
        assert_eq!(&h * g, g * &h);
    }
}

fn lower_shift(d: usize, k: &crate::field::Field) -> ExactMatrix {
    ExactMatrix::from_fn(d, d, k, |i, j| if i == j + 1 { k.one() } else { k.zero() })
}

#[test]
fn represent_examples() {
    let k = FieldContext::rational();
    for n in 0..2 {
        let cs = lamp(n, 7);
        let scheme = cs.scheme().clone();
        let s = CrossedElement::chi_t(&scheme.e().complement(), &k, 1);
        let b = represent(&s, &cs).unwrap();
        let pe = represent(&CrossedElement::indicator(scheme.e(), &k), &cs).unwrap();
        for (i, w) in cs.components().iter().enumerate() {
            assert_eq!(b.block(i), &lower_shift(w.length, &k));
            let mut e00 = ExactMatrix::zeros(w.length, w.length, &k);
            e00.set(0, 0, k.one());
            assert_eq!(pe.block(i), &e00);
        }
    }
    let cs = lamp(0, 8);
    let s = CrossedElement::chi_t(&cs.scheme().e().complement(), &k, 1);
    let b = represent(&(&s + &s.star()), &cs).unwrap();
    for (i, w) in cs.components().iter().enumerate() {
        let d = w.length;
        let n = lower_shift(d, &k);
        assert_eq!(b.block(i), &n.add(&n.transpose()));
        assert_eq!(b.block(i).rank(), d - d % 2);
        assert_eq!(naive_rank(b.block(i)), d - d % 2);
    }
}

#[test]
fn represent_is_a_star_homomorphism() {
    let k = FieldContext::cyclotomic(4).unwrap();
    let cs = lamp(1, 7);
    let scheme = cs.scheme().clone();
    let i = k.generator();
    let gens: Vec<CrossedElement> = scheme
        .parts()
        .iter()
        .map(|z| CrossedElement::chi_t(z, &k, 1))
        .chain([CrossedElement::indicator(scheme.e(), &k)])
        .collect();
    let a = gens[1]
        .scale(&i)
        .try_add(&gens[3])
        .unwrap()
        .try_add(&gens[7].star())
        .unwrap();
    let b = gens[5]
        .try_mul(&gens[2])
        .unwrap()
        .try_add(&gens[0].scale(&k.from_i64(3)))
        .unwrap();
    let (ra, rb) = (represent(&a, &cs).unwrap(), represent(&b, &cs).unwrap());
    assert_eq!(represent(&(&a * &b), &cs).unwrap(), ra.mul(&rb).unwrap());
    assert_eq!(represent(&a.star(), &cs).unwrap(), ra.star());
    assert_eq!(represent(&(&a + &b), &cs).unwrap(), ra.add(&rb).unwrap());
}

#[test]
fn not_representable() {
    let k = FieldContext::rational();
    let cs = lamp(0, 4);
    let t = CrossedElement::t_pow(cs.scheme().space(), &k, 1);
    assert!(matches!(
        represent(&t, &cs),
        Err(ApproxError::NotRepresentableAtLevel { .. })
    ));
    let far = Clopen::cylinder(cs.scheme().space(), 10, &[0]).unwrap();
    assert!(represent(&CrossedElement::indicator(&far, &k), &cs).is_err());
}

#[test]
fn approximant_examples() {
    let k = FieldContext::rational();
    for n in 0..3 {
        let scheme = PartitionScheme::lamplighter(n);
        let sp = scheme.space();
        let s = CrossedElement::chi_t(&scheme.e().complement(), &k, 1);
        let t = CrossedElement::t_pow(sp, &k, 1);
        assert_eq!(approximant(&t, &scheme).unwrap(), (s.clone(), pow2(2 * n + 1)));
        let one_t = CrossedElement::one(sp, &k).try_add(&t).unwrap();
        let one_s = CrossedElement::one(sp, &k).try_add(&s).unwrap();
        assert_eq!(approximant(&one_t, &scheme).unwrap(), (one_s.clone(), pow2(2 * n + 1)));
        assert_eq!(approximant(&one_s, &scheme).unwrap(), (one_s, BigRational::zero()));
        let poly = &(&s * &s) + &s.star().pow(3);
        assert_eq!(approximant(&poly, &scheme).unwrap(), (poly, BigRational::zero()));
        let t2 = t.pow(2).try_add(&t.star().pow(3)).unwrap();
        let (approx, err) = approximant(&t2, &scheme).unwrap();
        assert_eq!(approx, s.pow(2).try_add(&s.star().pow(3)).unwrap());
        assert_eq!(err, pow2(2 * n + 1) * q(5, 1));
    }
}

#[test]
fn refinement() {
    let k = FieldContext::rational();
    for n in 0..2 {
        let coarse = lamp(n, 10);
        let fine = lamp(n + 1, 8);
        let id = BlockElement::identity(coarse.clone(), 1, &k);
        assert_eq!(
            refine_embedding(&coarse, &fine, &id).unwrap(),
            BlockElement::identity(fine.clone(), 1, &k)
        );
        let s = CrossedElement::chi_t(&coarse.scheme().e().complement(), &k, 1);
        let a = &(&s + &s.star()) + &CrossedElement::indicator(coarse.scheme().e(), &k).scale(&k.from_i64(2));
        let up = refine_embedding(&coarse, &fine, &represent(&a, &coarse).unwrap()).unwrap();
        assert_eq!(up, represent(&a, &fine).unwrap());
    }
    let coarse = lamp(0, 3);
    let fine = lamp(1, 8);
    let id = BlockElement::identity(coarse.clone(), 1, &k);
    assert!(matches!(
        refine_embedding(&coarse, &fine, &id),
        Err(ApproxError::SegmentNotFound { .. })
    ));
    assert_eq!(
        refine_embedding(&fine, &coarse, &BlockElement::identity(fine.clone(), 1, &k)),
        Err(ApproxError::SchemesNotNested)
    );
}

#[test]
fn odometer_refinement_doubles() {
    let k = FieldContext::rational();
    for n in 1..4 {
        let coarse = Arc::new(enumerate_components(&Arc::new(PartitionScheme::odometer(n).unwrap()), 1 << n).unwrap());
        let fine =
            Arc::new(enumerate_components(&Arc::new(PartitionScheme::odometer(n + 1).unwrap()), 1 << (n + 1)).unwrap());
        let d = 1 << n;
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(n as u64);
        let x = ExactMatrix::random(d, d, &k, &mut rng, 0.5);
        let xe = BlockElement::new(coarse.clone(), 1, &k, vec![x.clone()]).unwrap();
        let up = refine_embedding(&coarse, &fine, &xe).unwrap();
        assert_eq!(up.block(0), &ExactMatrix::block_diag(&[x.clone(), x], &k));
    }
}

#[test]
fn matrix_blocks() {
    let k = FieldContext::rational();
    let cs = lamp(0, 5);
    let sp = cs.scheme().space();
    let s = CrossedElement::chi_t(&cs.scheme().e().complement(), &k, 1);
    let m = CrossedMatrix::new(
        2,
        vec![
            CrossedElement::one(sp, &k),
            s.clone(),
            s.star(),
            CrossedElement::zero(sp, &k),
        ],
    )
    .unwrap();
    let b = represent_matrix(&m, &cs).unwrap();
    for (i, w) in cs.components().iter().enumerate() {
        let l = w.length;
        let blk = b.block(i);
        assert_eq!(blk.rows(), 2 * l);
        assert_eq!(blk.submatrix(0, l, l, l), lower_shift(l, &k));
        assert_eq!(blk.submatrix(l, 0, l, l), lower_shift(l, &k).transpose());
        assert_eq!(blk.submatrix(0, 0, l, l), ExactMatrix::identity(l, &k));
    }
    assert_eq!(represent_matrix(&m.star(), &cs).unwrap(), b.star());
}
