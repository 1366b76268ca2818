use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{CrossedElement, LocallyConstantFn};
use crate::approx::{enumerate_components, represent, ComponentSet, PartitionScheme};
use crate::field::{Field, FieldContext, FieldExt};
use crate::matrix::ExactMatrix;
use crate::space::{Clopen, SpaceSpec};

fn lamp(n: usize) -> Arc<PartitionScheme> {
    Arc::new(PartitionScheme::lamplighter(n))
}

fn comps(scheme: &Arc<PartitionScheme>, cutoff: usize) -> Arc<ComponentSet> {
    Arc::new(enumerate_components(scheme, cutoff).unwrap())
}

fn q() -> Field {
    FieldContext::rational()
}

/// Gauss–Jordan inverse of an invertible square matrix.
fn inverse(m: &ExactMatrix) -> ExactMatrix {
    let n = m.rows();
    let k = m.field().clone();
    let mut a = m.clone();
    let mut inv = ExactMatrix::identity(n, &k);
    for c in 0..n {
        let p = (c..n).find(|&r| !a.get(r, c).is_zero()).expect("invertible");
        for j in 0..n {
            let (x, y) = (a.get(c, j).clone(), a.get(p, j).clone());
            a.set(c, j, y);
            a.set(p, j, x);
            let (x, y) = (inv.get(c, j).clone(), inv.get(p, j).clone());
            inv.set(c, j, y);
            inv.set(p, j, x);
        }
        let piv = a.get(c, c).inv().unwrap();
        for j in 0..n {
            a.set(c, j, a.get(c, j) * &piv);
            inv.set(c, j, inv.get(c, j) * &piv);
        }
        for r in 0..n {
            if r == c || a.get(r, c).is_zero() {
                continue;
            }
            let f = a.get(r, c).clone();
            for j in 0..n {
                a.set(r, j, a.get(r, j) - &(&f * a.get(c, j)));
                inv.set(r, j, inv.get(r, j) - &(&f * inv.get(c, j)));
            }
        }
    }
    inv
}

fn lower_shift(len: usize, k: &Field) -> ExactMatrix {
    ExactMatrix::from_fn(len, len, k, |i, j| if i == j + 1 { k.one() } else { k.zero() })
}

fn unit_block(len: usize, i: usize, j: usize, k: &Field) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(len, len, k);
    m.set(i, j, k.one());
    m
}

#[test]
fn s_squared() {
    let k = q();
    for n in [0, 1] {
        let sc = lamp(n);
        let s = TruncSkewSeries::s(sc.clone(), &k, 6);
        let s2 = s.mul(&s).unwrap();
        let g = sc.e().union(&sc.e().image(1)).unwrap().complement();
        let expect = TruncSkewSeries::from_crossed(&CrossedElement::chi_t(&g, &k, 2), sc.clone(), 6).unwrap();
        assert_eq!(s2, expect);
        let one = TruncSkewSeries::one(sc.clone(), &k, 6);
        assert_eq!(s.mul(&one).unwrap(), s);
        assert_eq!(one.mul(&s).unwrap(), s);
    }
}

#[test]
fn support_is_checked() {
    let k = q();
    let sc = lamp(1);
    let bad = LocallyConstantFn::indicator(sc.e(), &k);
    assert_eq!(
        TruncSkewSeries::new(sc.clone(), &k, 3, vec![LocallyConstantFn::zero(sc.space(), &k), bad]).unwrap_err(),
        SeriesError::SupportViolation(1)
    );
    let t_inv = CrossedElement::t_pow(sc.space(), &k, -1);
    assert!(matches!(
        TruncSkewSeries::from_crossed(&t_inv, sc, 3),
        Err(SeriesError::NegativeDegree(-1))
    ));
}

#[test]
fn inversion_examples() {
    let k = q();
    let sc = lamp(1);
    let l = 9;
    let one = TruncSkewSeries::one(sc.clone(), &k, l);
    assert_eq!(one.invert().unwrap(), one);
    let three =
        TruncSkewSeries::from_crossed(&CrossedElement::scalar(sc.space(), k.from_i64(3)), sc.clone(), l).unwrap();
    let third = TruncSkewSeries::from_crossed(
        &CrossedElement::scalar(sc.space(), k.from_i64(3).inv().unwrap()),
        sc.clone(),
        l,
    )
    .unwrap();
    assert_eq!(three.invert().unwrap(), third);
    let s = TruncSkewSeries::s(sc.clone(), &k, l);
    let u = one.sub(&s).unwrap().invert().unwrap();
    let mut geo = one.clone();
    let mut pw = one.clone();
    for _ in 0..l {
        pw = pw.mul(&s).unwrap();
        geo = geo.add(&pw).unwrap();
    }
    assert_eq!(u, geo);
    assert_eq!(u, TruncSkewSeries::u(sc.clone(), &k, l));
    let chi_e = LocallyConstantFn::indicator(sc.e(), &k);
    let x = TruncSkewSeries::new(sc, &k, l, vec![chi_e]).unwrap();
    assert_eq!(x.invert().unwrap_err(), SeriesError::NotInvertibleConstantTerm);
}

fn random_invertible(sc: &Arc<PartitionScheme>, k: &Field, l: usize, rng: &mut ChaCha8Rng) -> TruncSkewSeries {
    let space = sc.space();
    let mut coeffs = Vec::new();
    // b₀: nonzero values on the words of [0, 1].
    let vals: Vec<(Vec<u8>, _)> = [[0u8, 0], [0, 1], [1, 0], [1, 1]]
        .iter()
        .map(|w| {
            (
                w.to_vec(),
                k.from_i64(rng.gen_range(1..4) * if rng.gen_bool(0.5) { 1 } else { -1 }),
            )
        })
        .collect();
    coeffs.push(LocallyConstantFn::from_words(space, k, 0, 2, vals));
    let s = TruncSkewSeries::s(sc.clone(), k, l);
    let mut pw = TruncSkewSeries::one(sc.clone(), k, l);
    for _ in 1..=l.min(4) {
        pw = pw.mul(&s).unwrap();
        let c = k.from_i64(rng.gen_range(-2..3));
        let z = Clopen::cylinder(space, rng.gen_range(-1..2), &[rng.gen_range(0..2)]).unwrap();
        let f = LocallyConstantFn::scaled_indicator(&z, c);
        coeffs.push(f.try_mul(&pw.coeff(coeffs.len()).clone()).unwrap());
    }
    TruncSkewSeries::new(sc.clone(), k, l, coeffs).unwrap()
}

#[test]
fn random_inverses_are_two_sided() {
    let k = q();
    let sc = lamp(1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..6 {
        let x = random_invertible(&sc, &k, 7, &mut rng);
        let y = x.invert().unwrap();
        let one = TruncSkewSeries::one(sc.clone(), &k, 7);
        assert_eq!(x.mul(&y).unwrap(), one);
        assert_eq!(y.mul(&x).unwrap(), one);
    }
}

#[test]
fn pi_plus_examples() {
    let k = q();
    let sc = lamp(1);
    let cs = comps(&sc, 8);
    let l = 7;
    let s = TruncSkewSeries::s(sc.clone(), &k, l);
    let ps = s.pi_plus(&cs).unwrap();
    let u = TruncSkewSeries::u(sc.clone(), &k, l);
    let pu = u.pi_plus(&cs).unwrap();
    for (idx, w) in cs.components().iter().enumerate() {
        let n = lower_shift(w.length, &k);
        assert_eq!(ps.block(idx), &n);
        let i_minus_n = ExactMatrix::identity(w.length, &k).sub(&n);
        assert_eq!(pu.block(idx), &inverse(&i_minus_n));
    }
    assert_eq!(represent(&s.to_crossed().star(), &cs).unwrap(), ps.star());
    assert_eq!(represent(&u.to_crossed().star(), &cs).unwrap(), pu.star());
    let short = TruncSkewSeries::s(sc, &k, 6);
    assert!(matches!(short.pi_plus(&cs), Err(SeriesError::CutoffMismatch { .. })));
}

/// All S = T^{i−1}(Z'_{i−1}) ∩ ⋯ ∩ Z'_0 with E ∩ T^{-i}(S) ∩ T^{-i-1}(E) ≠ ∅, by brute force.
fn special_sets_brute(scheme: &PartitionScheme, i: usize) -> BTreeSet<Clopen> {
    let parts = scheme.parts();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; i];
    loop {
        let mut s = Clopen::full(scheme.space());
        for (r, &z) in idx.iter().enumerate() {
            s = s.intersect(&parts[z].image(r as i64)).unwrap();
        }
        if !s.is_empty() {
            let w = scheme
                .e()
                .intersect(&s.image(-(i as i64)))
                .unwrap()
                .intersect(&scheme.e().image(-(i as i64) - 1))
                .unwrap();
            if !w.is_empty() {
                out.insert(s);
            }
        }
        let mut p = 0;
        loop {
            if p == i {
                return out;
            }
            idx[p] += 1;
            if idx[p] < parts.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

#[test]
fn special_sets_match_brute_force() {
    let cases: Vec<(Arc<PartitionScheme>, usize)> = vec![
        (lamp(0), 4),
        (lamp(1), 4),
        (
            Arc::new(PartitionScheme::new(lamp(1).e().clone(), lamp(1).parts().to_vec()).unwrap()),
            4,
        ),
        (Arc::new(PartitionScheme::odometer(2).unwrap()), 3),
    ];
    for (sc, top) in cases {
        let cs = comps(&sc, top + 1);
        let census = cs.length_census();
        for i in 1..=top {
            let got = special_sets(&sc, i).unwrap();
            let set: BTreeSet<Clopen> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len());
            assert_eq!(set, special_sets_brute(&sc, i), "{sc:?} degree {i}");
            assert_eq!(got.len(), census.get(i + 1).copied().unwrap_or(0));
        }
    }
}

#[test]
fn special_set_examples() {
    let space = SpaceSpec::binary_shift();
    for n in 1..=3usize {
        let sc = lamp(n);
        let s0 = special_sets(&sc, 0).unwrap();
        let expect = Clopen::cylinder(space, -(n as i64) + 1, &vec![1; 2 * n]).unwrap();
        assert_eq!(s0, vec![expect]);
        let i = 2 * n + 1;
        let mut w = vec![1u8; 2 * n];
        w.push(0);
        w.extend(vec![1u8; 2 * n]);
        let expect = Clopen::cylinder(space, -(n as i64) - i as i64 + 1, &w).unwrap();
        assert_eq!(special_sets(&sc, i).unwrap(), vec![expect]);
        for j in 1..i {
            assert!(special_sets(&sc, j).unwrap().is_empty());
        }
    }
    assert_eq!(special_sets(&lamp(0), 0).unwrap(), vec![Clopen::full(space)]);
    assert!(special_sets(&Arc::new(PartitionScheme::odometer(2).unwrap()), 0)
        .unwrap()
        .is_empty());
}

#[test]
fn detection() {
    let k = q();
    for sc in [lamp(0), lamp(1), Arc::new(PartitionScheme::odometer(2).unwrap())] {
        let cs = comps(&sc, 7);
        for (widx, w) in cs.components().iter().enumerate() {
            let i = w.length - 1;
            let s = special_set_of(&sc, w).unwrap();
            let x = represent(&CrossedElement::chi_t(&s, &k, i as i64), &cs).unwrap();
            for (vidx, v) in cs.components().iter().enumerate() {
                let b = x.block(vidx);
                if vidx == widx {
                    assert_eq!(b, &unit_block(w.length, i, 0, &k));
                } else {
                    assert!(b.get(v.length - 1, 0).is_zero());
                }
            }
        }
    }
}

fn is_degree(cs: &ComponentSet, w: usize, d: usize) -> bool {
    cs.components()[w].length == d + 1
}

#[test]
fn projection_examples() {
    let k = q();
    for sc in [lamp(0), lamp(1), Arc::new(PartitionScheme::odometer(2).unwrap())] {
        let l = 8;
        let cs = comps(&sc, l);
        let s = TruncSkewSeries::s(sc.clone(), &k, l - 1);
        let one = TruncSkewSeries::one(sc.clone(), &k, l - 1);
        let mut pw = one.clone();
        for i in 0..l {
            let p = project_p(&pw, &cs).unwrap();
            for w in 0..cs.len() {
                let expect = if is_degree(&cs, w, i) { k.one() } else { k.zero() };
                assert_eq!(p.coeff(w), &expect, "degree {i}");
            }
            pw = pw.mul(&s).unwrap();
        }
        let u = TruncSkewSeries::u(sc.clone(), &k, l - 1);
        assert_eq!(project_p(&u, &cs).unwrap(), SpecialSeries::e(cs.clone(), &k));
        let p1 = project_p(&one, &cs).unwrap();
        if let Some(s01) = unit_special_set(&sc).unwrap() {
            let chi = TruncSkewSeries::from_crossed(&CrossedElement::indicator(&s01, &k), sc.clone(), l - 1).unwrap();
            assert_eq!(p1.to_series().unwrap(), chi);
        } else {
            assert!(p1.is_zero());
        }
        let short = TruncSkewSeries::one(sc, &k, 3);
        if cs.components().iter().any(|w| w.length > 4) {
            assert!(matches!(
                project_p(&short, &cs),
                Err(SeriesError::CutoffMismatch { .. })
            ));
        }
    }
}

fn random_special(cs: &Arc<ComponentSet>, k: &Field, rng: &mut ChaCha8Rng, density: f64) -> SpecialSeries {
    let coeffs = (0..cs.len())
        .map(|_| {
            if rng.gen_bool(density) {
                k.random(rng, 3)
            } else {
                k.zero()
            }
        })
        .collect();
    SpecialSeries::new(cs.clone(), k, coeffs).unwrap()
}

#[test]
fn projection_is_idempotent_and_kills_other_patterns() {
    let k = q();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sc = lamp(1);
    let l = 9;
    let cs = comps(&sc, l);
    for _ in 0..5 {
        let a = random_special(&cs, &k, &mut rng, 0.7);
        assert_eq!(project_p(&a.to_series().unwrap(), &cs).unwrap(), a);
    }
    let parts = sc.parts();
    let mut tried = 0;
    while tried < 40 {
        let i = rng.gen_range(1..=6usize);
        let r = rng.gen_range(0..3usize);
        let s = rng.gen_range(i..=i + 2);
        if r == 0 && s == i {
            continue;
        }
        let mut c = Clopen::full(sc.space());
        for j in -(r as i64)..s as i64 {
            c = c.intersect(&parts[rng.gen_range(0..parts.len())].image(j)).unwrap();
        }
        if c.is_empty() {
            continue;
        }
        tried += 1;
        let x = TruncSkewSeries::from_crossed(&CrossedElement::chi_t(&c, &k, i as i64), sc.clone(), l - 1).unwrap();
        assert!(project_p(&x, &cs).unwrap().is_zero());
    }
}

#[test]
fn hadamard_examples() {
    let k = q();
    let cs = comps(&lamp(1), 5);
    assert_eq!(cs.len(), 3);
    let a = SpecialSeries::new(cs.clone(), &k, vec![k.from_i64(2), k.zero(), k.from_i64(-3)]).unwrap();
    let e = SpecialSeries::e(cs.clone(), &k);
    assert_eq!(a.hadamard(&e).unwrap(), a);
    let r = a.relative_inverse();
    let expect = SpecialSeries::new(
        cs.clone(),
        &k,
        vec![k.from_i64(2).inv().unwrap(), k.zero(), k.from_i64(-3).inv().unwrap()],
    )
    .unwrap();
    assert_eq!(r, expect);
    assert_eq!(a.hadamard(&r).unwrap().hadamard(&a).unwrap(), a);
    let other = comps(&lamp(0), 5);
    assert_eq!(
        a.hadamard(&SpecialSeries::e(other, &k)).unwrap_err(),
        SeriesError::SchemeMismatch
    );
}

#[test]
fn corner_formulas() {
    let k = FieldContext::cyclotomic(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for sc in [lamp(0), lamp(1)] {
        let cs = comps(&sc, 8);
        let pe = p_e(&cs, &k);
        let pt = p_tinv_e(&cs, &k);
        for _ in 0..4 {
            let a = random_special(&cs, &k, &mut rng, 0.8);
            let b = random_special(&cs, &k, &mut rng, 0.8);
            let pa = a.to_series().unwrap().pi_plus(&cs).unwrap();
            let pb = b.to_series().unwrap().pi_plus(&cs).unwrap();
            let lhs = pe
                .mul(&pa.star())
                .unwrap()
                .mul(&pt)
                .unwrap()
                .mul(&pb)
                .unwrap()
                .mul(&pe)
                .unwrap();
            let rhs = a.conj().hadamard(&b).unwrap().psi().mul(&pe).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = pt
                .mul(&pa)
                .unwrap()
                .mul(&pe)
                .unwrap()
                .mul(&pb.star())
                .unwrap()
                .mul(&pt)
                .unwrap();
            let rhs = a.hadamard(&b.conj()).unwrap().psi().mul(&pt).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

fn word(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

/// Every way of writing the word as a product of pure terms.
fn all_factorizations(n: usize, w: &[u8]) -> Vec<Vec<Vec<u8>>> {
    let k = 2 * n;
    let mut out = Vec::new();
    if let Ok(t) = SpecialTerm::from_word(n, 1, w.to_vec()) {
        if t.is_pure() {
            out.push(vec![w.to_vec()]);
        }
    }
    for q in 2 * k + 1..w.len() {
        let left = &w[..q];
        let rest = &w[q - k..];
        let ok = SpecialTerm::from_word(n, 1, left.to_vec())
            .map(|t| t.is_pure())
            .unwrap_or(false);
        if !ok || SpecialTerm::from_word(n, 1, rest.to_vec()).is_err() {
            continue;
        }
        for mut tail in all_factorizations(n, rest) {
            // The leftmost word segment is the last factor.
            tail.push(left.to_vec());
            out.push(tail);
        }
    }
    out
}

fn product_series(terms: &[SpecialTerm], sc: &Arc<PartitionScheme>, k: &Field, l: usize) -> TruncSkewSeries {
    let mut acc = TruncSkewSeries::one(sc.clone(), k, l);
    for t in terms {
        let x = TruncSkewSeries::from_crossed(&t.to_crossed(k), sc.clone(), l).unwrap();
        acc = acc.mul(&x).unwrap();
    }
    acc
}

#[test]
fn pure_factorization_examples() {
    let k = q();
    let sc = lamp(1);
    let seam = SpecialTerm::from_word(1, 1, word("11011")).unwrap();
    assert_eq!(factor_pure(&seam.clopen(), &sc).unwrap(), vec![seam.clone()]);
    let pure = SpecialTerm::from_word(1, 1, word("11001011")).unwrap();
    assert!(pure.is_pure());
    assert_eq!(factor_pure(&pure.clopen(), &sc).unwrap(), vec![pure.clone()]);
    let two = SpecialTerm::from_word(1, 1, word("11001100011")).unwrap();
    let f = factor_pure(&two.clopen(), &sc).unwrap();
    assert_eq!(f.len(), 2);
    assert_eq!(f[0].word(), word("1100011").as_slice());
    assert_eq!(f[1].word(), word("110011").as_slice());
    let l = two.degree();
    assert_eq!(
        product_series(&f, &sc, &k, l),
        TruncSkewSeries::from_crossed(&two.to_crossed(&k), sc.clone(), l).unwrap()
    );
    assert!(matches!(
        factor_pure(&Clopen::cylinder(sc.space(), -3, &word("11111")).unwrap(), &sc),
        Err(SeriesError::NotSpecial(_))
    ));
    assert_eq!(
        factor_pure(&Clopen::full(sc.space()), &lamp(0)).unwrap_err(),
        SeriesError::LevelZeroUnsupported
    );
}

#[test]
fn pure_factorization_is_unique() {
    let k = q();
    for n in [1usize, 2] {
        let sc = lamp(n);
        let top = if n == 1 { 12 } else { 13 };
        let cs = comps(&sc, top + 1);
        for w in cs.components().iter().filter(|w| w.length >= 2) {
            let s = special_set_of(&sc, w).unwrap();
            let f = factor_pure(&s, &sc).unwrap();
            let words: Vec<Vec<u8>> = f.iter().map(|t| t.word().to_vec()).collect();
            let t = SpecialTerm::from_clopen(&s, &sc).unwrap();
            assert_eq!(all_factorizations(n, t.word()), vec![words]);
            assert!(f.iter().all(|t| t.is_pure()));
            let prod = f[1..].iter().fold(f[0].clone(), |acc, x| acc.mul(x));
            assert_eq!(prod, t);
            if n == 1 && w.length <= 9 {
                let l = w.length;
                assert_eq!(
                    product_series(&f, &sc, &k, l),
                    TruncSkewSeries::from_crossed(&t.to_crossed(&k), sc.clone(), l).unwrap()
                );
            }
        }
    }
}

#[test]
fn special_terms_multiply_to_special_terms() {
    let k = q();
    let sc = lamp(1);
    let cs = comps(&sc, 12);
    let terms = pure_terms(&sc, 6).unwrap();
    for a in &terms {
        for b in &terms {
            let l = 11;
            let x = TruncSkewSeries::from_crossed(&a.to_crossed(&k), sc.clone(), l).unwrap();
            let y = TruncSkewSeries::from_crossed(&b.to_crossed(&k), sc.clone(), l).unwrap();
            let z = TruncSkewSeries::from_crossed(&a.mul(b).to_crossed(&k), sc.clone(), l).unwrap();
            assert_eq!(x.mul(&y).unwrap(), z);
            let p = project_p(&z, &cs).unwrap();
            assert_eq!(p.to_series().unwrap(), z);
        }
    }
}

#[test]
fn pure_term_census() {
    let sc = lamp(1);
    let terms = pure_terms(&sc, 8).unwrap();
    // Degree 3 seam, then middles without "11" of lengths 0..=3: 1, 2, 3, 5 words.
    let mut by_degree = BTreeMap::new();
    for t in &terms {
        *by_degree.entry(t.degree()).or_insert(0) += 1;
    }
    assert_eq!(
        by_degree,
        BTreeMap::from([(3, 1), (4, 1), (5, 2), (6, 3), (7, 5), (8, 8)])
    );
}

#[test]
fn integral_domain() {
    let k = q();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sc = lamp(1);
    let cs = comps(&sc, 11);
    for _ in 0..8 {
        let a = random_special(&cs, &k, &mut rng, 0.5);
        let b = random_special(&cs, &k, &mut rng, 0.5);
        let (Some(da), Some(db)) = (a.lowest_degree(), b.lowest_degree()) else {
            continue;
        };
        let ab = a.mul(&b).unwrap();
        if da + db <= 10 {
            assert_eq!(ab.lowest_degree(), Some(da + db));
        }
    }
}

#[test]
fn automaton_examples() {
    let k = q();
    let x = WeightedAutomaton::letter(&k, 0);
    let xs = x.star().unwrap();
    for len in 0..8 {
        assert_eq!(xs.coeff(&vec![0; len]), k.one());
    }
    assert_eq!(xs.coeff(&[1]), k.zero());
    assert_eq!(
        WeightedAutomaton::scalar(&k, k.one()).star().unwrap_err(),
        SeriesError::NotProper
    );
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let r = x
        .add(&WeightedAutomaton::letter(&k, 1).scale(&k.from_i64(2)))
        .star()
        .unwrap();
    let s = WeightedAutomaton::letter(&k, 0)
        .cauchy(&WeightedAutomaton::letter(&k, 1))
        .star()
        .unwrap()
        .add(&WeightedAutomaton::letter(&k, 1).star().unwrap());
    let h = r.hadamard(&s);
    let c = r.cauchy(&s);
    for _ in 0..200 {
        let len = rng.gen_range(0..=5);
        let w: Vec<u32> = (0..len).map(|_| rng.gen_range(0..2)).collect();
        assert_eq!(h.coeff(&w), &r.coeff(&w) * &s.coeff(&w));
        let mut sum = k.zero();
        for cut in 0..=w.len() {
            sum = &sum + &(&r.coeff(&w[..cut]) * &s.coeff(&w[cut..]));
        }
        assert_eq!(c.coeff(&w), sum);
        let two_pow = k.from_i64(2).pow(w.iter().filter(|&&a| a == 1).count() as i64).unwrap();
        assert_eq!(r.coeff(&w), two_pow);
    }
}

#[test]
fn automaton_images() {
    let k = q();
    let sc = lamp(1);
    let l = 12;
    let cs = comps(&sc, l);
    let terms = pure_terms(&sc, 5).unwrap();
    let pure_map: BTreeMap<u32, SpecialTerm> = terms.iter().cloned().enumerate().map(|(i, t)| (i as u32, t)).collect();
    let one = WeightedAutomaton::scalar(&k, k.one());
    let img = automaton_to_special(&one, &pure_map, &cs, l - 1).unwrap();
    for (w, c) in cs.components().iter().zip(img.coeffs()) {
        assert_eq!(c, &if w.length == 1 { k.one() } else { k.zero() });
    }
    let two = WeightedAutomaton::letter(&k, 0).add(&WeightedAutomaton::letter(&k, 1));
    let st = two.star().unwrap();
    let img = automaton_to_special(&st, &pure_map, &cs, l - 1).unwrap();
    let allowed: BTreeSet<Vec<u8>> = terms[..2].iter().map(|t| t.word().to_vec()).collect();
    for (w, c) in cs.components().iter().zip(img.coeffs()) {
        let expect = if w.length == 1 {
            true
        } else {
            let s = special_set_of(&sc, w).unwrap();
            factor_pure(&s, &sc).unwrap().iter().all(|t| allowed.contains(t.word()))
        };
        assert_eq!(c, &if expect { k.one() } else { k.zero() }, "{:?}", w.label);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..4 {
        let a = rng.gen_range(0..pure_map.len() as u32);
        let b = rng.gen_range(0..pure_map.len() as u32);
        let r = WeightedAutomaton::letter(&k, a).add(&WeightedAutomaton::scalar(&k, k.from_i64(rng.gen_range(-2..3))));
        let s = WeightedAutomaton::letter(&k, b)
            .scale(&k.from_i64(rng.gen_range(1..4)))
            .star()
            .unwrap();
        let ir = automaton_to_special(&r, &pure_map, &cs, l - 1).unwrap();
        let is = automaton_to_special(&s, &pure_map, &cs, l - 1).unwrap();
        let irs = automaton_to_special(&r.cauchy(&s), &pure_map, &cs, l - 1).unwrap();
        assert_eq!(ir.mul(&is).unwrap(), irs);
    }
    assert!(matches!(
        automaton_to_special(&one, &pure_map, &cs, l),
        Err(SeriesError::DegreeOverflow { .. })
    ));
}
