//! Seeded random inputs for the verification suites.

use rand::Rng;

use crate::algebra::{CrossedElement, GroupAlgebraElement, LampGroupElement, LocallyConstantFn};
use crate::approx::{BlockElement, ComponentSet, PartitionScheme};
use crate::field::{Field, FieldExt};
use crate::matrix::ExactMatrix;
use crate::space::{PeriodicPoint, SpaceSpec, Word};
use std::sync::Arc;

pub fn function<R: Rng + ?Sized>(rng: &mut R, field: &Field) -> LocallyConstantFn {
    let space = SpaceSpec::binary_shift();
    let start = rng.gen_range(-2..=2);
    let len = rng.gen_range(0..=3usize);
    let mut vals = Vec::new();
    for idx in 0..1usize << len {
        if rng.gen_bool(0.6) {
            let w: Word = (0..len).map(|i| (idx >> i & 1) as u8).collect();
            vals.push((w, field.random(rng, 3)));
        }
    }
    LocallyConstantFn::from_words(space, field, start, len, vals)
}

/// A random element with degrees in [−2, 2] on the two-sided shift.
pub fn crossed<R: Rng + ?Sized>(rng: &mut R, field: &Field) -> CrossedElement {
    let mut acc = CrossedElement::zero(SpaceSpec::binary_shift(), field);
    for _ in 0..rng.gen_range(1..=3) {
        let d = rng.gen_range(-2..=2);
        acc = acc.try_add(&CrossedElement::monomial(function(rng, field), d)).unwrap();
    }
    acc
}

pub fn group_element<R: Rng + ?Sized>(rng: &mut R, field: &Field) -> GroupAlgebraElement {
    let mut acc = GroupAlgebraElement::zero(field);
    for _ in 0..rng.gen_range(1..=3) {
        let lamps: Vec<i64> = (-2..=2).filter(|_| rng.gen_bool(0.3)).collect();
        let g = LampGroupElement::new(lamps, rng.gen_range(-2..=2));
        acc = acc
            .try_add(&GroupAlgebraElement::monomial(g, field.random(rng, 3)))
            .unwrap();
    }
    acc
}

/// A random element of the subalgebra generated by χ_Z t for the parts Z of the scheme.
pub fn scheme_element<R: Rng + ?Sized>(rng: &mut R, scheme: &PartitionScheme, field: &Field) -> CrossedElement {
    let space = scheme.space();
    let mut gens = vec![CrossedElement::indicator(scheme.e(), field)];
    for z in scheme.parts() {
        let g = CrossedElement::chi_t(z, field, 1);
        gens.push(g.star());
        gens.push(g);
        gens.push(CrossedElement::indicator(z, field));
    }
    let mut acc = CrossedElement::zero(space, field);
    for _ in 0..rng.gen_range(1..=3) {
        let mut p = CrossedElement::scalar(space, field.random(rng, 3));
        for _ in 0..rng.gen_range(0..=3) {
            p = &p * &gens[rng.gen_range(0..gens.len())];
        }
        acc = &acc + &p;
    }
    acc
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, field: &Field, rows: usize, cols: usize) -> ExactMatrix {
    let density = rng.gen_range(0.2..=1.0);
    let mut m = ExactMatrix::random(rows, cols, field, rng, density);
    // Low-rank structure: overwrite some rows with combinations of others.
    if rows > 2 && rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..rows) {
            let (a, b, c) = (rng.gen_range(0..rows), rng.gen_range(0..rows), rng.gen_range(0..rows));
            let (x, y) = (field.random(rng, 3), field.random(rng, 3));
            for j in 0..cols {
                let v = &(&x * m.get(b, j)) + &(&y * m.get(c, j));
                m.set(a, j, v);
            }
        }
    }
    m
}

/// Random blocks of the given size over every stored component.
pub fn block_element<R: Rng + ?Sized>(rng: &mut R, cs: &Arc<ComponentSet>, k: usize, field: &Field) -> BlockElement {
    let blocks = cs
        .components()
        .iter()
        .map(|w| matrix(rng, field, k * w.length, k * w.length))
        .collect();
    BlockElement::new(cs.clone(), k, field, blocks).unwrap()
}

pub fn periodic_point<R: Rng + ?Sized>(rng: &mut R) -> PeriodicPoint {
    loop {
        let l = rng.gen_range(1..=4);
        let w: Word = (0..l).map(|_| rng.gen_range(0..2)).collect();
        if let Ok(y) = PeriodicPoint::new(w) {
            return y;
        }
    }
}

/// Strictly lower triangular with the zero block a_{ij} = 0 for i ≤ n − r, j ≥ r + 1 (1-based).
pub fn pattern_matrix<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize, r: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n, field);
    for i in 0..n {
        for j in 0..i {
            if !(i + 1 + r <= n && j >= r) && rng.gen_bool(0.7) {
                m.set(i, j, field.random(rng, 4));
            }
        }
    }
    m
}
