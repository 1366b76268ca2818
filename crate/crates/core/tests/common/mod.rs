#![allow(dead_code)]

use crossrank::field::{Field, FieldContext};
use crossrank::space::{Clopen, SpaceSpec, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 500;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One field of each kind.
pub fn fields() -> Vec<Field> {
    vec![
        FieldContext::rational(),
        FieldContext::cyclotomic(5).unwrap(),
        FieldContext::cyclotomic(4).unwrap(),
        FieldContext::prime(7).unwrap(),
        FieldContext::frobenius(3, 1).unwrap(),
    ]
}

/// A union of a few cylinders on a window of length ≤ 4.
pub fn clopen<R: Rng>(rng: &mut R, space: SpaceSpec) -> Clopen {
    let start = match space.geometry {
        crossrank::space::Geometry::TwoSidedShift => rng.gen_range(-3..=3),
        crossrank::space::Geometry::OneSidedOdometer => 1,
    };
    let len = rng.gen_range(1..=4usize);
    let words: Vec<Word> = (0..1usize << len)
        .filter(|_| rng.gen_bool(0.4))
        .map(|idx| (0..len).map(|i| (idx >> i & 1) as u8).collect())
        .collect();
    Clopen::from_words(space, start, len, words).unwrap()
}
