//! The *-isomorphism K Γ ≅ C_K({0,1}^ℤ) ⋊_T ℤ: a_i ↦ χ_{[x_i=0]} − χ_{[x_i=1]}, t ↦ t.

use std::collections::BTreeMap;

use crate::field::{compatible_roots, Field, FieldElement, FieldExt};
use crate::space::{for_each_word, Geometry, SpaceSpec};

use super::{AlgebraError, CrossedElement, GroupAlgebraElement, LampGroupElement, LocallyConstantFn};

fn square_root_of_unity(field: &Field) -> Result<FieldElement, AlgebraError> {
    let roots = compatible_roots(2, field).map_err(|_| AlgebraError::CharacteristicError(field.characteristic()))?;
    Ok(roots[&2].clone())
}

/// Character of the lamp set A: x ↦ Π_{i∈A} ξ₂^{-x_i}.
fn character(lamps: &[i64], xi_inv: &FieldElement, field: &Field) -> LocallyConstantFn {
    let space = SpaceSpec::binary_shift();
    if lamps.is_empty() {
        return LocallyConstantFn::constant(space, field.one());
    }
    let lo = lamps[0];
    let hi = *lamps.last().unwrap();
    let len = (hi - lo + 1) as usize;
    let mut values = Vec::new();
    for_each_word(len, 2, |w| {
        let flips = lamps.iter().filter(|&&i| w[(i - lo) as usize] == 1).count();
        let v = if flips % 2 == 0 { field.one() } else { xi_inv.clone() };
        values.push((w.to_vec(), v));
    });
    LocallyConstantFn::from_words(space, field, lo, len, values)
}

pub fn fourier(x: &GroupAlgebraElement) -> Result<CrossedElement, AlgebraError> {
    let field = x.field();
    let xi = square_root_of_unity(field)?;
    let xi_inv = xi.inv().map_err(AlgebraError::Field)?;
    let space = SpaceSpec::binary_shift();
    let mut acc = CrossedElement::zero(space, field);
    for (g, c) in x.terms() {
        let lamps: Vec<i64> = g.lamps().iter().copied().collect();
        let f = character(&lamps, &xi_inv, field).scale(c);
        acc = acc.try_add(&CrossedElement::monomial(f, g.shift()))?;
    }
    Ok(acc)
}

pub fn inverse_fourier(x: &CrossedElement) -> Result<GroupAlgebraElement, AlgebraError> {
    let space = x.space();
    if space.alphabet != 2 || space.geometry != Geometry::TwoSidedShift {
        return Err(AlgebraError::GeometryMismatch);
    }
    let field = x.field();
    let half = field
        .from_i64(2)
        .inv()
        .map_err(|_| AlgebraError::CharacteristicError(field.characteristic()))?;
    let mut acc = GroupAlgebraElement::zero(field);
    for (d, f) in x.terms() {
        let Some((lo, hi)) = f.window() else {
            let c = f.eval(|_| 0);
            acc = acc.try_add(&GroupAlgebraElement::monomial(LampGroupElement::t(d), c))?;
            continue;
        };
        let len = (hi - lo + 1) as usize;
        // Walsh–Hadamard transform of the value vector; bit i of the index is x_{lo+i}.
        let mut v: Vec<FieldElement> = vec![field.zero(); 1 << len];
        for (w, c) in f.entries() {
            let idx: usize = w.iter().enumerate().map(|(i, &b)| (b as usize) << i).sum();
            v[idx] = c.clone();
        }
        let mut h = 1;
        while h < v.len() {
            for blk in (0..v.len()).step_by(2 * h) {
                for j in blk..blk + h {
                    let a = v[j].clone();
                    let b = v[j + h].clone();
                    v[j] = &a + &b;
                    v[j + h] = &a - &b;
                }
            }
            h *= 2;
        }
        let scale = half.pow(len as i64).map_err(AlgebraError::Field)?;
        let mut terms = BTreeMap::new();
        for (mask, c) in v.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let lamps = (0..len).filter(|i| mask >> i & 1 == 1).map(|i| lo + i as i64);
            terms.insert(LampGroupElement::new(lamps, d), &c * &scale);
        }
        for (g, c) in terms {
            acc = acc.try_add(&GroupAlgebraElement::monomial(g, c))?;
        }
    }
    Ok(acc)
}
