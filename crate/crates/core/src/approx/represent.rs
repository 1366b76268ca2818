use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{CrossedElement, CrossedMatrix, LocallyConstantFn};
use crate::field::{Field, FieldElement};
use crate::matrix::ExactMatrix;
use crate::space::{Clopen, Geometry};

use super::{ApproxError, ComponentSet, PartitionScheme, WComponent};

/// e_{ij}(W) = χ_{T^i(W)} t^{i−j}.
pub fn matrix_unit(
    cs: &ComponentSet,
    w: usize,
    i: usize,
    j: usize,
    field: &Field,
) -> Result<CrossedElement, ApproxError> {
    let comp = cs.components().get(w).ok_or(ApproxError::IndexOutOfRange)?;
    if i >= comp.length || j >= comp.length {
        return Err(ApproxError::IndexOutOfRange);
    }
    Ok(CrossedElement::chi_t(
        &comp.clopen.image(i as i64),
        field,
        i as i64 - j as i64,
    ))
}

/// (χ_{X∖E}t)^i χ_W (t^{-1}χ_{X∖E})^j, computed by multiplying out.
pub fn matrix_unit_from_generators(
    scheme: &PartitionScheme,
    w: &Clopen,
    i: u32,
    j: u32,
    field: &Field,
) -> CrossedElement {
    let s = CrossedElement::chi_t(&scheme.e().complement(), field, 1);
    let left = s.pow(i);
    let right = s.star().pow(j);
    &(&left * &CrossedElement::indicator(w, field)) * &right
}

/// h_W = Σ_i e_{ii}(W).
pub fn component_unit(cs: &ComponentSet, w: usize, field: &Field) -> Result<CrossedElement, ApproxError> {
    let comp = cs.components().get(w).ok_or(ApproxError::IndexOutOfRange)?;
    let mut acc = CrossedElement::zero(cs.scheme().space(), field);
    for i in 0..comp.length {
        acc = acc.try_add(&matrix_unit(cs, w, i, i, field)?)?;
    }
    Ok(acc)
}

/// Value of `f` on T^i(W), when constant there.
pub(crate) fn value_on_translate(f: &LocallyConstantFn, comp: &WComponent, i: usize) -> Option<FieldElement> {
    match (comp.as_cylinder(), comp.clopen.space().geometry) {
        (Some((start, word)), Geometry::TwoSidedShift) => f.constant_on_cylinder(start - i as i64, word),
        _ => f.constant_on(&comp.clopen.image(i as i64)),
    }
}

/// The k|W| × k|W| block of a k×k matrix at the component; row (p, i) sits at p|W| + i.
pub(crate) fn block_for(a: &CrossedMatrix, comp: &WComponent, index: usize) -> Result<ExactMatrix, ApproxError> {
    let k = a.size();
    let len = comp.length;
    let field = a.field();
    let mut m = ExactMatrix::zeros(k * len, k * len, field);
    for p in 0..k {
        for q in 0..k {
            for (d, f) in a.entry(p, q).terms() {
                for i in 0..len {
                    let Some(v) = value_on_translate(f, comp, i) else {
                        return Err(ApproxError::NotRepresentableAtLevel {
                            component: index,
                            degree: d,
                            reason: format!("coefficient is not constant on T^{i}(W)"),
                        });
                    };
                    if v.is_zero() {
                        continue;
                    }
                    let j = i as i64 - d;
                    if j < 0 || j >= len as i64 {
                        return Err(ApproxError::NotRepresentableAtLevel {
                            component: index,
                            degree: d,
                            reason: format!("degree {d} leaves W from position {i}"),
                        });
                    }
                    let (r, c) = (p * len + i, q * len + j as usize);
                    let cur = m.get(r, c).clone();
                    m.set(r, c, &cur + &v);
                }
            }
        }
    }
    Ok(m)
}

/// The image (h_W a)_W over stored components; blocks for missing components are never implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockElement {
    cs: Arc<ComponentSet>,
    k: usize,
    field: Field,
    blocks: Vec<ExactMatrix>,
}

impl BlockElement {
    pub fn new(cs: Arc<ComponentSet>, k: usize, field: &Field, blocks: Vec<ExactMatrix>) -> Result<Self, ApproxError> {
        if blocks.len() != cs.len() {
            return Err(ApproxError::Shape(format!(
                "{} blocks for {} components",
                blocks.len(),
                cs.len()
            )));
        }
        for (b, w) in blocks.iter().zip(cs.components()) {
            if b.rows() != k * w.length || b.cols() != k * w.length {
                return Err(ApproxError::Shape(format!(
                    "block of size {} for |W| = {}",
                    b.rows(),
                    w.length
                )));
            }
        }
        Ok(BlockElement {
            cs,
            k,
            field: field.clone(),
            blocks,
        })
    }

    pub fn identity(cs: Arc<ComponentSet>, k: usize, field: &Field) -> Self {
        let blocks = cs
            .components()
            .iter()
            .map(|w| ExactMatrix::identity(k * w.length, field))
            .collect();
        BlockElement {
            cs,
            k,
            field: field.clone(),
            blocks,
        }
    }

    pub fn components(&self) -> &Arc<ComponentSet> {
        &self.cs
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn blocks(&self) -> &[ExactMatrix] {
        &self.blocks
    }

    pub fn block(&self, w: usize) -> &ExactMatrix {
        &self.blocks[w]
    }

    fn compatible(&self, other: &Self) -> Result<(), ApproxError> {
        if !Arc::ptr_eq(&self.cs, &other.cs) && self.cs.components() != other.cs.components() {
            return Err(ApproxError::Shape("different component sets".into()));
        }
        if self.k != other.k {
            return Err(ApproxError::Shape("different matrix sizes".into()));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&ExactMatrix, &ExactMatrix) -> ExactMatrix) -> Result<Self, ApproxError> {
        self.compatible(other)?;
        Ok(BlockElement {
            cs: self.cs.clone(),
            k: self.k,
            field: self.field.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ApproxError> {
        self.zip(other, |a, b| a.mul(b))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ApproxError> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ApproxError> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn star(&self) -> Self {
        BlockElement {
            cs: self.cs.clone(),
            k: self.k,
            field: self.field.clone(),
            blocks: self.blocks.iter().map(|b| b.conj_transpose()).collect(),
        }
    }

    /// Σ_W μ(W) Rk(M_W).
    pub fn truncated_rank(&self) -> BigRational {
        self.cs
            .components()
            .iter()
            .zip(&self.blocks)
            .fold(BigRational::zero(), |acc, (w, b)| {
                acc + &w.measure * BigRational::from_integer(b.rank().into())
            })
    }
}

pub fn represent(a: &CrossedElement, cs: &Arc<ComponentSet>) -> Result<BlockElement, ApproxError> {
    represent_matrix(&CrossedMatrix::scalar(a.clone()), cs)
}

pub fn represent_matrix(a: &CrossedMatrix, cs: &Arc<ComponentSet>) -> Result<BlockElement, ApproxError> {
    if a.space() != cs.scheme().space() {
        return Err(ApproxError::SpaceMismatch);
    }
    let blocks: Result<Vec<ExactMatrix>, ApproxError> = cs
        .components()
        .par_iter()
        .enumerate()
        .map(|(idx, w)| block_for(a, w, idx))
        .collect();
    BlockElement::new(cs.clone(), a.size(), a.field(), blocks?)
}

/// G_d = X ∖ (E ∪ T(E) ∪ ⋯ ∪ T^{d−1}(E)), the support of (χ_{X∖E}t)^d t^{−d}.
fn good_set(scheme: &PartitionScheme, d: usize) -> Result<Clopen, ApproxError> {
    let mut bad = Clopen::empty(scheme.space());
    for i in 0..d {
        bad = bad.union(&scheme.e().image(i as i64))?;
    }
    Ok(bad.complement())
}

/// Replaces t^d by (χ_{X∖E}t)^d and t^{−d} by its adjoint; the bound adds |d|μ(E) for each degree
/// whose coefficient changes.
pub fn approximant(a: &CrossedElement, scheme: &PartitionScheme) -> Result<(CrossedElement, BigRational), ApproxError> {
    if a.space() != scheme.space() {
        return Err(ApproxError::SpaceMismatch);
    }
    let mu = scheme.mu_e();
    let mut out = CrossedElement::zero(a.space(), a.field());
    let mut err = BigRational::zero();
    for (d, f) in a.terms() {
        let e = d.unsigned_abs() as usize;
        let g = if d >= 0 {
            good_set(scheme, e)?
        } else {
            good_set(scheme, e)?.image(d)
        };
        let cut = f.try_mul(&LocallyConstantFn::indicator(&g, a.field()))?;
        if &cut != f {
            err += &mu * BigRational::from_integer(e.into());
        }
        out = out.try_add(&CrossedElement::monomial(cut, d))?;
    }
    Ok((out, err))
}

/// Entry-wise [`approximant`]; the bound is the sum over entries.
pub fn approximant_matrix(
    a: &CrossedMatrix,
    scheme: &PartitionScheme,
) -> Result<(CrossedMatrix, BigRational), ApproxError> {
    let mut entries = Vec::with_capacity(a.size() * a.size());
    let mut err = BigRational::zero();
    for x in a.entries() {
        let (y, e) = approximant(x, scheme)?;
        entries.push(y);
        err += e;
    }
    Ok((CrossedMatrix::new(a.size(), entries)?, err))
}
