use std::sync::Arc;

use crate::algebra::LocallyConstantFn;
use crate::approx::{
    enumerate_components, value_on_translate, ApproxError, BlockElement, ComponentSet, PartitionScheme, Provenance,
    WComponent,
};
use crate::field::{Field, FieldElement, FieldExt};
use crate::matrix::ExactMatrix;
use crate::space::Clopen;

use super::{SeriesError, TruncSkewSeries};

/// The degree-0 special set S₀ ∪ T^{-1}(S₁), present exactly when E ∩ T^{-1}(E) ≠ ∅.
pub fn unit_special_set(scheme: &PartitionScheme) -> Result<Option<Clopen>, SeriesError> {
    let e = scheme.e();
    let e_pre = e.image(-1);
    if e.is_disjoint(&e_pre)? {
        return Ok(None);
    }
    let mut s0 = e.clone();
    let mut s1 = e.clone();
    for z in scheme.parts() {
        if !z.is_disjoint(&e_pre)? {
            s0 = s0.union(z)?;
        }
        if !z.image(-1).is_disjoint(e)? {
            s1 = s1.union(z)?;
        }
    }
    Ok(Some(s0.union(&s1.image(-1))?))
}

/// Overlays single cylinders, or None on a clash.
fn overlay(cyls: &[(i64, Vec<u8>)]) -> Option<(i64, Vec<u8>)> {
    let lo = cyls.iter().map(|c| c.0).min()?;
    let hi = cyls.iter().map(|c| c.0 + c.1.len() as i64).max()?;
    let mut word: Vec<Option<u8>> = vec![None; (hi - lo) as usize];
    for (s, w) in cyls {
        for (k, &b) in w.iter().enumerate() {
            let slot = &mut word[(s - lo) as usize + k];
            match slot {
                Some(x) if *x != b => return None,
                _ => *slot = Some(b),
            }
        }
    }
    // A gap between windows leaves free columns; the caller falls back to intersecting.
    if word.iter().any(|b| b.is_none()) {
        return None;
    }
    Some((lo, word.into_iter().map(|b| b.unwrap()).collect()))
}

/// S(W) = T^i(T^{-1}Z_1 ∩ ⋯ ∩ T^{-i}Z_i) for |W| = i + 1 ≥ 2; the unit set for |W| = 1.
pub fn special_set_of(scheme: &PartitionScheme, w: &WComponent) -> Result<Clopen, SeriesError> {
    let space = scheme.space();
    if w.length == 1 {
        return Ok(unit_special_set(scheme)?.unwrap_or_else(|| Clopen::empty(space)));
    }
    let i = w.length - 1;
    if let Provenance::LamplighterLevel { n, .. } = scheme.provenance() {
        let word = w.clopen.words().next().expect("lamplighter components are cylinders");
        return Ok(Clopen::cylinder(
            space,
            -(n as i64) - i as i64 + 1,
            &word[1..i + 2 * n + 1],
        )?);
    }
    let images: Vec<Clopen> = w
        .label
        .iter()
        .enumerate()
        .map(|(r, &z)| scheme.parts()[z as usize].image(i as i64 - (r as i64 + 1)))
        .collect();
    if images.iter().all(|c| c.word_count() == 1) {
        let cyls: Vec<(i64, Vec<u8>)> = images
            .iter()
            .map(|c| (c.start(), c.words().next().unwrap().clone()))
            .collect();
        if let Some((s, word)) = overlay(&cyls) {
            return Ok(Clopen::cylinder(space, s, &word)?);
        }
    }
    let mut acc = Clopen::full(space);
    for c in &images {
        acc = acc.intersect(c)?;
    }
    Ok(acc)
}

/// 𝒲_i, listed in the order of the components of length i + 1.
pub fn special_sets(scheme: &Arc<PartitionScheme>, i: usize) -> Result<Vec<Clopen>, SeriesError> {
    if i == 0 {
        return Ok(unit_special_set(scheme)?.into_iter().collect());
    }
    let cs = enumerate_components(scheme, i + 1)?;
    cs.components()
        .iter()
        .filter(|w| w.length == i + 1)
        .map(|w| special_set_of(scheme, w))
        .collect()
}

/// Σ_W λ_{S(W)} χ_{S(W)} t^{|W|−1}, keyed by the components of a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialSeries {
    cs: Arc<ComponentSet>,
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl SpecialSeries {
    pub fn new(cs: Arc<ComponentSet>, field: &Field, coeffs: Vec<FieldElement>) -> Result<Self, SeriesError> {
        if coeffs.len() != cs.len() {
            return Err(SeriesError::SchemeMismatch);
        }
        Ok(SpecialSeries {
            cs,
            field: field.clone(),
            coeffs,
        })
    }

    pub fn zero(cs: Arc<ComponentSet>, field: &Field) -> Self {
        let coeffs = vec![field.zero(); cs.len()];
        SpecialSeries {
            cs,
            field: field.clone(),
            coeffs,
        }
    }

    /// The ⊙-unit: every coefficient 1.
    pub fn e(cs: Arc<ComponentSet>, field: &Field) -> Self {
        let coeffs = vec![field.one(); cs.len()];
        SpecialSeries {
            cs,
            field: field.clone(),
            coeffs,
        }
    }

    pub fn components(&self) -> &Arc<ComponentSet> {
        &self.cs
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, w: usize) -> &FieldElement {
        &self.coeffs[w]
    }

    pub fn set_coeff(&mut self, w: usize, c: FieldElement) {
        self.coeffs[w] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Smallest degree with a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.cs
            .components()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, _)| w.length - 1)
            .min()
    }

    fn compatible(&self, other: &Self) -> Result<(), SeriesError> {
        let same = Arc::ptr_eq(&self.cs, &other.cs) || self.cs.components() == other.cs.components();
        if !same || !self.field.same(&other.field) {
            return Err(SeriesError::SchemeMismatch);
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        Ok(SpecialSeries {
            cs: self.cs.clone(),
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        })
    }

    fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        SpecialSeries {
            cs: self.cs.clone(),
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.map(|a| a * c)
    }

    pub fn hadamard(&self, other: &Self) -> Result<Self, SeriesError> {
        self.zip(other, |a, b| a * b)
    }

    pub fn conj(&self) -> Self {
        self.map(|a| a.conj())
    }

    /// Nonzero coefficients inverted, zeros kept.
    pub fn relative_inverse(&self) -> Self {
        self.map(|a| {
            if a.is_zero() {
                a.clone()
            } else {
                a.inv().expect("nonzero")
            }
        })
    }

    /// Ψ: the central element (λ_{S(W)} h_W)_W.
    pub fn psi(&self) -> BlockElement {
        let blocks = self
            .cs
            .components()
            .iter()
            .zip(&self.coeffs)
            .map(|(w, c)| ExactMatrix::identity(w.length, &self.field).scale(c))
            .collect();
        BlockElement::new(self.cs.clone(), 1, &self.field, blocks).expect("block shapes match")
    }

    /// The series of order cutoff − 1 with coefficients Σ λ χ_{S(W)}.
    pub fn to_series(&self) -> Result<TruncSkewSeries, SeriesError> {
        let scheme = self.cs.scheme().clone();
        let order = self.cs.cutoff() - 1;
        let space = scheme.space();
        let mut coeffs = vec![LocallyConstantFn::zero(space, &self.field); order + 1];
        for (w, c) in self.cs.components().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let s = special_set_of(&scheme, w)?;
            let d = w.length - 1;
            coeffs[d] = coeffs[d].try_add(&LocallyConstantFn::scaled_indicator(&s, c.clone()))?;
        }
        TruncSkewSeries::new(scheme, &self.field, order, coeffs)
    }

    /// The product in ℬ₀[[t;T]], which must again be special.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let prod = self.to_series()?.mul(&other.to_series()?)?;
        let p = project_p(&prod, &self.cs)?;
        if p.to_series()? != prod {
            return Err(SeriesError::NotSpecial("the product leaves the special series".into()));
        }
        Ok(p)
    }
}

/// P(x): the coefficient at W is the bottom-left entry of the W-block of π_+(x).
pub fn project_p(x: &TruncSkewSeries, cs: &Arc<ComponentSet>) -> Result<SpecialSeries, SeriesError> {
    let needed = cs.components().iter().map(|w| w.length - 1).max().unwrap_or(0);
    if x.order() < needed {
        return Err(SeriesError::CutoffMismatch {
            order: x.order(),
            needed: needed + 1,
        });
    }
    let mut coeffs = Vec::with_capacity(cs.len());
    for (idx, w) in cs.components().iter().enumerate() {
        let d = w.length - 1;
        let v = value_on_translate(x.coeff(d), w, d).ok_or_else(|| ApproxError::NotRepresentableAtLevel {
            component: idx,
            degree: d as i64,
            reason: format!("coefficient is not constant on T^{d}(W)"),
        })?;
        coeffs.push(v);
    }
    SpecialSeries::new(cs.clone(), x.field(), coeffs)
}

fn corner(cs: &Arc<ComponentSet>, field: &Field, last: bool) -> BlockElement {
    let blocks = cs
        .components()
        .iter()
        .map(|w| {
            let mut m = ExactMatrix::zeros(w.length, w.length, field);
            let i = if last { w.length - 1 } else { 0 };
            m.set(i, i, field.one());
            m
        })
        .collect();
    BlockElement::new(cs.clone(), 1, field, blocks).expect("block shapes match")
}

/// p_E = (e_{00}(W))_W.
pub fn p_e(cs: &Arc<ComponentSet>, field: &Field) -> BlockElement {
    corner(cs, field, false)
}

/// p_{T^{-1}(E)} = (e_{|W|−1,|W|−1}(W))_W.
pub fn p_tinv_e(cs: &Arc<ComponentSet>, field: &Field) -> BlockElement {
    corner(cs, field, true)
}
