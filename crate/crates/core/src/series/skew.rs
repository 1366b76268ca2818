use std::sync::Arc;

use crate::algebra::{CrossedElement, LocallyConstantFn};
use crate::approx::{represent, BlockElement, ComponentSet, PartitionScheme};
use crate::field::{Field, FieldExt};

use super::SeriesError;

/// Σ_{i≤L} b_i t^i with b_i ∈ ℬ_i, i.e. supported off E ∪ T(E) ∪ ⋯ ∪ T^{i−1}(E).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSkewSeries {
    scheme: Arc<PartitionScheme>,
    field: Field,
    coeffs: Vec<LocallyConstantFn>,
}

fn check_support(scheme: &PartitionScheme, i: usize, b: &LocallyConstantFn) -> Result<(), SeriesError> {
    if i == 0 || b.is_zero() {
        return Ok(());
    }
    let supp = b.support();
    for j in 0..i {
        if !scheme.e().image(j as i64).is_disjoint(&supp)? {
            return Err(SeriesError::SupportViolation(i));
        }
    }
    Ok(())
}

/// Pointwise inverse of a nowhere-vanishing function.
fn pointwise_inverse(b: &LocallyConstantFn) -> Option<LocallyConstantFn> {
    let q = b.space().alphabet as usize;
    let len = b.window().map_or(0, |(lo, hi)| (hi - lo + 1) as usize);
    let total = q.checked_pow(len as u32)?;
    if b.nonzero_count() != total {
        return None;
    }
    let mut vals = Vec::with_capacity(total);
    for (w, v) in b.entries() {
        vals.push((w.clone(), v.inv().ok()?));
    }
    let start = b.window().map_or(0, |(lo, _)| lo);
    Some(LocallyConstantFn::from_words(b.space(), b.field(), start, len, vals))
}

impl TruncSkewSeries {
    /// Coefficients beyond `order` are rejected; missing ones are zero.
    pub fn new(
        scheme: Arc<PartitionScheme>,
        field: &Field,
        order: usize,
        mut coeffs: Vec<LocallyConstantFn>,
    ) -> Result<Self, SeriesError> {
        if coeffs.len() > order + 1 {
            return Err(SeriesError::DegreeOverflow {
                degree: coeffs.len() - 1,
                max: order,
            });
        }
        let space = scheme.space();
        for c in &coeffs {
            if c.space() != space || !c.field().same(field) {
                return Err(SeriesError::SchemeMismatch);
            }
        }
        coeffs.resize(order + 1, LocallyConstantFn::zero(space, field));
        for (i, b) in coeffs.iter().enumerate() {
            check_support(&scheme, i, b)?;
        }
        Ok(TruncSkewSeries {
            scheme,
            field: field.clone(),
            coeffs,
        })
    }

    pub fn zero(scheme: Arc<PartitionScheme>, field: &Field, order: usize) -> Self {
        let z = LocallyConstantFn::zero(scheme.space(), field);
        TruncSkewSeries {
            scheme,
            field: field.clone(),
            coeffs: vec![z; order + 1],
        }
    }

    pub fn one(scheme: Arc<PartitionScheme>, field: &Field, order: usize) -> Self {
        let mut x = Self::zero(scheme, field, order);
        x.coeffs[0] = LocallyConstantFn::constant(x.scheme.space(), field.one());
        x
    }

    /// s = χ_{X∖E} t.
    pub fn s(scheme: Arc<PartitionScheme>, field: &Field, order: usize) -> Self {
        let mut x = Self::zero(scheme, field, order);
        if order >= 1 {
            x.coeffs[1] = LocallyConstantFn::indicator(&x.scheme.e().complement(), field);
        }
        x
    }

    /// u = (1 − s)^{-1}.
    pub fn u(scheme: Arc<PartitionScheme>, field: &Field, order: usize) -> Self {
        let one = Self::one(scheme.clone(), field, order);
        let s = Self::s(scheme, field, order);
        one.sub(&s).and_then(|x| x.invert()).expect("1 - s is invertible")
    }

    /// Terms of degree above `order` are dropped.
    pub fn from_crossed(a: &CrossedElement, scheme: Arc<PartitionScheme>, order: usize) -> Result<Self, SeriesError> {
        if a.space() != scheme.space() {
            return Err(SeriesError::SchemeMismatch);
        }
        let mut coeffs = vec![LocallyConstantFn::zero(scheme.space(), a.field()); order + 1];
        for (d, f) in a.terms() {
            if d < 0 {
                return Err(SeriesError::NegativeDegree(d));
            }
            if d as usize <= order {
                coeffs[d as usize] = f.clone();
            }
        }
        Self::new(scheme, a.field(), order, coeffs)
    }

    pub fn scheme(&self) -> &Arc<PartitionScheme> {
        &self.scheme
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &LocallyConstantFn {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[LocallyConstantFn] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Σ_{i ≤ max} b_i t^i as an element of the crossed product.
    pub fn to_crossed_upto(&self, max: usize) -> CrossedElement {
        let mut acc = CrossedElement::zero(self.scheme.space(), &self.field);
        for (i, b) in self.coeffs.iter().enumerate().take(max + 1) {
            if !b.is_zero() {
                acc = acc
                    .try_add(&CrossedElement::monomial(b.clone(), i as i64))
                    .expect("same space");
            }
        }
        acc
    }

    pub fn to_crossed(&self) -> CrossedElement {
        self.to_crossed_upto(self.order())
    }

    fn compatible(&self, other: &Self) -> Result<(), SeriesError> {
        let same_scheme = Arc::ptr_eq(&self.scheme, &other.scheme)
            || (self.scheme.e() == other.scheme.e() && self.scheme.parts() == other.scheme.parts());
        if !same_scheme || !self.field.same(&other.field) || self.order() != other.order() {
            return Err(SeriesError::SchemeMismatch);
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<LocallyConstantFn>) -> Result<Self, SeriesError> {
        for (i, b) in coeffs.iter().enumerate() {
            check_support(&self.scheme, i, b)?;
        }
        Ok(TruncSkewSeries {
            scheme: self.scheme.clone(),
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        self.with_coeffs(c)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncSkewSeries {
            scheme: self.scheme.clone(),
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// (Σ b_i t^i)(Σ c_j t^j) = Σ b_i (c_j ∘ T^{-i}) t^{i+j}, truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let l = self.order();
        let mut out = vec![LocallyConstantFn::zero(self.scheme.space(), &self.field); l + 1];
        for (i, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (j, c) in other.coeffs.iter().enumerate().take(l + 1 - i) {
                if c.is_zero() {
                    continue;
                }
                let term = b.try_mul(&c.transport(i as i64))?;
                out[i + j] = out[i + j].try_add(&term)?;
            }
        }
        self.with_coeffs(out)
    }

    /// Left multiplication by a function of ℬ₀.
    fn mul_fn_left(&self, g: &LocallyConstantFn) -> Result<Self, SeriesError> {
        let c = self
            .coeffs
            .iter()
            .map(|b| g.try_mul(b))
            .collect::<Result<Vec<_>, _>>()?;
        self.with_coeffs(c)
    }

    /// x = b₀(1 − y) with y = 1 − b₀⁻¹x, so x⁻¹ = (1 + y + ⋯ + y^L) b₀⁻¹.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let inv0 = pointwise_inverse(&self.coeffs[0]).ok_or(SeriesError::NotInvertibleConstantTerm)?;
        let l = self.order();
        let one = Self::one(self.scheme.clone(), &self.field, l);
        let y = one.sub(&self.mul_fn_left(&inv0)?)?;
        let mut sum = one.clone();
        let mut pw = one;
        for _ in 0..l {
            pw = pw.mul(&y)?;
            if pw.is_zero() {
                break;
            }
            sum = sum.add(&pw)?;
        }
        let right = Self::zero(self.scheme.clone(), &self.field, l).with_coeffs({
            let mut c = vec![LocallyConstantFn::zero(self.scheme.space(), &self.field); l + 1];
            c[0] = inv0;
            c
        })?;
        sum.mul(&right)
    }

    /// Lower-triangular block image; needs order ≥ max |W| − 1.
    pub fn pi_plus(&self, cs: &Arc<ComponentSet>) -> Result<BlockElement, SeriesError> {
        let needed = cs.components().iter().map(|w| w.length - 1).max().unwrap_or(0);
        if self.order() < needed {
            return Err(SeriesError::CutoffMismatch {
                order: self.order(),
                needed: needed + 1,
            });
        }
        Ok(represent(&self.to_crossed_upto(needed), cs)?)
    }
}
