use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, FieldElement, FieldExt};
use crate::space::{Clopen, SpaceSpec};

use super::{AlgebraError, LocallyConstantFn};

/// Finite sums Σ f_d t^d in C_K(X) ⋊_T ℤ, with t χ_U t^{-1} = χ_{T(U)}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CrossedElement {
    space: SpaceSpec,
    field: Field,
    terms: BTreeMap<i64, LocallyConstantFn>,
}

impl CrossedElement {
    pub fn zero(space: SpaceSpec, field: &Field) -> Self {
        CrossedElement {
            space,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: SpaceSpec, field: &Field) -> Self {
        Self::monomial(LocallyConstantFn::constant(space, field.one()), 0)
    }

    pub fn scalar(space: SpaceSpec, c: FieldElement) -> Self {
        Self::monomial(LocallyConstantFn::constant(space, c), 0)
    }

    /// t^d.
    pub fn t_pow(space: SpaceSpec, field: &Field, d: i64) -> Self {
        Self::monomial(LocallyConstantFn::constant(space, field.one()), d)
    }

    /// f t^d.
    pub fn monomial(f: LocallyConstantFn, d: i64) -> Self {
        let mut terms = BTreeMap::new();
        let space = f.space();
        let field = f.field().clone();
        if !f.is_zero() {
            terms.insert(d, f);
        }
        CrossedElement { space, field, terms }
    }

    pub fn indicator(u: &Clopen, field: &Field) -> Self {
        Self::monomial(LocallyConstantFn::indicator(u, field), 0)
    }

    /// χ_U t^d.
    pub fn chi_t(u: &Clopen, field: &Field, d: i64) -> Self {
        Self::monomial(LocallyConstantFn::indicator(u, field), d)
    }

    pub fn space(&self) -> SpaceSpec {
        self.space
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &LocallyConstantFn)> {
        self.terms.iter().map(|(&d, f)| (d, f))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn coefficient(&self, d: i64) -> LocallyConstantFn {
        self.terms
            .get(&d)
            .cloned()
            .unwrap_or_else(|| LocallyConstantFn::zero(self.space, &self.field))
    }

    fn compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.space != other.space {
            return Err(AlgebraError::SpaceMismatch);
        }
        if !self.field.same(&other.field) {
            return Err(AlgebraError::ContextMismatch);
        }
        Ok(())
    }

    fn insert_add(terms: &mut BTreeMap<i64, LocallyConstantFn>, d: i64, f: LocallyConstantFn) {
        if f.is_zero() {
            return;
        }
        match terms.remove(&d) {
            Some(g) => {
                let s = g.try_add(&f).expect("compatible summands");
                if !s.is_zero() {
                    terms.insert(d, s);
                }
            }
            None => {
                terms.insert(d, f);
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (&d, f) in &other.terms {
            Self::insert_add(&mut terms, d, f.clone());
        }
        Ok(CrossedElement {
            space: self.space,
            field: self.field.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        for (&d, f) in &self.terms {
            let g = f.scale(c);
            if !g.is_zero() {
                terms.insert(d, g);
            }
        }
        CrossedElement {
            space: self.space,
            field: self.field.clone(),
            terms,
        }
    }

    /// (f t^i)(g t^j) = f·(g∘T^{-i}) t^{i+j}.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let mut terms = BTreeMap::new();
        for (&i, f) in &self.terms {
            for (&j, g) in &other.terms {
                let prod = f.try_mul(&g.transport(i))?;
                Self::insert_add(&mut terms, i + j, prod);
            }
        }
        Ok(CrossedElement {
            space: self.space,
            field: self.field.clone(),
            terms,
        })
    }

    /// (f t^d)* = t^{-d} f̄ = (f̄∘T^d) t^{-d}.
    pub fn star(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&d, f) in &self.terms {
            Self::insert_add(&mut terms, -d, f.conj().transport(-d));
        }
        CrossedElement {
            space: self.space,
            field: self.field.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.space, &self.field);
        for _ in 0..e {
            r = r.try_mul(self).expect("same context");
        }
        r
    }

    /// Left multiplication by a function: Σ (g f_d) t^d.
    pub fn mul_fn_left(&self, g: &LocallyConstantFn) -> Self {
        let mut terms = BTreeMap::new();
        for (&d, f) in &self.terms {
            let p = g.try_mul(f).expect("same context");
            if !p.is_zero() {
                terms.insert(d, p);
            }
        }
        CrossedElement {
            space: self.space,
            field: self.field.clone(),
            terms,
        }
    }
}

impl std::ops::Add for &CrossedElement {
    type Output = CrossedElement;
    fn add(self, rhs: &CrossedElement) -> CrossedElement {
        self.try_add(rhs).expect("compatible crossed elements")
    }
}

impl std::ops::Sub for &CrossedElement {
    type Output = CrossedElement;
    fn sub(self, rhs: &CrossedElement) -> CrossedElement {
        self.try_sub(rhs).expect("compatible crossed elements")
    }
}

impl std::ops::Mul for &CrossedElement {
    type Output = CrossedElement;
    fn mul(self, rhs: &CrossedElement) -> CrossedElement {
        self.try_mul(rhs).expect("compatible crossed elements")
    }
}

impl fmt::Debug for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, g)| match d {
                0 => format!("({g})"),
                1 => format!("({g})·t"),
                _ => format!("({g})·t^{d}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Square matrices over the crossed product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossedMatrix {
    size: usize,
    entries: Vec<CrossedElement>,
}

impl CrossedMatrix {
    pub fn new(size: usize, entries: Vec<CrossedElement>) -> Result<Self, AlgebraError> {
        if entries.len() != size * size || size == 0 {
            return Err(AlgebraError::Shape(format!(
                "{} entries for a {size}×{size} matrix",
                entries.len()
            )));
        }
        let first = &entries[0];
        for e in &entries {
            first.compatible(e)?;
        }
        Ok(CrossedMatrix { size, entries })
    }

    pub fn scalar(a: CrossedElement) -> Self {
        CrossedMatrix {
            size: 1,
            entries: vec![a],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &CrossedElement {
        &self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[CrossedElement] {
        &self.entries
    }

    pub fn space(&self) -> SpaceSpec {
        self.entries[0].space()
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    pub fn map(&self, f: impl Fn(&CrossedElement) -> CrossedElement) -> Self {
        CrossedMatrix {
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn star(&self) -> Self {
        let n = self.size;
        let entries = (0..n * n).map(|k| self.entry(k % n, k / n).star()).collect();
        CrossedMatrix { size: n, entries }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.size != other.size {
            return Err(AlgebraError::Shape("size mismatch".into()));
        }
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CrossedElement::zero(self.space(), self.field());
                for k in 0..n {
                    acc = acc.try_add(&self.entry(i, k).try_mul(other.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(CrossedMatrix { size: n, entries })
    }
}
