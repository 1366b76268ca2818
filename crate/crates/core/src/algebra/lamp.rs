use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::field::{Field, FieldElement, FieldExt};

use super::AlgebraError;

/// a_A t^j in Γ = ℤ₂ ≀ ℤ, lamps at absolute positions; t a_i t^{-1} = a_{i-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LampGroupElement {
    lamps: BTreeSet<i64>,
    shift: i64,
}

impl LampGroupElement {
    pub fn identity() -> Self {
        LampGroupElement {
            lamps: BTreeSet::new(),
            shift: 0,
        }
    }

    pub fn new(lamps: impl IntoIterator<Item = i64>, shift: i64) -> Self {
        let mut set = BTreeSet::new();
        for i in lamps {
            if !set.insert(i) {
                set.remove(&i);
            }
        }
        LampGroupElement { lamps: set, shift }
    }

    pub fn t(j: i64) -> Self {
        Self::new([], j)
    }

    pub fn a(i: i64) -> Self {
        Self::new([i], 0)
    }

    pub fn lamps(&self) -> &BTreeSet<i64> {
        &self.lamps
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// (A, j)(B, k) = (A Δ (B − j), j + k).
    pub fn mul(&self, other: &Self) -> Self {
        let moved: BTreeSet<i64> = other.lamps.iter().map(|b| b - self.shift).collect();
        LampGroupElement {
            lamps: self.lamps.symmetric_difference(&moved).copied().collect(),
            shift: self.shift + other.shift,
        }
    }

    /// (A, j)^{-1} = (A + j, −j).
    pub fn inv(&self) -> Self {
        LampGroupElement {
            lamps: self.lamps.iter().map(|a| a + self.shift).collect(),
            shift: -self.shift,
        }
    }
}

impl fmt::Display for LampGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.lamps.iter().map(|i| format!("a({i})")).collect();
        match self.shift {
            0 => {}
            1 => parts.push("t".into()),
            j => parts.push(format!("t^{j}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Finitely supported K-combinations of lamplighter group elements.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    field: Field,
    terms: BTreeMap<LampGroupElement, FieldElement>,
}

impl GroupAlgebraElement {
    pub fn zero(field: &Field) -> Self {
        GroupAlgebraElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: FieldElement) -> Self {
        Self::monomial(LampGroupElement::identity(), c)
    }

    pub fn one(field: &Field) -> Self {
        Self::scalar(field.one())
    }

    pub fn monomial(g: LampGroupElement, c: FieldElement) -> Self {
        let field = c.context().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        GroupAlgebraElement { field, terms }
    }

    pub fn group(g: LampGroupElement, field: &Field) -> Self {
        Self::monomial(g, field.one())
    }

    /// e_i = (1 + a_i)/2.
    pub fn e(i: i64, field: &Field) -> Result<Self, AlgebraError> {
        let half = half(field)?;
        let x = Self::one(field).try_add(&Self::group(LampGroupElement::a(i), field))?;
        Ok(x.scale(&half))
    }

    /// f_i = (1 − a_i)/2.
    pub fn f(i: i64, field: &Field) -> Result<Self, AlgebraError> {
        let half = half(field)?;
        let x = Self::one(field).try_sub(&Self::group(LampGroupElement::a(i), field))?;
        Ok(x.scale(&half))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LampGroupElement, &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &LampGroupElement) -> FieldElement {
        self.terms.get(g).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    fn add_term(terms: &mut BTreeMap<LampGroupElement, FieldElement>, g: LampGroupElement, c: FieldElement) {
        match terms.remove(&g) {
            Some(x) => {
                let s = &x + &c;
                if !s.is_zero() {
                    terms.insert(g, s);
                }
            }
            None => {
                if !c.is_zero() {
                    terms.insert(g, c);
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            Self::add_term(&mut terms, g.clone(), c.clone());
        }
        Ok(GroupAlgebraElement {
            field: self.field.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        for (g, x) in &self.terms {
            let y = x * c;
            if !y.is_zero() {
                terms.insert(g.clone(), y);
            }
        }
        GroupAlgebraElement {
            field: self.field.clone(),
            terms,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (g, x) in &self.terms {
            for (h, y) in &other.terms {
                Self::add_term(&mut terms, g.mul(h), x * y);
            }
        }
        Ok(GroupAlgebraElement {
            field: self.field.clone(),
            terms,
        })
    }

    /// (λ g)* = λ̄ g^{-1}.
    pub fn star(&self) -> Self {
        let terms = self.terms.iter().map(|(g, c)| (g.inv(), c.conj())).collect();
        GroupAlgebraElement {
            field: self.field.clone(),
            terms,
        }
    }

    /// Integer powers; negative exponents need a monomial λg with λ ≠ 0.
    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 {
            let mut it = self.terms.iter();
            match (it.next(), it.next()) {
                (Some((g, c)), None) => Self::monomial(g.inv(), c.inv().map_err(AlgebraError::Field)?),
                _ => return Err(AlgebraError::NotInvertible(self.to_string())),
            }
        } else {
            self.clone()
        };
        let mut r = Self::one(&self.field);
        for _ in 0..e.unsigned_abs() {
            r = r.try_mul(&base)?;
        }
        Ok(r)
    }
}

fn half(field: &Field) -> Result<FieldElement, AlgebraError> {
    field
        .from_i64(2)
        .inv()
        .map_err(|_| AlgebraError::CharacteristicError(field.characteristic()))
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, c)| format!("({c})*{g}")).collect();
        f.write_str(&parts.join(" + "))
    }
}
