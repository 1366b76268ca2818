use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, FieldElement, FieldExt};
use crate::space::{Clopen, Geometry, SpaceSpec, Word, WordTable};

use super::AlgebraError;

/// A locally constant K-valued function on X, stored as its values on the words
/// of a minimal window (absent words are zero). The nonzero level sets are the
/// mutually disjoint clopens of the canonical form Σ λ_i χ_{K_i}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocallyConstantFn {
    space: SpaceSpec,
    field: Field,
    table: WordTable<FieldElement>,
}

impl LocallyConstantFn {
    fn from_table(space: SpaceSpec, field: Field, mut table: WordTable<FieldElement>) -> Self {
        table.map.retain(|_, v| !v.is_zero());
        table.trim(space.alphabet);
        LocallyConstantFn { space, field, table }
    }

    pub fn zero(space: SpaceSpec, field: &Field) -> Self {
        LocallyConstantFn {
            space,
            field: field.clone(),
            table: WordTable::empty(),
        }
    }

    pub fn constant(space: SpaceSpec, c: FieldElement) -> Self {
        let field = c.context().clone();
        Self::from_table(space, field, WordTable::constant(c))
    }

    pub fn indicator(u: &Clopen, field: &Field) -> Self {
        Self::scaled_indicator(u, field.one())
    }

    pub fn scaled_indicator(u: &Clopen, c: FieldElement) -> Self {
        let field = c.context().clone();
        let t = u.table();
        let map = t.map.keys().map(|w| (w.clone(), c.clone())).collect();
        Self::from_table(u.space(), field, WordTable::new(t.start, t.len, map))
    }

    /// Values on the words of a window, which must contain every nonzero position.
    pub fn from_words(
        space: SpaceSpec,
        field: &Field,
        start: i64,
        len: usize,
        values: impl IntoIterator<Item = (Word, FieldElement)>,
    ) -> Self {
        let map: BTreeMap<Word, FieldElement> = values.into_iter().collect();
        Self::from_table(space, field.clone(), WordTable::new(start, len, map))
    }

    pub fn space(&self) -> SpaceSpec {
        self.space
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        self.table.window()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &FieldElement)> {
        self.table.map.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.table.map.is_empty()
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

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let (s, l) = match (self.window(), other.window()) {
            (None, None) => (0, 0),
            (Some((a, b)), None) | (None, Some((a, b))) => (a, (b - a + 1) as usize),
            (Some((a, b)), Some((c, d))) => (a.min(c), (b.max(d) - a.min(c) + 1) as usize),
        };
        let q = self.space.alphabet;
        let mut t = self.table.extend_to(s, l, q);
        for (w, v) in other.table.extend_to(s, l, q).map {
            match t.map.get_mut(&w) {
                Some(x) => *x = &*x + &v,
                None => {
                    t.map.insert(w, v);
                }
            }
        }
        Ok(Self::from_table(self.space, self.field.clone(), t))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.compatible(other)?;
        let t = self.table.merge(&other.table, self.space.alphabet, |a, b| {
            let p = a * b;
            (!p.is_zero()).then_some(p)
        });
        Ok(Self::from_table(self.space, self.field.clone(), t))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let map = self.table.map.iter().map(|(w, v)| (w.clone(), v * c)).collect();
        Self::from_table(
            self.space,
            self.field.clone(),
            WordTable::new(self.table.start, self.table.len, map),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1))
    }

    /// Pointwise involution λ ↦ λ̄.
    pub fn conj(&self) -> Self {
        let map = self.table.map.iter().map(|(w, v)| (w.clone(), v.conj())).collect();
        Self::from_table(
            self.space,
            self.field.clone(),
            WordTable::new(self.table.start, self.table.len, map),
        )
    }

    /// f ∘ T^{-k}, so that χ_U becomes χ_{T^k(U)}.
    pub fn transport(&self, k: i64) -> Self {
        if k == 0 || self.table.len == 0 {
            return self.clone();
        }
        match self.space.geometry {
            Geometry::TwoSidedShift => {
                let mut t = self.table.clone();
                t.start -= k;
                LocallyConstantFn {
                    space: self.space,
                    field: self.field.clone(),
                    table: t,
                }
            }
            Geometry::OneSidedOdometer => {
                let end = self.table.end() as usize;
                let t = self.table.extend_to(1, end, 2);
                let map = t.map.into_iter().map(|(w, v)| (odometer_shift(&w, k), v)).collect();
                Self::from_table(self.space, self.field.clone(), WordTable::new(1, end, map))
            }
        }
    }

    pub fn support(&self) -> Clopen {
        Clopen::from_words(
            self.space,
            self.table.start,
            self.table.len,
            self.table.map.keys().cloned(),
        )
        .expect("table words are valid")
    }

    /// Distinct values taken on a clopen (zero included when attained).
    pub fn values_on(&self, u: &Clopen) -> Vec<FieldElement> {
        let mut out: Vec<FieldElement> = Vec::new();
        let zero = self.field.zero();
        for w in u.words() {
            for v in self.table.values_on_cylinder(u.start(), w, self.space.alphabet) {
                let v = v.cloned().unwrap_or_else(|| zero.clone());
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// The value on a nonempty clopen, when constant there.
    pub fn constant_on(&self, u: &Clopen) -> Option<FieldElement> {
        let vals = self.values_on(u);
        (vals.len() == 1).then(|| vals.into_iter().next().unwrap())
    }

    /// Value on the cylinder fixing `word` from `start`, when constant there.
    pub fn constant_on_cylinder(&self, start: i64, word: &[u8]) -> Option<FieldElement> {
        let vals = self.table.values_on_cylinder(start, word, self.space.alphabet);
        match vals.as_slice() {
            [v] => Some(v.cloned().unwrap_or_else(|| self.field.zero())),
            _ => None,
        }
    }

    /// Value at a point given coordinate-wise.
    pub fn eval(&self, coord: impl Fn(i64) -> u8) -> FieldElement {
        self.table.lookup(coord).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Whether the function vanishes outside `u`.
    pub fn supported_in(&self, u: &Clopen) -> bool {
        u.contains(&self.support()).expect("same space")
    }

    /// Number of window words with a nonzero value.
    pub fn nonzero_count(&self) -> usize {
        self.table.map.len()
    }
}

pub(crate) fn odometer_shift(word: &[u8], k: i64) -> Word {
    crate::space::odometer_add(word, k)
}

impl fmt::Debug for LocallyConstantFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LocallyConstantFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.table.len == 0 {
            return write!(f, "{}", self.table.map.values().next().unwrap());
        }
        let parts: Vec<String> = self
            .table
            .map
            .iter()
            .map(|(w, v)| format!("{}:{}", crate::space::word_to_string(w), v))
            .collect();
        write!(f, "[{}:{}]{{{}}}", self.table.start, self.table.end(), parts.join(", "))
    }
}
