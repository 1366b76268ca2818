//! The Cantor space Σ^ℤ (or Σ^ℕ for the odometer), its clopen algebra, the
//! homeomorphism T, the uniform Bernoulli measure and periodic points.

mod table;

pub(crate) use table::for_each_word;
pub use table::{Word, WordTable};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("clopens live on different spaces")]
    SpaceMismatch,
    #[error("operation not available for this geometry")]
    GeometryMismatch,
    #[error("symbol {0} outside the alphabet")]
    InvalidSymbol(u8),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("word {0} is not primitive")]
    NotPrimitive(String),
    #[error("cannot parse cylinder: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geometry {
    /// T(x)_i = x_{i+1} on Σ^ℤ.
    TwoSidedShift,
    /// Binary adding machine on {0,1}^ℕ, coordinates from 1, x_1 least significant.
    OneSidedOdometer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceSpec {
    pub alphabet: u8,
    pub geometry: Geometry,
}

impl SpaceSpec {
    pub fn new(alphabet: u8, geometry: Geometry) -> Result<Self, SpaceError> {
        if alphabet < 2 || (geometry == Geometry::OneSidedOdometer && alphabet != 2) {
            return Err(SpaceError::InvalidSymbol(alphabet));
        }
        Ok(SpaceSpec { alphabet, geometry })
    }

    /// {0,1}^ℤ with the shift.
    pub fn binary_shift() -> Self {
        SpaceSpec {
            alphabet: 2,
            geometry: Geometry::TwoSidedShift,
        }
    }

    pub fn odometer() -> Self {
        SpaceSpec {
            alphabet: 2,
            geometry: Geometry::OneSidedOdometer,
        }
    }
}

/// A clopen subset in canonical (minimal window) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clopen {
    space: SpaceSpec,
    table: WordTable<()>,
}

pub(crate) fn word_to_string(w: &[u8]) -> String {
    w.iter()
        .map(|&s| char::from_digit(s as u32, 36).unwrap_or('?'))
        .collect()
}

pub(crate) fn odometer_add(word: &[u8], k: i64) -> Word {
    // x_1 is the least significant bit.
    let len = word.len();
    let mut w = word.to_vec();
    if len == 0 {
        return w;
    }
    if len < 63 {
        let modulus = 1i64 << len;
        let val: i64 = w.iter().enumerate().map(|(i, &b)| (b as i64) << i).sum();
        let nv = (val + k.rem_euclid(modulus)).rem_euclid(modulus);
        return (0..len).map(|i| ((nv >> i) & 1) as u8).collect();
    }
    let steps = k.unsigned_abs();
    for _ in 0..steps {
        if k > 0 {
            for b in w.iter_mut() {
                if *b == 0 {
                    *b = 1;
                    break;
                }
                *b = 0;
            }
        } else {
            for b in w.iter_mut() {
                if *b == 1 {
                    *b = 0;
                    break;
                }
                *b = 1;
            }
        }
    }
    w
}

impl Clopen {
    fn from_table(space: SpaceSpec, mut table: WordTable<()>) -> Clopen {
        table.trim(space.alphabet);
        Clopen { space, table }
    }

    pub fn full(space: SpaceSpec) -> Clopen {
        Clopen {
            space,
            table: WordTable::constant(()),
        }
    }

    pub fn empty(space: SpaceSpec) -> Clopen {
        Clopen {
            space,
            table: WordTable::empty(),
        }
    }

    fn validate_window(space: SpaceSpec, start: i64, word: &[u8]) -> Result<(), SpaceError> {
        if let Some(&s) = word.iter().find(|&&s| s >= space.alphabet) {
            return Err(SpaceError::InvalidSymbol(s));
        }
        if space.geometry == Geometry::OneSidedOdometer && start < 1 && !word.is_empty() {
            return Err(SpaceError::InvalidWindow(format!(
                "one-sided coordinates start at 1, got {start}"
            )));
        }
        Ok(())
    }

    /// The cylinder fixing `word` on coordinates `start..start+len`.
    pub fn cylinder(space: SpaceSpec, start: i64, word: &[u8]) -> Result<Clopen, SpaceError> {
        Self::validate_window(space, start, word)?;
        let mut map = BTreeMap::new();
        map.insert(word.to_vec(), ());
        Ok(Self::from_table(space, WordTable::new(start, word.len(), map)))
    }

    /// Union of cylinders over a common window.
    pub fn from_words(
        space: SpaceSpec,
        start: i64,
        len: usize,
        words: impl IntoIterator<Item = Word>,
    ) -> Result<Clopen, SpaceError> {
        let mut map = BTreeMap::new();
        for w in words {
            if w.len() != len {
                return Err(SpaceError::InvalidWindow(format!(
                    "word {} has length {} on a window of length {len}",
                    word_to_string(&w),
                    w.len()
                )));
            }
            Self::validate_window(space, start, &w)?;
            map.insert(w, ());
        }
        Ok(Self::from_table(space, WordTable::new(start, len, map)))
    }

    /// Parses `cyl(a:b,"word")`.
    pub fn parse(space: SpaceSpec, text: &str) -> Result<Clopen, SpaceError> {
        let bad = || SpaceError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s
            .strip_prefix("cyl(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (range, word) = body.split_once(',').ok_or_else(bad)?;
        let (a, b) = range.split_once(':').ok_or_else(bad)?;
        let a: i64 = a.parse().map_err(|_| bad())?;
        let b: i64 = b.parse().map_err(|_| bad())?;
        let word = word
            .strip_prefix('"')
            .and_then(|w| w.strip_suffix('"'))
            .ok_or_else(bad)?;
        let w: Option<Word> = word.chars().map(|c| c.to_digit(36).map(|d| d as u8)).collect();
        let w = w.ok_or_else(bad)?;
        if b - a + 1 != w.len() as i64 {
            return Err(SpaceError::InvalidWindow(format!(
                "{a}:{b} vs word of length {}",
                w.len()
            )));
        }
        Clopen::cylinder(space, a, &w)
    }

    pub fn space(&self) -> SpaceSpec {
        self.space
    }

    pub(crate) fn table(&self) -> &WordTable<()> {
        &self.table
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        self.table.window()
    }

    pub fn start(&self) -> i64 {
        self.table.start
    }

    pub fn window_len(&self) -> usize {
        self.table.len
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.table.map.keys()
    }

    pub fn word_count(&self) -> usize {
        self.table.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.map.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.table.len == 0 && !self.table.map.is_empty()
    }

    pub fn measure(&self) -> BigRational {
        let den = BigInt::from(self.space.alphabet).pow(self.table.len as u32);
        BigRational::new(BigInt::from(self.table.map.len()), den)
    }

    fn same_space(&self, other: &Clopen) -> Result<(), SpaceError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(SpaceError::SpaceMismatch)
        }
    }

    pub fn intersect(&self, other: &Clopen) -> Result<Clopen, SpaceError> {
        self.same_space(other)?;
        let t = self.table.merge(&other.table, self.space.alphabet, |_, _| Some(()));
        Ok(Self::from_table(self.space, t))
    }

    pub fn complement(&self) -> Clopen {
        let q = self.space.alphabet;
        let mut map = BTreeMap::new();
        for_each_word(self.table.len, q, |w| {
            if !self.table.map.contains_key(w) {
                map.insert(w.to_vec(), ());
            }
        });
        Self::from_table(self.space, WordTable::new(self.table.start, self.table.len, map))
    }

    fn hull(&self, other: &Clopen) -> (i64, usize) {
        match (self.window(), other.window()) {
            (None, None) => (0, 0),
            (Some((a, b)), None) | (None, Some((a, b))) => (a, (b - a + 1) as usize),
            (Some((a, b)), Some((c, d))) => {
                let s = a.min(c);
                (s, (b.max(d) - s + 1) as usize)
            }
        }
    }

    pub fn union(&self, other: &Clopen) -> Result<Clopen, SpaceError> {
        self.same_space(other)?;
        let (s, l) = self.hull(other);
        let q = self.space.alphabet;
        let mut t = self.table.extend_to(s, l, q);
        t.map.extend(other.table.extend_to(s, l, q).map);
        Ok(Self::from_table(self.space, t))
    }

    pub fn difference(&self, other: &Clopen) -> Result<Clopen, SpaceError> {
        self.same_space(other)?;
        self.intersect(&other.complement())
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &Clopen) -> Result<bool, SpaceError> {
        self.same_space(other)?;
        if other.is_empty() || self.is_full() {
            return Ok(true);
        }
        if other.is_full() {
            return Ok(false);
        }
        // Every word of `other` must land inside `self` on all refinements.
        for w in other.words() {
            let vals = self.table.values_on_cylinder(other.start(), w, self.space.alphabet);
            if vals.iter().any(|v| v.is_none()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_disjoint(&self, other: &Clopen) -> Result<bool, SpaceError> {
        self.same_space(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(true);
        }
        for w in other.words() {
            let vals = self.table.values_on_cylinder(other.start(), w, self.space.alphabet);
            if vals.iter().any(|v| v.is_some()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// T^k(U) for the two-sided shift.
    pub fn shift_image(&self, k: i64) -> Result<Clopen, SpaceError> {
        if self.space.geometry != Geometry::TwoSidedShift {
            return Err(SpaceError::GeometryMismatch);
        }
        let mut t = self.table.clone();
        if t.len > 0 {
            t.start -= k;
        }
        Ok(Clopen {
            space: self.space,
            table: t,
        })
    }

    /// One step of the odometer, forward (T) or backward (T^{-1}).
    pub fn odometer_image(&self, forward: bool) -> Result<Clopen, SpaceError> {
        self.odometer_power(if forward { 1 } else { -1 })
    }

    fn odometer_power(&self, k: i64) -> Result<Clopen, SpaceError> {
        if self.space.geometry != Geometry::OneSidedOdometer {
            return Err(SpaceError::GeometryMismatch);
        }
        if self.table.len == 0 {
            return Ok(self.clone());
        }
        let end = self.table.end();
        let t = self.table.extend_to(1, end as usize, 2);
        let map = t.map.keys().map(|w| (odometer_add(w, k), ())).collect();
        Ok(Self::from_table(self.space, WordTable::new(1, end as usize, map)))
    }

    /// T^k(U) in either geometry.
    pub fn image(&self, k: i64) -> Clopen {
        match self.space.geometry {
            Geometry::TwoSidedShift => self.shift_image(k).unwrap(),
            Geometry::OneSidedOdometer => self.odometer_power(k).unwrap(),
        }
    }

    /// Whether T^j(y) ∈ U.
    pub fn eval_at(&self, y: &PeriodicPoint, j: i64) -> Result<bool, SpaceError> {
        if self.space.geometry != Geometry::TwoSidedShift {
            return Err(SpaceError::GeometryMismatch);
        }
        Ok(self.table.lookup(|i| y.coordinate(i + j)).is_some())
    }
}

impl fmt::Debug for Clopen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Clopen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        if self.is_full() {
            return f.write_str("X");
        }
        let words: Vec<String> = self.words().map(|w| word_to_string(w)).collect();
        write!(f, "[{}:{}]{{{}}}", self.start(), self.table.end(), words.join(","))
    }
}

/// The orbit point x with x_i = w[i mod l].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicPoint {
    word: Word,
}

impl PeriodicPoint {
    pub fn new(word: Word) -> Result<PeriodicPoint, SpaceError> {
        let l = word.len();
        if l == 0 {
            return Err(SpaceError::NotPrimitive(String::new()));
        }
        for d in 1..l {
            if l % d == 0 && (0..l).all(|i| word[i] == word[i % d]) {
                return Err(SpaceError::NotPrimitive(word_to_string(&word)));
            }
        }
        Ok(PeriodicPoint { word })
    }

    pub fn parse(text: &str) -> Result<PeriodicPoint, SpaceError> {
        let w: Option<Word> = text.trim().chars().map(|c| c.to_digit(36).map(|d| d as u8)).collect();
        PeriodicPoint::new(w.ok_or_else(|| SpaceError::Parse(text.to_string()))?)
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn coordinate(&self, i: i64) -> u8 {
        self.word[i.rem_euclid(self.word.len() as i64) as usize]
    }
}
