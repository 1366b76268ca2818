//! Special terms χ_S t^i at a lamplighter level n ≥ 1. For E the block of 2n+1 symbols b,
//! S is the cylinder on [−n−i+1, n] with word b^{2n} ā b^{2n} (i = 2n+1) or
//! b^{2n} ā B ā b^{2n} (i ≥ 2n+2) where B has no run of b longer than 2n.

use crate::algebra::CrossedElement;
use crate::approx::{PartitionScheme, Provenance};
use crate::field::Field;
use crate::space::{Clopen, SpaceSpec};

use super::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecialTerm {
    n: usize,
    b: u8,
    word: Vec<u8>,
}

fn max_run(w: &[u8], b: u8) -> usize {
    let (mut best, mut cur) = (0, 0);
    for &x in w {
        cur = if x == b { cur + 1 } else { 0 };
        best = best.max(cur);
    }
    best
}

fn lamplighter_level(scheme: &PartitionScheme) -> Result<(usize, u8), SeriesError> {
    match scheme.provenance() {
        Provenance::LamplighterLevel { n: 0, .. } => Err(SeriesError::LevelZeroUnsupported),
        Provenance::LamplighterLevel { n, convention } => Ok((n, convention.symbol())),
        _ => Err(SeriesError::NotSpecial("pure terms need a lamplighter scheme".into())),
    }
}

impl SpecialTerm {
    /// Validates the special form of `word` at level n with block symbol b.
    pub fn from_word(n: usize, b: u8, word: Vec<u8>) -> Result<Self, SeriesError> {
        if n == 0 {
            return Err(SeriesError::LevelZeroUnsupported);
        }
        let a = 1 - b;
        let k = 2 * n;
        let bad = |why: &str| Err(SeriesError::NotSpecial(why.to_string()));
        if word.len() < 2 * k + 1 || word.iter().any(|&x| x > 1) {
            return bad("word too short");
        }
        let len = word.len();
        if word[..k].iter().any(|&x| x != b) || word[len - k..].iter().any(|&x| x != b) {
            return bad("word must start and end with 2n block symbols");
        }
        if word[k] != a || word[len - k - 1] != a {
            return bad("block runs must be followed and preceded by the other symbol");
        }
        if len > 2 * k + 1 && max_run(&word[k + 1..len - k - 1], b) > k {
            return bad("the middle contains a full block");
        }
        Ok(SpecialTerm { n, b, word })
    }

    /// Reads the special term of a special set S at the level of `scheme`.
    pub fn from_clopen(s: &Clopen, scheme: &PartitionScheme) -> Result<Self, SeriesError> {
        let (n, b) = lamplighter_level(scheme)?;
        if s.word_count() != 1 {
            return Err(SeriesError::NotSpecial("not a single cylinder".into()));
        }
        let word = s.words().next().unwrap().clone();
        let t = Self::from_word(n, b, word)?;
        if s.start() != t.start() {
            return Err(SeriesError::NotSpecial(format!("window must end at {n}")));
        }
        Ok(t)
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn degree(&self) -> usize {
        self.word.len() - 2 * self.n
    }

    pub fn start(&self) -> i64 {
        -(self.n as i64) - self.degree() as i64 + 1
    }

    pub fn clopen(&self) -> Clopen {
        Clopen::cylinder(SpaceSpec::binary_shift(), self.start(), &self.word).unwrap()
    }

    pub fn to_crossed(&self, field: &Field) -> CrossedElement {
        CrossedElement::chi_t(&self.clopen(), field, self.degree() as i64)
    }

    /// No run of 2n block symbols between the outer zeros.
    pub fn is_pure(&self) -> bool {
        let k = 2 * self.n;
        let len = self.word.len();
        len == 2 * k + 1 || max_run(&self.word[k + 1..len - k - 1], self.b) < k
    }

    /// (χ_S t^i)(χ_{S'} t^j) = χ_{S ∩ T^i(S')} t^{i+j}: the word of S' followed by that of S minus its first 2n symbols.
    pub fn mul(&self, other: &SpecialTerm) -> SpecialTerm {
        assert_eq!((self.n, self.b), (other.n, other.b));
        let mut word = other.word.clone();
        word.extend_from_slice(&self.word[2 * self.n..]);
        SpecialTerm {
            n: self.n,
            b: self.b,
            word,
        }
    }
}

/// The unique factorization into pure terms, first factor first.
pub fn factor_pure(s: &Clopen, scheme: &PartitionScheme) -> Result<Vec<SpecialTerm>, SeriesError> {
    let t = SpecialTerm::from_clopen(s, scheme)?;
    Ok(factor_term(&t))
}

pub(crate) fn factor_term(t: &SpecialTerm) -> Vec<SpecialTerm> {
    let k = 2 * t.n;
    let w = &t.word;
    let len = w.len();
    if len == 2 * k + 1 {
        return vec![t.clone()];
    }
    // Seams: maximal runs of exactly 2n block symbols strictly inside the outer zeros.
    let mut cuts = Vec::new();
    let mut p = k + 1;
    while p < len - k - 1 {
        if w[p] != t.b {
            p += 1;
            continue;
        }
        let q = (p..len - k - 1).find(|&j| w[j] != t.b).unwrap_or(len - k - 1);
        if q - p == k {
            cuts.push(p);
        }
        p = q;
    }
    let mut pieces = Vec::with_capacity(cuts.len() + 1);
    let mut from = 0;
    for &c in &cuts {
        pieces.push(w[from..c + k].to_vec());
        from = c;
    }
    pieces.push(w[from..].to_vec());
    pieces
        .into_iter()
        .rev()
        .map(|word| SpecialTerm { n: t.n, b: t.b, word })
        .collect()
}

/// The pure terms of degree at most `max_degree` at level n ≥ 1, by degree then word.
pub fn pure_terms(scheme: &PartitionScheme, max_degree: usize) -> Result<Vec<SpecialTerm>, SeriesError> {
    let (n, b) = lamplighter_level(scheme)?;
    let k = 2 * n;
    let a = 1 - b;
    let mut out = Vec::new();
    if max_degree < k + 1 {
        return Ok(out);
    }
    let mut seam = vec![b; k];
    seam.push(a);
    seam.extend(std::iter::repeat(b).take(k));
    out.push(SpecialTerm { n, b, word: seam });
    for i in k + 2..=max_degree {
        let mut middles = Vec::new();
        middle_words(i - k - 2, b, k - 1, &mut Vec::new(), 0, &mut middles);
        for mid in middles {
            let mut word = vec![b; k];
            word.push(a);
            word.extend(mid);
            word.push(a);
            word.extend(std::iter::repeat(b).take(k));
            out.push(SpecialTerm { n, b, word });
        }
    }
    Ok(out)
}

fn middle_words(len: usize, b: u8, max: usize, cur: &mut Vec<u8>, run: usize, out: &mut Vec<Vec<u8>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for x in [0u8, 1] {
        let r = if x == b { run + 1 } else { 0 };
        if r > max {
            continue;
        }
        cur.push(x);
        middle_words(len, b, max, cur, r, out);
        cur.pop();
    }
}
