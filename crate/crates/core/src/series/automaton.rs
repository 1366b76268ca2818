use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::approx::ComponentSet;
use crate::field::{Field, FieldElement, FieldExt};
use crate::matrix::ExactMatrix;

use super::pure::SpecialTerm;
use super::{SeriesError, SpecialSeries};

/// A K-weighted automaton (λ, μ, γ) over letters `u32`: coefficient of w = λ μ(w) γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAutomaton {
    field: Field,
    initial: ExactMatrix,
    transitions: BTreeMap<u32, ExactMatrix>,
    terminal: ExactMatrix,
}

fn kron(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ExactMatrix::from_fn(a.rows() * br, a.cols() * bc, a.field(), |i, j| {
        a.get(i / br, j / bc) * b.get(i % br, j % bc)
    })
}

/// [[a, b], [c, d]] from blocks; `None` blocks are zero.
fn blocks2(
    field: &Field,
    (r0, r1): (usize, usize),
    (c0, c1): (usize, usize),
    parts: [Option<&ExactMatrix>; 4],
) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(r0 + r1, c0 + c1, field);
    let offs = [(0, 0), (0, c0), (r0, 0), (r0, c0)];
    for (p, (ro, co)) in parts.iter().zip(offs) {
        if let Some(p) = p {
            for i in 0..p.rows() {
                for j in 0..p.cols() {
                    m.set(ro + i, co + j, p.get(i, j).clone());
                }
            }
        }
    }
    m
}

impl WeightedAutomaton {
    /// `initial` is 1×d, `terminal` d×1, each transition d×d.
    pub fn new(
        field: &Field,
        initial: ExactMatrix,
        transitions: BTreeMap<u32, ExactMatrix>,
        terminal: ExactMatrix,
    ) -> Result<Self, SeriesError> {
        let d = initial.cols();
        if initial.rows() != 1 || terminal.cols() != 1 || terminal.rows() != d {
            return Err(SeriesError::Shape("initial must be 1×d and terminal d×1".into()));
        }
        if transitions.values().any(|m| m.rows() != d || m.cols() != d) {
            return Err(SeriesError::Shape(format!("transitions must be {d}×{d}")));
        }
        Ok(WeightedAutomaton {
            field: field.clone(),
            initial,
            transitions,
            terminal,
        })
    }

    /// The constant series c.
    pub fn scalar(field: &Field, c: FieldElement) -> Self {
        WeightedAutomaton {
            field: field.clone(),
            initial: ExactMatrix::from_fn(1, 1, field, |_, _| c.clone()),
            transitions: BTreeMap::new(),
            terminal: ExactMatrix::identity(1, field),
        }
    }

    /// The series x_a.
    pub fn letter(field: &Field, a: u32) -> Self {
        let mut mu = ExactMatrix::zeros(2, 2, field);
        mu.set(0, 1, field.one());
        let mut initial = ExactMatrix::zeros(1, 2, field);
        initial.set(0, 0, field.one());
        let mut terminal = ExactMatrix::zeros(2, 1, field);
        terminal.set(1, 0, field.one());
        WeightedAutomaton {
            field: field.clone(),
            initial,
            transitions: BTreeMap::from([(a, mu)]),
            terminal,
        }
    }

    pub fn dim(&self) -> usize {
        self.initial.cols()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn letters(&self) -> impl Iterator<Item = u32> + '_ {
        self.transitions.keys().copied()
    }

    fn mu(&self, a: u32) -> ExactMatrix {
        self.transitions
            .get(&a)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.dim(), self.dim(), &self.field))
    }

    pub(crate) fn step(&self, v: &ExactMatrix, a: u32) -> Option<ExactMatrix> {
        self.transitions.get(&a).map(|m| v.mul(m))
    }

    pub(crate) fn initial(&self) -> &ExactMatrix {
        &self.initial
    }

    pub(crate) fn read_out(&self, v: &ExactMatrix) -> FieldElement {
        v.mul(&self.terminal).get(0, 0).clone()
    }

    pub fn coeff(&self, w: &[u32]) -> FieldElement {
        let mut v = self.initial.clone();
        for &a in w {
            match self.step(&v, a) {
                Some(nv) => v = nv,
                None => return self.field.zero(),
            }
        }
        self.read_out(&v)
    }

    fn alphabet_union(&self, other: &Self) -> Vec<u32> {
        let mut ls: Vec<u32> = self.letters().chain(other.letters()).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    pub fn add(&self, other: &Self) -> Self {
        let (d, e) = (self.dim(), other.dim());
        let k = &self.field;
        let transitions = self
            .alphabet_union(other)
            .into_iter()
            .map(|a| {
                let (x, y) = (self.mu(a), other.mu(a));
                (a, blocks2(k, (d, e), (d, e), [Some(&x), None, None, Some(&y)]))
            })
            .collect();
        WeightedAutomaton {
            field: k.clone(),
            initial: blocks2(
                k,
                (1, 0),
                (d, e),
                [Some(&self.initial), Some(&other.initial), None, None],
            ),
            transitions,
            terminal: blocks2(
                k,
                (d, e),
                (1, 0),
                [Some(&self.terminal), None, Some(&other.terminal), None],
            ),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = self.clone();
        out.initial = out.initial.scale(c);
        out
    }

    /// λ = (λ_r, λ_r γ_r λ_s), μ(a) = [[μ_r(a), μ_r(a) γ_r λ_s], [0, μ_s(a)]], γ = (0, γ_s).
    pub fn cauchy(&self, other: &Self) -> Self {
        let (d, e) = (self.dim(), other.dim());
        let k = &self.field;
        let jump = self.terminal.mul(&other.initial);
        let transitions = self
            .alphabet_union(other)
            .into_iter()
            .map(|a| {
                let (x, y) = (self.mu(a), other.mu(a));
                let xj = x.mul(&jump);
                (a, blocks2(k, (d, e), (d, e), [Some(&x), Some(&xj), None, Some(&y)]))
            })
            .collect();
        let start = self.initial.mul(&jump);
        WeightedAutomaton {
            field: k.clone(),
            initial: blocks2(k, (1, 0), (d, e), [Some(&self.initial), Some(&start), None, None]),
            transitions,
            terminal: blocks2(k, (d, e), (1, 0), [None, None, Some(&other.terminal), None]),
        }
    }

    pub fn hadamard(&self, other: &Self) -> Self {
        let transitions = self
            .transitions
            .iter()
            .filter_map(|(a, x)| other.transitions.get(a).map(|y| (*a, kron(x, y))))
            .collect();
        WeightedAutomaton {
            field: self.field.clone(),
            initial: kron(&self.initial, &other.initial),
            transitions,
            terminal: kron(&self.terminal, &other.terminal),
        }
    }

    /// (1 − r)^{-1} for proper r. State (β, v): v' = (βλ + v)μ(a), β' = v'γ.
    pub fn star(&self) -> Result<Self, SeriesError> {
        if !self.coeff(&[]).is_zero() {
            return Err(SeriesError::NotProper);
        }
        let d = self.dim();
        let k = &self.field;
        let transitions = self
            .transitions
            .iter()
            .map(|(a, m)| {
                let lm = self.initial.mul(m);
                let lmg = lm.mul(&self.terminal);
                let mg = m.mul(&self.terminal);
                (
                    *a,
                    blocks2(k, (1, d), (1, d), [Some(&lmg), Some(&lm), Some(&mg), Some(m)]),
                )
            })
            .collect();
        let mut initial = ExactMatrix::zeros(1, d + 1, k);
        initial.set(0, 0, k.one());
        let mut terminal = ExactMatrix::zeros(d + 1, 1, k);
        terminal.set(0, 0, k.one());
        Ok(WeightedAutomaton {
            field: k.clone(),
            initial,
            transitions,
            terminal,
        })
    }
}

/// Σ_w coeff(w) · (product of the pure terms of w) over words of degree ≤ `max_degree`, where
/// the empty word maps to the degree-0 special term.
pub fn automaton_to_special(
    r: &WeightedAutomaton,
    pure_map: &BTreeMap<u32, SpecialTerm>,
    cs: &Arc<ComponentSet>,
    max_degree: usize,
) -> Result<SpecialSeries, SeriesError> {
    let scheme = cs.scheme();
    let (n, _) = match scheme.provenance() {
        crate::approx::Provenance::LamplighterLevel { n: 0, .. } => return Err(SeriesError::LevelZeroUnsupported),
        crate::approx::Provenance::LamplighterLevel { n, convention } => (n, convention),
        _ => return Err(SeriesError::NotSpecial("pure terms need a lamplighter scheme".into())),
    };
    let top = cs.cutoff() - 1;
    if max_degree > top {
        return Err(SeriesError::DegreeOverflow {
            degree: max_degree,
            max: top,
        });
    }
    let mut seen = std::collections::HashSet::new();
    for (a, t) in pure_map {
        if t.level() != n || !t.is_pure() {
            return Err(SeriesError::NotSpecial(format!(
                "letter {a} is not mapped to a pure term"
            )));
        }
        if !seen.insert(t.word().to_vec()) {
            return Err(SeriesError::NotSpecial(format!("letter {a} repeats a pure term")));
        }
    }
    if let Some(a) = r.letters().find(|a| !pure_map.contains_key(a)) {
        return Err(SeriesError::NotSpecial(format!("letter {a} has no pure term")));
    }
    let m = 2 * n + 1;
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut unit = None;
    for (idx, w) in cs.components().iter().enumerate() {
        if w.length == 1 {
            unit = Some(idx);
            continue;
        }
        let word = w.clopen.words().next().expect("lamplighter components are cylinders");
        index.insert(word[1..w.length + m - 1].to_vec(), idx);
    }
    let mut out = SpecialSeries::zero(cs.clone(), r.field());
    let v0 = r.initial().clone();
    if let Some(u) = unit {
        let c = r.read_out(&v0);
        out.set_coeff(u, c);
    }
    let letters: Vec<(u32, &SpecialTerm)> = pure_map.iter().map(|(a, t)| (*a, t)).collect();
    let mut stack: Vec<(ExactMatrix, SpecialTerm)> = Vec::new();
    for &(a, t) in &letters {
        if t.degree() <= max_degree {
            if let Some(v) = r.step(&v0, a) {
                stack.push((v, t.clone()));
            }
        }
    }
    while let Some((v, term)) = stack.pop() {
        if v.is_zero() {
            continue;
        }
        let c = r.read_out(&v);
        if !c.is_zero() {
            let idx = *index.get(term.word()).ok_or(SeriesError::DegreeOverflow {
                degree: term.degree(),
                max: top,
            })?;
            let cur = out.coeff(idx).clone();
            out.set_coeff(idx, &cur + &c);
        }
        for &(a, t) in &letters {
            if term.degree() + t.degree() <= max_degree {
                if let Some(nv) = r.step(&v, a) {
                    // Reading a after w appends a factor on the right of the product.
                    stack.push((nv, term.mul(t)));
                }
            }
        }
    }
    Ok(out)
}
