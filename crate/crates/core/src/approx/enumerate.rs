use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::space::{Clopen, SpaceSpec};

use super::{macci, ApproxError, PartitionScheme, Provenance};

/// Default ceiling on the number of stored components.
pub const DEFAULT_COMPONENT_BUDGET: usize = 2_000_000;

/// W = E ∩ T^{-1}Z_1 ∩ ⋯ ∩ T^{-k+1}Z_{k-1} ∩ T^{-k}E, with its label word and measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WComponent {
    pub label: Vec<u32>,
    pub length: usize,
    pub clopen: Clopen,
    pub measure: BigRational,
}

impl WComponent {
    /// The single cylinder describing W, when it is one.
    pub(crate) fn as_cylinder(&self) -> Option<(i64, &[u8])> {
        (self.clopen.word_count() == 1).then(|| (self.clopen.start(), self.clopen.words().next().unwrap().as_slice()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSet {
    scheme: Arc<PartitionScheme>,
    cutoff: usize,
    components: Vec<WComponent>,
    covered_mass: BigRational,
}

impl ComponentSet {
    fn build(scheme: Arc<PartitionScheme>, cutoff: usize, mut components: Vec<WComponent>) -> Self {
        components.sort_by(|a, b| (a.length, &a.label).cmp(&(b.length, &b.label)));
        let covered_mass = components.iter().fold(BigRational::zero(), |acc, w| {
            acc + &w.measure * BigRational::from_integer(w.length.into())
        });
        ComponentSet {
            scheme,
            cutoff,
            components,
            covered_mass,
        }
    }

    pub fn scheme(&self) -> &Arc<PartitionScheme> {
        &self.scheme
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn components(&self) -> &[WComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Σ |W| μ(W) over the stored components.
    pub fn covered_mass(&self) -> &BigRational {
        &self.covered_mass
    }

    pub fn tail_mass(&self) -> BigRational {
        BigRational::one() - &self.covered_mass
    }

    /// Number of components of each length, indexed by length.
    pub fn length_census(&self) -> Vec<usize> {
        let mut out = vec![0; self.cutoff + 1];
        for w in &self.components {
            out[w.length] += 1;
        }
        out
    }

    /// Components of at most `cutoff` symbols, keeping the order.
    pub fn truncate(&self, cutoff: usize) -> ComponentSet {
        let comps = self.components.iter().filter(|w| w.length <= cutoff).cloned().collect();
        ComponentSet::build(self.scheme.clone(), cutoff.min(self.cutoff), comps)
    }

    /// JSON-ready rows: (word, length, measure).
    pub fn summary(&self) -> Vec<(String, usize, BigRational)> {
        self.components
            .iter()
            .map(|w| {
                let word: Vec<String> = w.label.iter().map(|z| z.to_string()).collect();
                (word.join("."), w.length, w.measure.clone())
            })
            .collect()
    }
}

pub fn enumerate_components(scheme: &Arc<PartitionScheme>, cutoff: usize) -> Result<ComponentSet, ApproxError> {
    enumerate_components_bounded(scheme, cutoff, DEFAULT_COMPONENT_BUDGET)
}

/// Fast paths for the lamplighter and odometer families, depth-first search otherwise.
pub fn enumerate_components_bounded(
    scheme: &Arc<PartitionScheme>,
    cutoff: usize,
    budget: usize,
) -> Result<ComponentSet, ApproxError> {
    if cutoff == 0 {
        return Err(ApproxError::InvalidCutoff);
    }
    match scheme.provenance() {
        Provenance::LamplighterLevel { n, convention } => {
            let estimate = lamplighter_count(n, cutoff);
            if estimate > BigUint::from(budget) {
                return Err(ApproxError::CutoffTooLargeForMemory {
                    estimate: estimate.to_string(),
                    budget,
                });
            }
            let comps = lamplighter_components(scheme, n, convention.symbol(), cutoff);
            Ok(ComponentSet::build(scheme.clone(), cutoff, comps))
        }
        Provenance::OdometerLevel(n) => {
            let mut comps = Vec::new();
            if n < 63 && (1usize << n) <= cutoff {
                comps.push(odometer_component(scheme, n));
            }
            Ok(ComponentSet::build(scheme.clone(), cutoff, comps))
        }
        Provenance::Custom => enumerate_generic(scheme, cutoff, budget),
    }
}

fn lamplighter_count(n: usize, cutoff: usize) -> BigUint {
    let m = 2 * n + 1;
    let mut total = BigUint::one();
    for k in 1..=cutoff.saturating_sub(m) {
        total += macci(m, k);
    }
    total
}

fn part_index(scheme: &PartitionScheme) -> HashMap<Vec<u8>, u32> {
    scheme
        .parts()
        .iter()
        .enumerate()
        .map(|(i, z)| (z.words().next().unwrap().clone(), i as u32))
        .collect()
}

fn measure_of_len(len: usize) -> BigRational {
    BigRational::new(1.into(), num_bigint::BigInt::one() << len)
}

/// Length 1: the word b^{m+1}. Length m+1: b^m ā b^m. Length m+j, j ≥ 2: b^m ā w ā b^m with
/// w of length j−2 containing no run of m copies of b.
fn lamplighter_components(scheme: &PartitionScheme, n: usize, b: u8, cutoff: usize) -> Vec<WComponent> {
    let m = 2 * n + 1;
    let start = -(n as i64);
    let parts = part_index(scheme);
    let space = SpaceSpec::binary_shift();
    let mut out = Vec::new();
    let w0 = vec![b; m + 1];
    out.push(WComponent {
        label: vec![],
        length: 1,
        clopen: Clopen::cylinder(space, start, &w0).unwrap(),
        measure: measure_of_len(m + 1),
    });
    let a = 1 - b;
    for j in 1..=cutoff.saturating_sub(m) {
        let mut cores: Vec<Vec<u8>> = Vec::new();
        if j == 1 {
            cores.push(Vec::new());
        } else {
            free_words(j - 2, b, m - 1, &mut Vec::new(), 0, &mut cores);
        }
        for core in cores {
            let mut word = vec![b; m];
            word.push(a);
            if j >= 2 {
                word.extend_from_slice(&core);
                word.push(a);
            }
            word.extend(std::iter::repeat(b).take(m));
            let length = m + j;
            let label = (1..length).map(|i| parts[&word[i..i + m]]).collect();
            out.push(WComponent {
                label,
                length,
                measure: measure_of_len(word.len()),
                clopen: Clopen::cylinder(space, start, &word).unwrap(),
            });
        }
    }
    out
}

/// All words of length `len` whose runs of `b` are at most `max_run` long.
fn free_words(len: usize, b: u8, max_run: usize, cur: &mut Vec<u8>, run: usize, out: &mut Vec<Vec<u8>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for s in [0u8, 1] {
        let r = if s == b { run + 1 } else { 0 };
        if r > max_run {
            continue;
        }
        cur.push(s);
        free_words(len, b, max_run, cur, r, out);
        cur.pop();
    }
}

fn odometer_component(scheme: &PartitionScheme, n: usize) -> WComponent {
    let parts = part_index(scheme);
    let length = 1usize << n;
    let label = (1..length)
        .map(|l| {
            let w: Vec<u8> = (0..n).map(|i| ((l >> i) & 1) as u8).collect();
            parts[&w]
        })
        .collect();
    WComponent {
        label,
        length,
        clopen: scheme.e().clone(),
        measure: scheme.mu_e(),
    }
}

/// Depth-first search over label words, pruning empty partial intersections.
pub fn enumerate_generic(
    scheme: &Arc<PartitionScheme>,
    cutoff: usize,
    budget: usize,
) -> Result<ComponentSet, ApproxError> {
    if cutoff == 0 {
        return Err(ApproxError::InvalidCutoff);
    }
    let e_pre: Vec<Clopen> = (0..=cutoff as i64).map(|j| scheme.e().image(-j)).collect();
    let parts_pre: Vec<Vec<Clopen>> = (0..cutoff as i64)
        .map(|j| scheme.parts().iter().map(|z| z.image(-j)).collect())
        .collect();
    let mut out = Vec::new();
    let mut label = Vec::new();
    dfs(
        &e_pre,
        &parts_pre,
        cutoff,
        scheme.e().clone(),
        1,
        &mut label,
        &mut out,
        budget,
    )?;
    Ok(ComponentSet::build(scheme.clone(), cutoff, out))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    e_pre: &[Clopen],
    parts_pre: &[Vec<Clopen>],
    cutoff: usize,
    prefix: Clopen,
    j: usize,
    label: &mut Vec<u32>,
    out: &mut Vec<WComponent>,
    budget: usize,
) -> Result<(), ApproxError> {
    let closed = prefix.intersect(&e_pre[j])?;
    let mut rest = prefix;
    if !closed.is_empty() {
        if out.len() >= budget {
            return Err(ApproxError::CutoffTooLargeForMemory {
                estimate: format!(">{budget}"),
                budget,
            });
        }
        rest = rest.difference(&closed)?;
        out.push(WComponent {
            label: label.clone(),
            length: j,
            measure: closed.measure(),
            clopen: closed,
        });
    }
    if j == cutoff || rest.is_empty() {
        return Ok(());
    }
    for (idx, z) in parts_pre[j].iter().enumerate() {
        let next = rest.intersect(z)?;
        if next.is_empty() {
            continue;
        }
        label.push(idx as u32);
        dfs(e_pre, parts_pre, cutoff, next, j + 1, label, out, budget)?;
        label.pop();
    }
    Ok(())
}

/// Σ_{|W| ≤ L} |W| μ(W) subtracted from 1, for the lamplighter scheme with E the block of 2n+1 ones.
pub fn tail_mass_closed_form(n: usize, cutoff: usize) -> BigRational {
    let m = 2 * n + 1;
    let mut covered = if cutoff >= 1 {
        measure_of_len(m + 1)
    } else {
        BigRational::zero()
    };
    for k in 1..=cutoff.saturating_sub(m) {
        let count = num_bigint::BigInt::from(macci(m, k)) * num_bigint::BigInt::from(m + k);
        covered += BigRational::new(count, num_bigint::BigInt::one() << (2 * m + k));
    }
    BigRational::one() - covered
}
