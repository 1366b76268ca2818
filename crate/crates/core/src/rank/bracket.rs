use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{fourier, CrossedMatrix, GroupAlgebraElement};
use crate::approx::{
    approximant_matrix, block_for, enumerate_components_bounded, ApproxError, BlockConvention, ComponentSet,
    PartitionScheme, DEFAULT_COMPONENT_BUDGET,
};
use crate::space::Geometry;

use super::RankError;

/// Exact enclosure [lower, upper] of rk_𝒜 for a k×k matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBracket {
    pub lower: BigRational,
    pub upper: BigRational,
    pub size: usize,
    pub level: Option<usize>,
    pub cutoff: usize,
    pub covered_mass: BigRational,
    pub substitution_error: BigRational,
    pub component_count: usize,
    /// Set when either end was pulled back into [0, k].
    pub clamped: bool,
}

impl RankBracket {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn intersects(&self, other: &RankBracket) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    pub fn tail_mass(&self) -> BigRational {
        BigRational::one() - &self.covered_mass
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EngineConfig {
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub component_budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            threads: 0,
            component_budget: DEFAULT_COMPONENT_BUDGET,
        }
    }
}

impl EngineConfig {
    pub fn with_threads(threads: usize) -> Self {
        EngineConfig {
            threads,
            ..Self::default()
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool, RankError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| RankError::Config(e.to_string()))
    }
}

/// Ranks of the blocks of an already-approximated matrix, in component order.
fn component_ranks(a: &CrossedMatrix, cs: &ComponentSet, cfg: &EngineConfig) -> Result<Vec<usize>, RankError> {
    let pool = cfg.pool()?;
    let ranks: Result<Vec<usize>, ApproxError> = pool.install(|| {
        cs.components()
            .par_iter()
            .enumerate()
            .map(|(i, w)| block_for(a, w, i).map(|b| b.rank()))
            .collect()
    });
    Ok(ranks?)
}

/// Bracket from the first `count` components, summed in component order.
fn assemble(
    cs: &ComponentSet,
    ranks: &[usize],
    count: usize,
    cutoff: usize,
    k: usize,
    subst: &BigRational,
) -> RankBracket {
    let mut sum = BigRational::zero();
    let mut covered = BigRational::zero();
    for (w, &r) in cs.components()[..count].iter().zip(ranks) {
        sum += &w.measure * BigRational::from_integer(r.into());
        covered += &w.measure * BigRational::from_integer(w.length.into());
    }
    let kq = BigRational::from_integer(k.into());
    let tail = BigRational::one() - &covered;
    let mut lower = &sum - subst;
    let mut upper = &sum + &kq * &tail + subst;
    let mut clamped = false;
    if lower < BigRational::zero() {
        lower = BigRational::zero();
        clamped = true;
    }
    if upper > kq {
        upper = kq;
        clamped = true;
    }
    RankBracket {
        lower,
        upper,
        size: k,
        level: cs.scheme().level(),
        cutoff,
        covered_mass: covered,
        substitution_error: subst.clone(),
        component_count: count,
        clamped,
    }
}

pub fn sylvester_bracket(
    a: &CrossedMatrix,
    scheme: &Arc<PartitionScheme>,
    cutoff: usize,
    cfg: &EngineConfig,
) -> Result<RankBracket, RankError> {
    let cs = enumerate_components_bounded(scheme, cutoff, cfg.component_budget)?;
    sylvester_bracket_on(a, &cs, cfg)
}

/// As [`sylvester_bracket`] over an already enumerated component set.
pub fn sylvester_bracket_on(
    a: &CrossedMatrix,
    cs: &ComponentSet,
    cfg: &EngineConfig,
) -> Result<RankBracket, RankError> {
    let (ap, subst) = approximant_matrix(a, cs.scheme())?;
    let ranks = component_ranks(&ap, cs, cfg)?;
    Ok(assemble(cs, &ranks, cs.len(), cs.cutoff(), a.size(), &subst))
}

/// Brackets for every cutoff 1..=max_cutoff, sharing one rank computation.
pub fn brackets_by_cutoff(
    a: &CrossedMatrix,
    scheme: &Arc<PartitionScheme>,
    max_cutoff: usize,
    cfg: &EngineConfig,
) -> Result<Vec<RankBracket>, RankError> {
    let cs = enumerate_components_bounded(scheme, max_cutoff, cfg.component_budget)?;
    let (ap, subst) = approximant_matrix(a, scheme)?;
    let ranks = component_ranks(&ap, &cs, cfg)?;
    Ok((1..=max_cutoff)
        .map(|l| {
            let count = cs.components().partition_point(|w| w.length <= l);
            assemble(&cs, &ranks, count, l, a.size(), &subst)
        })
        .collect())
}

/// [k − upper, k − lower], the matching bracket for the kernel dimension.
pub fn kernel_bracket(b: &RankBracket) -> RankBracket {
    let k = BigRational::from_integer(b.size.into());
    RankBracket {
        lower: &k - &b.upper,
        upper: &k - &b.lower,
        ..b.clone()
    }
}

/// Kernel dimension of a square matrix over the lamplighter group algebra at level n.
pub fn betti_bracket(
    rows: &[Vec<GroupAlgebraElement>],
    level: usize,
    cutoff: usize,
    cfg: &EngineConfig,
) -> Result<RankBracket, RankError> {
    let k = rows.len();
    let mut entries = Vec::with_capacity(k * k);
    for row in rows {
        if row.len() != k {
            return Err(RankError::Config("matrix must be square".into()));
        }
        for x in row {
            entries.push(fourier(x)?);
        }
    }
    let a = CrossedMatrix::new(k, entries)?;
    let scheme = Arc::new(PartitionScheme::lamplighter(level));
    Ok(kernel_bracket(&sylvester_bracket(&a, &scheme, cutoff, cfg)?))
}

#[derive(Debug, Clone)]
pub struct ConvergeOptions {
    pub target_width: BigRational,
    pub start_level: usize,
    pub max_level: usize,
    pub max_cutoff: usize,
    pub convention: BlockConvention,
}

impl ConvergeOptions {
    pub fn new(target_width: BigRational, max_level: usize, max_cutoff: usize) -> Self {
        ConvergeOptions {
            target_width,
            start_level: 0,
            max_level,
            max_cutoff,
            convention: BlockConvention::Ones,
        }
    }
}

/// Largest cutoff ≤ `max` whose enumeration fits the budget.
fn affordable(scheme: &Arc<PartitionScheme>, max: usize, budget: usize) -> Result<Option<ComponentSet>, RankError> {
    match enumerate_components_bounded(scheme, max, budget) {
        Ok(cs) => return Ok(Some(cs)),
        Err(ApproxError::CutoffTooLargeForMemory { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    let (mut lo, mut hi) = (0usize, max);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        match enumerate_components_bounded(scheme, mid, budget) {
            Ok(_) => lo = mid,
            Err(ApproxError::CutoffTooLargeForMemory { .. }) => hi = mid,
            Err(e) => return Err(e.into()),
        }
    }
    if lo == 0 {
        return Ok(None);
    }
    Ok(Some(enumerate_components_bounded(scheme, lo, budget)?))
}

/// Raises the cutoff, and the level while the substitution error dominates, until the
/// bracket is at most `target_width` wide.
pub fn converge(a: &CrossedMatrix, opts: &ConvergeOptions, cfg: &EngineConfig) -> Result<RankBracket, RankError> {
    if opts.target_width <= BigRational::zero() {
        return Err(RankError::Config("target width must be positive".into()));
    }
    if opts.max_cutoff == 0 {
        return Err(RankError::Config("cutoff must be at least 1".into()));
    }
    let geometry = a.space().geometry;
    let k = BigRational::from_integer(a.size().into());
    let two = BigRational::from_integer(2.into());
    let mut best: Option<RankBracket> = None;
    let mut last_level = opts.start_level;
    let first = match geometry {
        Geometry::TwoSidedShift => opts.start_level,
        Geometry::OneSidedOdometer => opts.start_level.max(1),
    };
    for n in first..=opts.max_level {
        last_level = n;
        let scheme = Arc::new(match geometry {
            Geometry::TwoSidedShift => PartitionScheme::lamplighter_with(n, opts.convention),
            Geometry::OneSidedOdometer => PartitionScheme::odometer(n)?,
        });
        let (ap, subst) = approximant_matrix(a, &scheme)?;
        let Some(cs) = affordable(&scheme, opts.max_cutoff, cfg.component_budget)? else {
            break;
        };
        // Smallest cutoff whose unclamped width already meets the target.
        let mut covered = BigRational::zero();
        let mut chosen = None;
        let comps = cs.components();
        let mut idx = 0;
        for l in 1..=cs.cutoff() {
            while idx < comps.len() && comps[idx].length == l {
                covered += &comps[idx].measure * BigRational::from_integer(l.into());
                idx += 1;
            }
            if &k * (BigRational::one() - &covered) + &two * &subst <= opts.target_width {
                chosen = Some((l, idx));
                break;
            }
        }
        let (cutoff, count) = chosen.unwrap_or((cs.cutoff(), comps.len()));
        let used = cs.truncate(cutoff);
        let ranks = match component_ranks(&ap, &used, cfg) {
            Ok(r) => r,
            Err(RankError::Approx(ApproxError::NotRepresentableAtLevel { .. })) => continue,
            Err(e) => return Err(e),
        };
        let b = assemble(&used, &ranks, count, cutoff, a.size(), &subst);
        if b.width() <= opts.target_width {
            return Ok(b);
        }
        if best.as_ref().is_none_or(|x| b.width() < x.width()) {
            best = Some(b);
        }
        if &two * &subst * &two <= opts.target_width {
            break;
        }
    }
    match best {
        Some(b) => Err(RankError::BudgetExceeded {
            best: Box::new(b),
            level: last_level,
        }),
        None => Err(RankError::Config(format!(
            "no level up to {} admits a representable approximation within budget",
            opts.max_level
        ))),
    }
}
