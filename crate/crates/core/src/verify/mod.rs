//! The acceptance suite: one report per criterion, driven by a seed.

pub mod gen;
mod props;

use std::sync::Arc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{parse_expression, CrossedElement, CrossedMatrix, GroupAlgebraElement};
use crate::approx::{
    enumerate_components, enumerate_generic, macci, refine_embedding, tail_mass_closed_form, BlockElement,
    ComponentSet, PartitionScheme,
};
use crate::field::{Field, FieldContext};
use crate::matrix::{matrix_rank, oracle::naive_rank, ExactMatrix};
use crate::rank::{betti_bracket, sylvester_bracket, EngineConfig, RankBracket};
use crate::space::SpaceSpec;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Cases per property suite.
    pub cases: usize,
    pub threads: usize,
    /// Smaller sizes everywhere except the two headline brackets.
    pub quick: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0x5eed,
            cases: 500,
            threads: 4,
            quick: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub wall_ms: u128,
}

/// Criteria whose stated bound does not hold. They still run and report FAIL.
pub const UNSATISFIABLE: [u8; 1] = [5];

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "betti of s+s* at level 0"),
    (2, "cross-level consistency"),
    (3, "component census"),
    (4, "quasi-partition identity"),
    (5, "m-acci summation"),
    (6, "odometer"),
    (7, "invertibility of 1+t"),
    (8, "property suites"),
    (9, "oracle equivalence"),
];

type Outcome = Result<String, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn decimal(x: &BigRational) -> String {
    use num_traits::ToPrimitive;
    format!("~{:.3e}", x.to_f64().unwrap_or(f64::NAN))
}

fn show(x: &BigRational) -> String {
    format!("{x} ({})", decimal(x))
}

fn show_bracket(b: &RankBracket) -> String {
    format!("[{}, {}]", show(&b.lower), show(&b.upper))
}

pub fn run_criterion(id: u8, opts: &VerifyOptions) -> CriterionReport {
    let name = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).unwrap_or("unknown");
    let t0 = Instant::now();
    let out = match id {
        1 => ac1(opts).map(|(_, s)| s),
        2 => ac2(opts),
        3 => ac3(),
        4 => ac4(opts),
        5 => ac5(),
        6 => ac6(opts),
        7 => ac7(opts),
        8 => ac8(opts),
        9 => ac9(opts),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionReport {
        id,
        name,
        passed,
        detail,
        wall_ms: t0.elapsed().as_millis(),
    }
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| run_criterion(c.0, opts)).collect()
}

fn s_plus_s_star(k: &Field) -> Result<GroupAlgebraElement, String> {
    let s = parse_expression("(1/2)*(1+a(0))*t", k).map_err(err)?;
    s.try_add(&s.star()).map_err(err)
}

fn timed_betti(level: usize, cutoff: usize, threads: usize) -> Result<(RankBracket, f64), String> {
    let k = FieldContext::rational();
    let a = s_plus_s_star(&k)?;
    let t0 = Instant::now();
    let b = betti_bracket(&[vec![a]], level, cutoff, &EngineConfig::with_threads(threads)).map_err(err)?;
    Ok((b, t0.elapsed().as_secs_f64()))
}

fn ac1(_: &VerifyOptions) -> Result<(RankBracket, String), String> {
    let (b, secs) = timed_betti(0, 30, 1)?;
    let third = q(1, 3);
    if !b.contains(&third) {
        return Err(format!("{} misses 1/3", show_bracket(&b)));
    }
    if b.width() > q(1, 1_000_000) {
        return Err(format!("width {} > 1e-6", show(&b.width())));
    }
    if secs > 10.0 {
        return Err(format!("took {secs:.2}s > 10s"));
    }
    Ok((
        b.clone(),
        format!("{} width {} in {secs:.2}s", show_bracket(&b), show(&b.width())),
    ))
}

fn ac2(opts: &VerifyOptions) -> Outcome {
    let (b0, _) = ac1(opts)?;
    let cutoff = if opts.quick { 16 } else { 22 };
    let (b1, secs) = timed_betti(1, cutoff, 4)?;
    let third = q(1, 3);
    if !b1.contains(&third) {
        return Err(format!("level 1 bracket {} misses 1/3", show_bracket(&b1)));
    }
    if !b1.intersects(&b0) {
        return Err(format!("{} and {} are disjoint", show_bracket(&b1), show_bracket(&b0)));
    }
    if secs > 60.0 {
        return Err(format!("took {secs:.2}s > 60s"));
    }
    Ok(format!(
        "level 1, L={cutoff}: {} ({} components) in {secs:.2}s",
        show_bracket(&b1),
        b1.component_count
    ))
}

type ComponentKey = (usize, Vec<u32>, crate::space::Clopen, BigRational);

fn component_keys(cs: &ComponentSet) -> Vec<ComponentKey> {
    let mut v: Vec<_> = cs
        .components()
        .iter()
        .map(|w| (w.length, w.label.clone(), w.clopen.clone(), w.measure.clone()))
        .collect();
    v.sort();
    v
}

fn ac3() -> Outcome {
    let mut shown = Vec::new();
    for n in 0..3 {
        let m = 2 * n + 1;
        let cutoff = m + 8;
        let scheme = Arc::new(PartitionScheme::lamplighter(n));
        let cs = enumerate_components(&scheme, cutoff).map_err(err)?;
        let census = cs.length_census();
        for len in 1..=cutoff {
            let got = BigUint::from(census.get(len).copied().unwrap_or(0));
            let want = match len {
                1 => BigUint::one(),
                l if l > m => macci(m, l - m),
                _ => BigUint::zero(),
            };
            if got != want {
                return Err(format!("n={n}: {got} components of length {len}, expected {want}"));
            }
        }
        let custom = Arc::new(PartitionScheme::new(scheme.e().clone(), scheme.parts().to_vec()).map_err(err)?);
        let generic = enumerate_generic(&custom, cutoff, 1_000_000).map_err(err)?;
        if component_keys(&generic) != component_keys(&cs) {
            return Err(format!("n={n}: generic enumeration differs from the fast path"));
        }
        shown.push(format!("n={n}: {} components", cs.len()));
    }
    Ok(shown.join(", "))
}

fn ac4(opts: &VerifyOptions) -> Outcome {
    let tops = if opts.quick { [30, 16, 16] } else { [30, 22, 22] };
    for (n, &top) in tops.iter().enumerate() {
        let full = enumerate_components(&Arc::new(PartitionScheme::lamplighter(n)), top).map_err(err)?;
        for cutoff in 1..=top {
            let cs = full.truncate(cutoff);
            let closed = BigRational::one() - tail_mass_closed_form(n, cutoff);
            if cs.covered_mass() != &closed {
                return Err(format!(
                    "n={n}, L={cutoff}: covered {} ≠ closed form {}",
                    cs.covered_mass(),
                    closed
                ));
            }
        }
    }
    let cov = BigRational::one() - tail_mass_closed_form(0, 30);
    if cov < BigRational::one() - q(1, 10_000_000) {
        return Err(format!("n=0, L=30 covered mass {} < 1 − 1e-7", show(&cov)));
    }
    Ok(format!(
        "exact for L ≤ {}, {}, {} at n = 0, 1, 2; n=0, L=30 covers {}",
        tops[0],
        tops[1],
        tops[2],
        show(&cov)
    ))
}

/// Σ_{k>K} Fib_m(k) 2^{-k} = 2^m Σ_{j=1}^{m} 2^{-j} Σ_{K−j<i≤K} Fib_m(i) 2^{-i}.
fn macci_remainder(seq: &[BigUint], m: usize, kk: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for j in 1..=m {
        for i in (kk + 1).saturating_sub(j).max(1)..=kk {
            acc += BigRational::new(seq[i].clone().into(), BigInt::one() << (i + j));
        }
    }
    acc * BigRational::from_integer(BigInt::one() << m)
}

fn ac5() -> Outcome {
    let tol = q(1, 1_000_000);
    let mut misses = Vec::new();
    for m in 1..=7usize {
        let limit = BigRational::from_integer(BigInt::one() << (m - 1));
        let seq = crate::approx::macci_sequence(m, 1000);
        let mut sum = BigRational::zero();
        let mut gap200 = None;
        let mut reached = None;
        for (kk, f) in seq.iter().enumerate().skip(1) {
            let next = &sum + BigRational::new(f.clone().into(), BigInt::one() << kk);
            if next < sum || next > limit {
                return Err(format!(
                    "m={m}, K={kk}: partial sum {} leaves [prev, {limit}]",
                    show(&next)
                ));
            }
            sum = next;
            if kk <= 200 && &sum + macci_remainder(&seq, m, kk) != limit {
                return Err(format!("m={m}, K={kk}: partial sum plus remainder ≠ {limit}"));
            }
            if kk == 200 {
                gap200 = Some(&limit - &sum);
            }
            if reached.is_none() && &limit - &sum <= tol {
                reached = Some(kk);
            }
            if kk >= 200 && reached.is_some() {
                break;
            }
        }
        let gap = gap200.expect("sequence reaches K=200");
        if gap > tol {
            let at = reached.map_or("K > 1000".to_string(), |k| format!("K={k}"));
            misses.push(format!("m={m} (gap {}, 1e-6 first at {at})", decimal(&gap)));
        }
    }
    if misses.is_empty() {
        return Ok("monotone, bounded, limit 2^(m-1) exact, within 1e-6 at K=200 for m ≤ 7".into());
    }
    Err(format!(
        "monotone, bounded and the limit 2^(m-1) is exact, but at K=200 the gap exceeds 1e-6 for {}",
        misses.join(", ")
    ))
}

fn ac6(opts: &VerifyOptions) -> Outcome {
    let k = FieldContext::rational();
    let top = if opts.quick { 4 } else { 6 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 6);
    let mut prev: Option<Arc<ComponentSet>> = None;
    for n in 1..=top {
        let scheme = Arc::new(PartitionScheme::odometer(n).map_err(err)?);
        let len = 1usize << n;
        let cs = Arc::new(enumerate_components(&scheme, len).map_err(err)?);
        if cs.len() != 1 || cs.components()[0].length != len || !cs.tail_mass().is_zero() {
            return Err(format!("level {n}: census {:?}", cs.length_census()));
        }
        if !enumerate_components(&scheme, len - 1).map_err(err)?.is_empty() {
            return Err(format!("level {n}: a component shorter than {len}"));
        }
        if let Some(coarse) = &prev {
            let d = len / 2;
            let x = gen::matrix(&mut rng, &k, d, d);
            let xe = BlockElement::new(coarse.clone(), 1, &k, vec![x.clone()]).map_err(err)?;
            let up = refine_embedding(coarse, &cs, &xe).map_err(err)?;
            if up.block(0) != &ExactMatrix::block_diag(&[x.clone(), x], &k) {
                return Err(format!("refinement {} → {n} is not diag(x, x)", n - 1));
            }
        }
        prev = Some(cs);
    }
    Ok(format!("one component of length 2^n for n ≤ {top}; refinement doubles"))
}

fn one_plus_t(space: SpaceSpec, k: &Field) -> Result<CrossedMatrix, String> {
    let a = CrossedElement::one(space, k)
        .try_add(&CrossedElement::t_pow(space, k, 1))
        .map_err(err)?;
    Ok(CrossedMatrix::scalar(a))
}

fn ac7(opts: &VerifyOptions) -> Outcome {
    let k = FieldContext::rational();
    let cfg = EngineConfig::with_threads(opts.threads);
    let two = q(2, 1);
    let a = one_plus_t(SpaceSpec::binary_shift(), &k)?;
    let plan: &[(usize, usize)] = if opts.quick {
        &[(0, 24), (1, 14), (2, 14), (3, 14)]
    } else {
        &[(0, 30), (1, 20), (2, 20), (3, 20)]
    };
    let mut limits = Vec::new();
    for &(n, top) in plan {
        let scheme = Arc::new(PartitionScheme::lamplighter(n));
        let mu = scheme.mu_e();
        let mut prev = BigRational::zero();
        let mut last = None;
        for cutoff in 1..=top {
            let b = sylvester_bracket(&a, &scheme, cutoff, &cfg).map_err(err)?;
            let floor = BigRational::one() - b.tail_mass() - &mu * &two;
            if b.lower < floor {
                return Err(format!(
                    "n={n}, L={cutoff}: lower {} < {}",
                    show(&b.lower),
                    show(&floor)
                ));
            }
            if b.lower < prev {
                return Err(format!("n={n}: lower bound drops at L={cutoff}"));
            }
            if &b.lower + b.tail_mass() + &mu != BigRational::one() && !b.clamped {
                return Err(format!("n={n}, L={cutoff}: lower + tail + μ(E) ≠ 1"));
            }
            prev = b.lower.clone();
            last = Some(b);
        }
        limits.push((n, last.expect("nonempty plan"), BigRational::one() - &mu));
    }
    for w in limits.windows(2) {
        if w[1].2 <= w[0].2 {
            return Err("the limits 1 − μ(E_n) do not increase".into());
        }
    }
    let odo = one_plus_t(SpaceSpec::odometer(), &k)?;
    let top = if opts.quick { 4 } else { 6 };
    for n in 1..=top {
        let scheme = Arc::new(PartitionScheme::odometer(n).map_err(err)?);
        let b = sylvester_bracket(&odo, &scheme, 1 << n, &cfg).map_err(err)?;
        let want = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << n);
        if b.lower != want || !b.upper.is_one() {
            return Err(format!(
                "odometer level {n}: {} instead of [{want}, 1]",
                show_bracket(&b)
            ));
        }
    }
    let lamp: Vec<String> = limits
        .iter()
        .map(|(n, b, lim)| format!("n={n}, L={}: lower {} → {}", b.cutoff, show(&b.lower), lim))
        .collect();
    Ok(format!("{}; odometer lower = 1 − 2^-n for n ≤ {top}", lamp.join("; ")))
}

fn ac8(opts: &VerifyOptions) -> Outcome {
    type Suite = fn(&mut ChaCha8Rng, usize) -> Result<(), String>;
    let cases = opts.cases;
    let suites: [(&str, Suite, usize); 13] = [
        ("matrix units", props::matrix_units, cases),
        ("π *-homomorphism", props::pi_homomorphism, cases),
        ("refinement diagram", props::refinement_diagram, cases),
        ("Fourier round trip", props::fourier_round_trip, cases),
        ("rank axioms", props::rank_axioms, cases),
        ("invert round trip", props::invert_round_trip, cases),
        ("P idempotent, P(u) = e", props::projection, cases),
        ("corner formulas", props::corner_formulas, cases),
        ("special-term detection", props::detection, cases),
        ("unique pure factorization", props::pure_factorization, cases),
        ("q⊙q⁺⊙q = q", props::hadamard_relative_inverse, cases),
        ("quotient multiplicativity", props::quotient_multiplicative, cases),
        ("nilpotency", props::nilpotency, cases.min(200)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (name, suite, n) in suites {
        let mut sub = ChaCha8Rng::seed_from_u64(rng.gen());
        suite(&mut sub, n).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("13 suites, {cases} cases each (nilpotency {})", cases.min(200)))
}

fn ac9(opts: &VerifyOptions) -> Outcome {
    let fields = [
        FieldContext::rational(),
        FieldContext::cyclotomic(5).map_err(err)?,
        FieldContext::cyclotomic(8).map_err(err)?,
        FieldContext::prime(2).map_err(err)?,
        FieldContext::prime(7).map_err(err)?,
        FieldContext::frobenius(3, 1).map_err(err)?,
        FieldContext::frobenius(2, 2).map_err(err)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 9);
    let count = opts.cases.max(1);
    for case in 0..count {
        let k = &fields[case % fields.len()];
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let m = gen::matrix(&mut rng, k, r, c);
        let (fast, slow) = (matrix_rank(&m), naive_rank(&m));
        if fast != slow {
            return Err(format!("{r}×{c} over {}: rank {fast} vs naive {slow}", k.spec_string()));
        }
    }
    for m in 1..=5 {
        for kk in 2..=14 {
            let want = count_strings(kk - 2, m);
            if macci(m, kk) != BigUint::from(want) {
                return Err(format!("Fib_{m}({kk}) ≠ {want}"));
            }
        }
    }
    Ok(format!(
        "{count} matrices over {} fields, macci for m ≤ 5, k ≤ 14",
        fields.len()
    ))
}

/// Binary strings of length `len` with no run of `m` ones.
fn count_strings(len: usize, m: usize) -> u64 {
    (0u64..1 << len)
        .filter(|x| {
            let mut run = 0;
            (0..len).all(|i| {
                run = if x >> i & 1 == 1 { run + 1 } else { 0 };
                run < m
            })
        })
        .count() as u64
}
