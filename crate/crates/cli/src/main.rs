mod out;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crossrank::algebra::{fourier, parse_crossed_matrix, parse_expression_with, quotient_at_orbit, ParseOptions};
use crossrank::approx::{enumerate_components, macci_sequence, BlockConvention, PartitionScheme};
use crossrank::field::{Field, FieldContext};
use crossrank::rank::{
    converge, kernel_bracket, sylvester_bracket, ConvergeOptions, EngineConfig, RankBracket, RankError,
};
use crossrank::series::{factor_pure, project_p, SpecialSeries, SpecialTerm, TruncSkewSeries};
use crossrank::space::PeriodicPoint;
use crossrank::verify::{run_criterion, VerifyOptions, CRITERIA};

use out::{bracket_json, emit, put, Format};

#[derive(Parser)]
#[command(
    name = "crossrank",
    version,
    about = "Exact rank brackets over lamplighter crossed products"
)]
struct Cli {
    /// Q, Q(zeta_N), GF(p) or GF(p^2n;frob).
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "CROSSRANK_THREADS", default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Same as --format json.
    #[arg(long, global = true, conflicts_with = "format")]
    json: bool,
    /// Seed for the sampled property checks.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Add wall-clock milliseconds to the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    Lamplighter,
    Odometer,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    /// E is the block of ones.
    Ones,
    /// E is the block of zeros.
    Zeros,
}

impl From<Convention> for BlockConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Ones => BlockConvention::Ones,
            Convention::Zeros => BlockConvention::Zeros,
        }
    }
}

#[derive(Args, Clone)]
struct RankArgs {
    /// Group-algebra expression, or a matrix `[[a, b], [c, d]]`.
    #[arg(long)]
    expr: String,
    #[arg(long, default_value_t = 0)]
    level: usize,
    /// Bracket at exactly this cutoff, unless --width is also given; then it caps the search.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Target bracket width; the level and cutoff are raised until it is met.
    #[arg(long)]
    width: Option<String>,
    #[arg(long, default_value_t = 6)]
    max_level: usize,
    #[arg(long, value_enum, default_value = "ones")]
    convention: Convention,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bracket for rk of a matrix over the crossed product.
    Rank(RankArgs),
    /// Bracket for the kernel dimension of a matrix over the lamplighter group algebra.
    Betti(RankArgs),
    /// Components W of the quasi-partition up to a cutoff.
    Components {
        #[arg(long, value_enum, default_value = "lamplighter")]
        system: System,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, default_value_t = 24)]
        cutoff: usize,
        #[arg(long, value_enum, default_value = "ones")]
        convention: Convention,
        /// List every component, not just the census.
        #[arg(long)]
        list: bool,
    },
    /// Fib_m(0), …, Fib_m(upto − 1).
    Macci {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        upto: usize,
    },
    /// The image of a group-algebra element in the crossed product.
    Fourier {
        #[arg(long)]
        expr: String,
    },
    /// Truncated skew power series at a lamplighter level.
    Series {
        #[command(subcommand)]
        op: SeriesOp,
        #[arg(long, global = true, default_value_t = 1)]
        level: usize,
        #[arg(long, global = true, default_value_t = 6)]
        order: usize,
    },
    /// The image in matrices over K[s, s^-1] at a periodic orbit.
    Quotient {
        #[arg(long)]
        expr: String,
        /// One period of the orbit point, e.g. 011.
        #[arg(long)]
        orbit: String,
    },
    /// Runs the acceptance checks.
    Verify {
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
    /// dim ker(s + s*) for s = ½(1 + a₀)t, bracketed at growing cutoffs.
    DemoGz {
        #[arg(long, default_value_t = 30)]
        max_cutoff: usize,
    },
}

/// Expressions take nonnegative t-degrees; `S("w")` is a special term.
#[derive(Subcommand)]
enum SeriesOp {
    /// Coefficients up to the order.
    Expand {
        #[arg(long)]
        expr: String,
    },
    /// Inverse of a series with invertible constant term.
    Invert {
        #[arg(long)]
        expr: String,
    },
    /// Projection onto special series, over components of length ≤ order + 1.
    Project {
        #[arg(long)]
        expr: String,
    },
    /// Coefficientwise product of two projections, or the relative inverse of one.
    Hadamard {
        #[arg(long)]
        expr: String,
        #[arg(long, required_unless_present = "inverse")]
        with: Option<String>,
        #[arg(long, conflicts_with = "with")]
        inverse: bool,
    },
    /// Factors a special term into pure terms.
    Factor {
        /// Binary word of the special set.
        #[arg(long)]
        word: String,
    },
}

struct Ctx {
    field: Field,
    threads: usize,
    format: Option<Format>,
    seed: u64,
}

impl Ctx {
    fn engine(&self) -> EngineConfig {
        EngineConfig::with_threads(self.threads)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

const DEFAULT_WIDTH: &str = "1e-6";
const DEFAULT_CUTOFF: usize = 24;

/// Failure with a partial result still worth printing.
struct Partial {
    value: Value,
    code: u8,
}

type CmdResult = Result<std::result::Result<Value, Partial>>;

/// Exact value of a decimal such as `1e-6` or `0.25`.
fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().context("bad exponent")?),
        None => (s, 0),
    };
    if let Some((n, d)) = mant.split_once('/') {
        if exp != 0 {
            bail!("cannot combine a fraction with an exponent");
        }
        let n: num_bigint::BigInt = n.parse().context("bad numerator")?;
        let d: num_bigint::BigInt = d.parse().context("bad denominator")?;
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: num_bigint::BigInt = format!("{int}{frac}")
        .parse()
        .with_context(|| format!("bad number {s}"))?;
    let shift = exp - frac.len() as i32;
    let ten = num_bigint::BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-shift) as usize))
    })
}

fn rank_like(ctx: &Ctx, a: &RankArgs, kernel: bool) -> CmdResult {
    let opts = ParseOptions { level: Some(a.level) };
    let m = parse_crossed_matrix(&a.expr, &ctx.field, opts)?;
    let scheme = Arc::new(PartitionScheme::lamplighter_with(a.level, a.convention.into()));
    let flip = |b: RankBracket| if kernel { kernel_bracket(&b) } else { b };
    let result = match (&a.width, a.cutoff) {
        (None, Some(cutoff)) => sylvester_bracket(&m, &scheme, cutoff, &ctx.engine()),
        (w, cutoff) => {
            let w = parse_decimal(w.as_deref().unwrap_or(DEFAULT_WIDTH))?;
            let mut co = ConvergeOptions::new(w, a.max_level.max(a.level), cutoff.unwrap_or(DEFAULT_CUTOFF));
            co.start_level = a.level;
            co.convention = a.convention.into();
            converge(&m, &co, &ctx.engine())
        }
    };
    let mut head = json!({
        "command": if kernel { "betti" } else { "rank" },
        "expr": a.expr,
        "field": ctx.field.spec_string(),
    });
    match result {
        Ok(b) => {
            out::merge(&mut head, bracket_json(&flip(b)));
            head["status"] = json!("ok");
            Ok(Ok(head))
        }
        Err(RankError::BudgetExceeded { best, level }) => {
            out::merge(&mut head, bracket_json(&flip(*best)));
            head["status"] = json!("budget_exceeded");
            head["highest_level"] = json!(level);
            Ok(Err(Partial { value: head, code: 2 }))
        }
        Err(e) => Err(e.into()),
    }
}

fn components(ctx: &Ctx, system: System, level: usize, cutoff: usize, conv: Convention, list: bool) -> CmdResult {
    let scheme = Arc::new(match system {
        System::Lamplighter => PartitionScheme::lamplighter_with(level, conv.into()),
        System::Odometer => PartitionScheme::odometer(level)?,
    });
    let cs = enumerate_components(&scheme, cutoff)?;
    let census: Vec<Value> = cs
        .length_census()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(len, &c)| json!({"length": len, "count": c}))
        .collect();
    let mut v = json!({
        "command": "components",
        "system": match system { System::Lamplighter => "lamplighter", System::Odometer => "odometer" },
        "level": level,
        "cutoff": cutoff,
        "count": cs.len(),
        "census": census,
    });
    put(&mut v, "covered_mass", cs.covered_mass());
    put(&mut v, "tail_mass", &cs.tail_mass());
    if list {
        v["components"] = cs
            .components()
            .iter()
            .zip(cs.summary())
            .map(|(w, (word, len, mu))| json!({"word": word, "length": len, "measure": mu.to_string(), "set": w.clopen.to_string()}))
            .collect();
    }
    let _ = ctx;
    Ok(Ok(v))
}

fn coeffs_json(s: &TruncSkewSeries) -> Vec<Value> {
    s.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .map(|(d, f)| json!({"degree": d, "coefficient": f.to_string()}))
        .collect()
}

fn special_json(p: &SpecialSeries) -> Vec<Value> {
    p.components()
        .summary()
        .into_iter()
        .zip(p.coeffs())
        .filter(|(_, c)| !c.is_zero())
        .map(|((word, len, _), c)| json!({"word": word, "degree": len - 1, "coefficient": c.to_string()}))
        .collect()
}

fn series(ctx: &Ctx, op: &SeriesOp, level: usize, order: usize) -> CmdResult {
    let k = &ctx.field;
    let scheme = Arc::new(PartitionScheme::lamplighter(level));
    let parse = |e: &str| -> Result<TruncSkewSeries> {
        let g = parse_expression_with(e, k, ParseOptions { level: Some(level) })?;
        Ok(TruncSkewSeries::from_crossed(&fourier(&g)?, scheme.clone(), order)?)
    };
    let cs = || -> Result<Arc<_>> { Ok(Arc::new(enumerate_components(&scheme, order + 1)?)) };
    let mut v = json!({"command": "series", "level": level, "order": order, "field": k.spec_string()});
    match op {
        SeriesOp::Expand { expr } => {
            v["expr"] = json!(expr);
            v["coefficients"] = json!(coeffs_json(&parse(expr)?));
        }
        SeriesOp::Invert { expr } => {
            v["expr"] = json!(expr);
            v["inverse"] = json!(coeffs_json(&parse(expr)?.invert()?));
        }
        SeriesOp::Project { expr } => {
            v["expr"] = json!(expr);
            v["projection"] = json!(special_json(&project_p(&parse(expr)?, &cs()?)?));
        }
        SeriesOp::Hadamard { expr, with, inverse } => {
            let cs = cs()?;
            let x = project_p(&parse(expr)?, &cs)?;
            v["expr"] = json!(expr);
            let r = match with {
                Some(y) if !inverse => {
                    v["with"] = json!(y);
                    x.hadamard(&project_p(&parse(y)?, &cs)?)?
                }
                _ => x.relative_inverse(),
            };
            v["result"] = json!(special_json(&r));
        }
        SeriesOp::Factor { word } => {
            let w: Vec<u8> = word
                .chars()
                .map(|c| {
                    c.to_digit(2)
                        .map(|d| d as u8)
                        .ok_or_else(|| anyhow!("factor word must be binary"))
                })
                .collect::<Result<_>>()?;
            let t = SpecialTerm::from_word(level, 1, w)?;
            let f = factor_pure(&t.clopen(), &scheme)?;
            let words: Vec<String> = f
                .iter()
                .map(|t| t.word().iter().map(|b| char::from(b'0' + b)).collect())
                .collect();
            v["term"] = json!({"word": word, "degree": t.degree(), "pure": t.is_pure()});
            v["factors"] = json!(words);
        }
    }
    Ok(Ok(v))
}

fn verify(ctx: &Ctx, quick: bool, cases: usize, only: &[u8]) -> CmdResult {
    let opts = VerifyOptions {
        seed: ctx.seed,
        cases,
        threads: if ctx.threads == 0 { 4 } else { ctx.threads },
        quick,
    };
    let mut rows = Vec::new();
    let mut failed = false;
    for (id, _) in CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let r = run_criterion(id, &opts);
        failed |= !r.passed;
        rows.push(json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
            "wall_ms": r.wall_ms as u64,
        }));
    }
    let v = json!({"command": "verify", "seed": ctx.seed, "quick": quick, "cases": cases, "criteria": rows});
    Ok(if failed {
        Err(Partial { value: v, code: 1 })
    } else {
        Ok(v)
    })
}

fn demo_gz(ctx: &Ctx, max_cutoff: usize) -> CmdResult {
    let k = &ctx.field;
    let g = parse_expression_with("(1/2)*(1+a(0))*t", k, ParseOptions::default())?;
    let a = g.try_add(&g.star())?;
    let third = BigRational::new(1.into(), 3.into());
    let mut rows = Vec::new();
    for (level, cutoffs) in [
        (0usize, (5..=max_cutoff).step_by(5).collect::<Vec<_>>()),
        (1, vec![8, 12, 16]),
    ] {
        for cutoff in cutoffs {
            let b = crossrank::rank::betti_bracket(&[vec![a.clone()]], level, cutoff, &ctx.engine())?;
            let mut row = bracket_json(&b);
            row["contains_one_third"] = json!(b.contains(&third));
            rows.push(row);
        }
    }
    Ok(Ok(
        json!({"command": "demo-gz", "operator": "s + s*, s = (1/2)(1 + a(0)) t", "expected": "1/3", "rows": rows}),
    ))
}

fn run(cli: &Cli) -> Result<(std::result::Result<Value, Partial>, Format)> {
    let field = FieldContext::parse(&cli.field)?;
    let ctx = Ctx {
        field,
        threads: cli.threads,
        format: if cli.json { Some(Format::Json) } else { cli.format },
        seed: cli.seed,
    };
    let (res, default) = match &cli.cmd {
        Cmd::Rank(a) => (rank_like(&ctx, a, false)?, Format::Json),
        Cmd::Betti(a) => (rank_like(&ctx, a, true)?, Format::Json),
        Cmd::Components {
            system,
            level,
            cutoff,
            convention,
            list,
        } => (
            components(&ctx, *system, *level, *cutoff, *convention, *list)?,
            Format::Json,
        ),
        Cmd::Macci { m, upto } => {
            if *m == 0 {
                bail!("m must be at least 1");
            }
            let vals: Vec<String> = match upto {
                0 => Vec::new(),
                u => macci_sequence(*m, u - 1).iter().map(|x| x.to_string()).collect(),
            };
            (Ok(json!({"command": "macci", "m": m, "values": vals})), Format::Json)
        }
        Cmd::Fourier { expr } => {
            let g = parse_expression_with(expr, &ctx.field, ParseOptions::default())?;
            let v = json!({"command": "fourier", "expr": expr, "group_element": g.to_string(), "crossed": fourier(&g)?.to_string()});
            (Ok(v), Format::Json)
        }
        Cmd::Series { op, level, order } => (series(&ctx, op, *level, *order)?, Format::Json),
        Cmd::Quotient { expr, orbit } => {
            let g = parse_expression_with(expr, &ctx.field, ParseOptions::default())?;
            let y = PeriodicPoint::parse(orbit)?;
            let m = quotient_at_orbit(&fourier(&g)?, &y)?;
            (
                Ok(
                    json!({"command": "quotient", "expr": expr, "orbit": orbit, "period": y.period(), "matrix": m.to_string()}),
                ),
                Format::Json,
            )
        }
        Cmd::Verify { quick, cases, only } => (verify(&ctx, *quick, *cases, only)?, Format::Text),
        Cmd::DemoGz { max_cutoff } => (demo_gz(&ctx, *max_cutoff)?, Format::Text),
    };
    Ok((res, ctx.format(default)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let t0 = Instant::now();
    match run(&cli) {
        Ok((res, format)) => {
            let (mut v, code) = match res {
                Ok(v) => (v, 0),
                Err(p) => (p.value, p.code),
            };
            if cli.timing {
                v["wall_ms"] = json!(t0.elapsed().as_millis() as u64);
            }
            emit(&v, format);
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
