//! Exact coefficient fields with involution: Q, Q(zeta_N), F_p and F_{p^{2n}}.

mod poly;
mod roots;

pub use roots::compatible_roots;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("no primitive {0}-th root of unity in {1}")]
    NoPrimitiveRoot(u64, String),
    #[error("characteristic {0} divides the order {1}")]
    CharacteristicDividesOrder(u64, u64),
    #[error("{0} is not invertible in characteristic {1}")]
    CharacteristicError(String, u64),
    #[error("invalid field specification: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Cyclotomic(u32),
    PrimeField(u64),
    FrobeniusField { p: u64, n: u32 },
}

#[derive(Debug)]
enum Data {
    Rational,
    Cyclotomic {
        /// Monic modulus Φ_N, low degree first.
        modulus: Vec<BigRational>,
        /// Reduced image of ξ^k under conjugation, k < deg Φ_N.
        conj_table: Vec<Vec<BigRational>>,
    },
    Prime {
        p: u64,
    },
    Frobenius {
        p: u64,
        modulus: Vec<u64>,
        /// Image of x^k under x ↦ x^{p^n}, k < 2n.
        frob_table: Vec<Vec<u64>>,
    },
}

#[derive(Debug)]
pub struct FieldContext {
    kind: FieldKind,
    positive_definite_involution: bool,
    data: Data,
}

/// Shared handle to a field context.
pub type Field = Arc<FieldContext>;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldContext {
    pub fn rational() -> Field {
        Arc::new(FieldContext {
            kind: FieldKind::Rational,
            positive_definite_involution: true,
            data: Data::Rational,
        })
    }

    pub fn cyclotomic(n: u32) -> Result<Field, FieldError> {
        if n == 0 {
            return Err(FieldError::InvalidSpec("Q(zeta_0)".into()));
        }
        let modulus: Vec<BigRational> = poly::cyclotomic_poly(n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let deg = modulus.len() - 1;
        // ξ^{-1} = ξ^{N-1}; its powers reduced mod Φ_N.
        let mut xi_inv = vec![BigRational::zero(); n as usize];
        xi_inv[n as usize - 1] = BigRational::one();
        let xi_inv = poly::rem_monic_q(xi_inv, &modulus);
        let mut conj_table = Vec::with_capacity(deg);
        let mut cur = vec![BigRational::one()];
        for _ in 0..deg {
            conj_table.push(cur.clone());
            cur = poly::rem_monic_q(poly::mul_q(&cur, &xi_inv), &modulus);
        }
        Ok(Arc::new(FieldContext {
            kind: FieldKind::Cyclotomic(n),
            positive_definite_involution: true,
            data: Data::Cyclotomic { modulus, conj_table },
        }))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime(p) || p >= (1u64 << 62) {
            return Err(FieldError::InvalidSpec(format!("GF({p}): not a supported prime")));
        }
        Ok(Arc::new(FieldContext {
            kind: FieldKind::PrimeField(p),
            positive_definite_involution: false,
            data: Data::Prime { p },
        }))
    }

    /// F_{p^{2n}} with the involution x ↦ x^{p^n}.
    pub fn frobenius(p: u64, n: u32) -> Result<Field, FieldError> {
        if !is_prime(p) || n == 0 || p >= (1u64 << 31) {
            return Err(FieldError::InvalidSpec(format!("GF({p}^{};frob)", 2 * n)));
        }
        let deg = 2 * n as usize;
        if (p as f64).powi(deg as i32) > 1e30 {
            return Err(FieldError::InvalidSpec(format!("GF({p}^{deg}) is too large")));
        }
        let modulus = poly::least_irreducible_p(deg, p);
        let x = vec![0u64, 1];
        let mut xq = x;
        for _ in 0..n {
            xq = poly::powmod_poly(&xq, p as u128, &modulus, p);
        }
        let mut frob_table = Vec::with_capacity(deg);
        let mut cur = vec![1u64];
        for _ in 0..deg {
            frob_table.push(cur.clone());
            cur = poly::rem_p(&poly::mul_p(&cur, &xq, p), &modulus, p);
        }
        Ok(Arc::new(FieldContext {
            kind: FieldKind::FrobeniusField { p, n },
            positive_definite_involution: false,
            data: Data::Frobenius { p, modulus, frob_table },
        }))
    }

    /// Parses `Q`, `Q(zeta_N)`, `GF(p)` or `GF(p^2n;frob)`.
    pub fn parse(spec: &str) -> Result<Field, FieldError> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || FieldError::InvalidSpec(spec.to_string());
        if s == "Q" {
            return Ok(Self::rational());
        }
        if let Some(rest) = s.strip_prefix("Q(zeta_").and_then(|r| r.strip_suffix(')')) {
            return Self::cyclotomic(rest.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            if let Some(body) = rest.strip_suffix(";frob") {
                let (p, e) = body.split_once('^').ok_or_else(bad)?;
                let p: u64 = p.parse().map_err(|_| bad())?;
                let e: u32 = e.parse().map_err(|_| bad())?;
                if e == 0 || e % 2 != 0 {
                    return Err(bad());
                }
                return Self::frobenius(p, e / 2);
            }
            return Self::prime(rest.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Whether Σ x_i* x_i = 0 forces every x_i = 0.
    pub fn positive_definite_involution(&self) -> bool {
        self.positive_definite_involution
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Rational | FieldKind::Cyclotomic(_) => 0,
            FieldKind::PrimeField(p) | FieldKind::FrobeniusField { p, .. } => p,
        }
    }

    /// Number of elements, `None` for characteristic zero.
    pub fn order(&self) -> Option<u128> {
        match self.kind {
            FieldKind::Rational | FieldKind::Cyclotomic(_) => None,
            FieldKind::PrimeField(p) => Some(p as u128),
            FieldKind::FrobeniusField { p, n } => Some((p as u128).pow(2 * n)),
        }
    }

    /// Degree over the prime field (over Q for Cyclotomic).
    pub fn degree(&self) -> usize {
        match &self.data {
            Data::Rational | Data::Prime { .. } => 1,
            Data::Cyclotomic { modulus, .. } => modulus.len() - 1,
            Data::Frobenius { modulus, .. } => modulus.len() - 1,
        }
    }

    pub fn same(&self, other: &FieldContext) -> bool {
        std::ptr::eq(self, other) || self.kind == other.kind
    }

    pub fn spec_string(&self) -> String {
        match self.kind {
            FieldKind::Rational => "Q".into(),
            FieldKind::Cyclotomic(n) => format!("Q(zeta_{n})"),
            FieldKind::PrimeField(p) => format!("GF({p})"),
            FieldKind::FrobeniusField { p, n } => format!("GF({p}^{};frob)", 2 * n),
        }
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for FieldContext {}

impl Hash for FieldContext {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Rat(BigRational),
    Cyc(Vec<BigRational>),
    Fp(u64),
    Fq(Vec<u64>),
}

#[derive(Clone)]
pub struct FieldElement {
    ctx: Field,
    v: Value,
}

fn field_zero_value(ctx: &FieldContext) -> Value {
    match ctx.data {
        Data::Rational => Value::Rat(BigRational::zero()),
        Data::Cyclotomic { .. } => Value::Cyc(Vec::new()),
        Data::Prime { .. } => Value::Fp(0),
        Data::Frobenius { .. } => Value::Fq(Vec::new()),
    }
}

/// Constructors hang off the shared handle.
pub trait FieldExt {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    fn from_i64(&self, n: i64) -> FieldElement;
    fn from_rational(&self, q: &BigRational) -> Result<FieldElement, FieldError>;
    /// ξ_N for Cyclotomic(N), the class of x for F_{p^{2n}}, 1 otherwise.
    fn generator(&self) -> FieldElement;
    /// Element with the given coordinates in the power basis of the generator.
    fn from_coords(&self, coords: &[BigRational]) -> Result<FieldElement, FieldError>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement;
}

impl FieldExt for Field {
    fn zero(&self) -> FieldElement {
        FieldElement {
            ctx: self.clone(),
            v: field_zero_value(self),
        }
    }

    fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    fn from_i64(&self, n: i64) -> FieldElement {
        let v = match self.data {
            Data::Rational => Value::Rat(BigRational::from_integer(n.into())),
            Data::Cyclotomic { .. } => {
                let mut c = vec![BigRational::from_integer(n.into())];
                poly::trim_q(&mut c);
                Value::Cyc(c)
            }
            Data::Prime { p } => Value::Fp(n.rem_euclid(p as i64) as u64),
            Data::Frobenius { p, .. } => {
                let mut c = vec![n.rem_euclid(p as i64) as u64];
                poly::trim_p(&mut c);
                Value::Fq(c)
            }
        };
        FieldElement { ctx: self.clone(), v }
    }

    fn from_rational(&self, q: &BigRational) -> Result<FieldElement, FieldError> {
        match self.data {
            Data::Rational => Ok(FieldElement {
                ctx: self.clone(),
                v: Value::Rat(q.clone()),
            }),
            Data::Cyclotomic { .. } => {
                let mut c = vec![q.clone()];
                poly::trim_q(&mut c);
                Ok(FieldElement {
                    ctx: self.clone(),
                    v: Value::Cyc(c),
                })
            }
            Data::Prime { p } | Data::Frobenius { p, .. } => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap();
                let den = q.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(FieldError::CharacteristicError(q.to_string(), p));
                }
                let val = poly::mulmod(num, poly::powmod(den, p as u128 - 2, p), p);
                Ok(self.from_i64(val as i64))
            }
        }
    }

    fn generator(&self) -> FieldElement {
        match &self.data {
            Data::Cyclotomic { modulus, .. } => {
                let x = vec![BigRational::zero(), BigRational::one()];
                FieldElement {
                    ctx: self.clone(),
                    v: Value::Cyc(poly::rem_monic_q(x, modulus)),
                }
            }
            Data::Frobenius { p, modulus, .. } => FieldElement {
                ctx: self.clone(),
                v: Value::Fq(poly::rem_p(&[0, 1], modulus, *p)),
            },
            _ => self.one(),
        }
    }

    fn from_coords(&self, coords: &[BigRational]) -> Result<FieldElement, FieldError> {
        let g = self.generator();
        let mut acc = self.zero();
        let mut pw = self.one();
        for c in coords {
            acc = &acc + &(&self.from_rational(c)? * &pw);
            pw = &pw * &g;
        }
        Ok(acc)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement {
        match &self.data {
            Data::Rational => {
                let num = rng.gen_range(-bound..=bound);
                let den = rng.gen_range(1..=bound.max(1));
                FieldElement {
                    ctx: self.clone(),
                    v: Value::Rat(BigRational::new(num.into(), den.into())),
                }
            }
            Data::Cyclotomic { modulus, .. } => {
                let mut c: Vec<BigRational> = (0..modulus.len() - 1)
                    .map(|_| {
                        BigRational::new(
                            rng.gen_range(-bound..=bound).into(),
                            rng.gen_range(1..=bound.max(1)).into(),
                        )
                    })
                    .collect();
                poly::trim_q(&mut c);
                FieldElement {
                    ctx: self.clone(),
                    v: Value::Cyc(c),
                }
            }
            Data::Prime { p } => FieldElement {
                ctx: self.clone(),
                v: Value::Fp(rng.gen_range(0..*p)),
            },
            Data::Frobenius { p, modulus, .. } => {
                let mut c: Vec<u64> = (0..modulus.len() - 1).map(|_| rng.gen_range(0..*p)).collect();
                poly::trim_p(&mut c);
                FieldElement {
                    ctx: self.clone(),
                    v: Value::Fq(c),
                }
            }
        }
    }
}

impl FieldElement {
    pub fn context(&self) -> &Field {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        match &self.v {
            Value::Rat(q) => q.is_zero(),
            Value::Cyc(c) => c.is_empty(),
            Value::Fp(x) => *x == 0,
            Value::Fq(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.v {
            Value::Rat(q) => q.is_one(),
            Value::Cyc(c) => c.len() == 1 && c[0].is_one(),
            Value::Fp(x) => *x == 1,
            Value::Fq(c) => c.len() == 1 && c[0] == 1,
        }
    }

    /// The rational value, when the element lies in the prime subfield of a
    /// characteristic-zero field.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.v {
            Value::Rat(q) => Some(q.clone()),
            Value::Cyc(c) if c.len() <= 1 => Some(c.first().cloned().unwrap_or_else(BigRational::zero)),
            _ => None,
        }
    }

    /// Representative in [0, p) for prime-field elements.
    pub fn to_residue(&self) -> Option<u64> {
        match &self.v {
            Value::Fp(x) => Some(*x),
            Value::Fq(c) if c.len() <= 1 => Some(c.first().copied().unwrap_or(0)),
            _ => None,
        }
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    fn with(&self, v: Value) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            v,
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let v = match (&self.v, &other.v, &self.ctx.data) {
            (Value::Rat(a), Value::Rat(b), _) => Value::Rat(a + b),
            (Value::Cyc(a), Value::Cyc(b), _) => Value::Cyc(poly::add_q(a, b)),
            (Value::Fp(a), Value::Fp(b), Data::Prime { p }) => Value::Fp((a + b) % p),
            (Value::Fq(a), Value::Fq(b), Data::Frobenius { p, .. }) => Value::Fq(poly::add_p(a, b, *p)),
            _ => return Err(FieldError::ContextMismatch),
        };
        Ok(self.with(v))
    }

    pub fn neg(&self) -> FieldElement {
        let v = match (&self.v, &self.ctx.data) {
            (Value::Rat(a), _) => Value::Rat(-a),
            (Value::Cyc(a), _) => Value::Cyc(poly::neg_q(a)),
            (Value::Fp(a), Data::Prime { p }) => Value::Fp((p - a) % p),
            (Value::Fq(a), Data::Frobenius { p, .. }) => Value::Fq(poly::neg_p(a, *p)),
            _ => unreachable!(),
        };
        self.with(v)
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let v = match (&self.v, &other.v, &self.ctx.data) {
            (Value::Rat(a), Value::Rat(b), _) => Value::Rat(a * b),
            (Value::Cyc(a), Value::Cyc(b), Data::Cyclotomic { modulus, .. }) => {
                Value::Cyc(poly::rem_monic_q(poly::mul_q(a, b), modulus))
            }
            (Value::Fp(a), Value::Fp(b), Data::Prime { p }) => Value::Fp(poly::mulmod(*a, *b, *p)),
            (Value::Fq(a), Value::Fq(b), Data::Frobenius { p, modulus, .. }) => {
                Value::Fq(poly::rem_p(&poly::mul_p(a, b, *p), modulus, *p))
            }
            _ => return Err(FieldError::ContextMismatch),
        };
        Ok(self.with(v))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let v = match (&self.v, &self.ctx.data) {
            (Value::Rat(a), _) => Value::Rat(a.recip()),
            (Value::Cyc(a), Data::Cyclotomic { modulus, .. }) => {
                Value::Cyc(poly::inv_mod_q(a, modulus).ok_or(FieldError::DivisionByZero)?)
            }
            (Value::Fp(a), Data::Prime { p }) => Value::Fp(poly::powmod(*a, *p as u128 - 2, *p)),
            (Value::Fq(a), Data::Frobenius { p, modulus, .. }) => {
                Value::Fq(poly::inv_mod_p(a, modulus, *p).ok_or(FieldError::DivisionByZero)?)
            }
            _ => unreachable!(),
        };
        Ok(self.with(v))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.try_div(other)
    }

    /// The field involution.
    pub fn conj(&self) -> FieldElement {
        let v = match (&self.v, &self.ctx.data) {
            (Value::Rat(a), _) => Value::Rat(a.clone()),
            (Value::Fp(a), _) => Value::Fp(*a),
            (Value::Cyc(a), Data::Cyclotomic { conj_table, .. }) => {
                let mut acc: Vec<BigRational> = Vec::new();
                for (k, c) in a.iter().enumerate() {
                    if !c.is_zero() {
                        let term: Vec<BigRational> = conj_table[k].iter().map(|x| x * c).collect();
                        acc = poly::add_q(&acc, &term);
                    }
                }
                Value::Cyc(acc)
            }
            (Value::Fq(a), Data::Frobenius { p, frob_table, .. }) => {
                let mut acc: Vec<u64> = Vec::new();
                for (k, &c) in a.iter().enumerate() {
                    if c != 0 {
                        let term: Vec<u64> = frob_table[k].iter().map(|&x| poly::mulmod(x, c, *p)).collect();
                        acc = poly::add_p(&acc, &term, *p);
                    }
                }
                Value::Fq(acc)
            }
            _ => unreachable!(),
        };
        self.with(v)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut r = self.ctx.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(r)
    }

    /// Multiplicative order, for nonzero elements of a finite field.
    pub fn multiplicative_order(&self) -> Option<u128> {
        let q = self.ctx.order()?;
        if self.is_zero() {
            return None;
        }
        let group = q - 1;
        let mut ord = group;
        for (prime, _) in factorize(group) {
            while ord % prime == 0 && self.pow_u128(ord / prime).is_one() {
                ord /= prime;
            }
        }
        Some(ord)
    }

    pub(crate) fn pow_u128(&self, mut e: u128) -> FieldElement {
        let mut r = self.ctx.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }
}

pub(crate) fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.v == other.v
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_poly<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
    var: &str,
    is_neg: impl Fn(&T) -> Option<String>,
    is_one: impl Fn(&T) -> bool,
) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        let s = c.to_string();
        if s == "0" {
            continue;
        }
        let (neg, mag) = match is_neg(c) {
            Some(m) => (true, m),
            None => (false, s),
        };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if k == 0 {
            f.write_str(&mag)?;
        } else if is_one(c) || mag == "1" {
            f.write_str(&mono)?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    Ok(())
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.v {
            Value::Rat(q) => write!(f, "{q}"),
            Value::Fp(x) => write!(f, "{x}"),
            Value::Cyc(c) => write_poly(
                f,
                c,
                "z",
                |x: &BigRational| x.is_negative().then(|| (-x).to_string()),
                |x| x.is_one(),
            ),
            Value::Fq(c) => write_poly(f, c, "x", |_| None, |&x| x == 1),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field context mismatch")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$try(&rhs).expect("field context mismatch")
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field context mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}
