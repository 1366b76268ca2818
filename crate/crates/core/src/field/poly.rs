//! Dense univariate polynomial helpers, coefficients stored low degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn trim_q(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn trim_p(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn add_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    trim_q(&mut out);
    out
}

pub(crate) fn neg_q(a: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim_q(&mut out);
    out
}

/// Remainder modulo a monic polynomial.
pub(crate) fn rem_monic_q(mut a: Vec<BigRational>, m: &[BigRational]) -> Vec<BigRational> {
    let d = m.len() - 1;
    while a.len() > d {
        let lead = a.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = a.len() - d;
        for (k, c) in m[..d].iter().enumerate() {
            if !c.is_zero() {
                a[shift + k] -= &lead * c;
            }
        }
    }
    trim_q(&mut a);
    a
}

fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim_q(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let c = &lead / &lb;
        let shift = r.len() - db;
        for (k, bc) in b[..db].iter().enumerate() {
            if !bc.is_zero() {
                r[shift + k] -= &c * bc;
            }
        }
        q[shift] = c;
    }
    trim_q(&mut q);
    trim_q(&mut r);
    (q, r)
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm; `None` if not coprime.
pub(crate) fn inv_mod_q(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim_q(&mut r1);
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem_q(&r0, &r1);
        let s2 = add_q(&s0, &neg_q(&mul_q(&q, &s1)));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut out: Vec<BigRational> = s0.iter().map(|x| x / &c).collect();
    out = rem_monic_q(out, m);
    Some(out)
}

/// Integer coefficients of the N-th cyclotomic polynomial.
pub(crate) fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<BigRational> = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            let phi: Vec<BigRational> = cyclotomic_poly(d).into_iter().map(BigRational::from_integer).collect();
            let (q, r) = divrem_q(&num, &phi);
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num.into_iter().map(|c| c.to_integer()).collect()
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u128, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn add_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim_p(&mut out);
    out
}

pub(crate) fn neg_p(a: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|&c| (p - c) % p).collect()
}

pub(crate) fn mul_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim_p(&mut out);
    out
}

fn divrem_p(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim_p(&mut r);
    let db = b.len() - 1;
    let inv_lead = powmod(b[db], p as u128 - 2, p);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let c = mulmod(lead, inv_lead, p);
        let shift = r.len() - db;
        for (k, &bc) in b[..db].iter().enumerate() {
            r[shift + k] = (r[shift + k] + p - mulmod(c, bc, p)) % p;
        }
        q[shift] = c;
    }
    trim_p(&mut q);
    trim_p(&mut r);
    (q, r)
}

pub(crate) fn rem_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divrem_p(a, m, p).1
}

pub(crate) fn gcd_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim_p(&mut x);
    trim_p(&mut y);
    while !y.is_empty() {
        let r = rem_p(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    x
}

pub(crate) fn inv_mod_p(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim_p(&mut r1);
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem_p(&r0, &r1, p);
        let s2 = add_p(&s0, &neg_p(&mul_p(&q, &s1, p), p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = powmod(r0[0], p as u128 - 2, p);
    let out: Vec<u64> = s0.iter().map(|&x| mulmod(x, c, p)).collect();
    Some(rem_p(&out, m, p))
}

pub(crate) fn powmod_poly(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = rem_p(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem_p(&mul_p(&r, &b, p), m, p);
        }
        b = rem_p(&mul_p(&b, &b, p), m, p);
        e >>= 1;
    }
    trim_p(&mut r);
    r
}

/// Ben-Or irreducibility test for a monic polynomial over F_p.
pub(crate) fn is_irreducible_p(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 0..deg / 2 {
        xp = powmod_poly(&xp, p as u128, f, p);
        let diff = add_p(&xp, &neg_p(&x, p), p);
        if gcd_p(f, &diff, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible polynomial of the given degree whose lower coefficients,
/// read from degree `deg-1` down to 0 as base-p digits, form the least number.
pub(crate) fn least_irreducible_p(deg: usize, p: u64) -> Vec<u64> {
    let total = (p as u128).pow(deg as u32);
    for code in 0..total {
        let mut f = vec![0u64; deg + 1];
        f[deg] = 1;
        let mut c = code;
        for k in 0..deg {
            f[k] = (c % p as u128) as u64;
            c /= p as u128;
        }
        if (f[0] != 0 || deg == 1) && is_irreducible_p(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c.clone()).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(ints(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn irreducibility() {
        // x^2 + 1 is irreducible over F_3, reducible over F_5.
        assert!(is_irreducible_p(&[1, 0, 1], 3));
        assert!(!is_irreducible_p(&[1, 0, 1], 5));
        assert_eq!(least_irreducible_p(2, 3), vec![1, 0, 1]);
        assert_eq!(least_irreducible_p(2, 2), vec![1, 1, 1]);
    }
}
