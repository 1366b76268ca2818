use std::collections::BTreeMap;

use super::{factorize, Data, Field, FieldElement, FieldError, FieldExt, FieldKind};

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Smallest element (in coefficient order) generating the multiplicative group.
fn multiplicative_generator(ctx: &Field) -> FieldElement {
    let q = ctx.order().expect("finite field");
    let p = ctx.characteristic();
    let deg = ctx.degree();
    let primes: Vec<u128> = factorize(q - 1).into_iter().map(|(r, _)| r).collect();
    for code in 1..q {
        let mut c = code;
        let mut coords = Vec::with_capacity(deg);
        for _ in 0..deg {
            coords.push(num_rational::BigRational::from_integer(((c % p as u128) as u64).into()));
            c /= p as u128;
        }
        let x = ctx.from_coords(&coords).expect("coordinates are integers");
        if primes.iter().all(|&r| !x.pow_u128((q - 1) / r).is_one()) {
            return x;
        }
    }
    unreachable!("finite fields have cyclic unit groups")
}

/// A compatible family ξ_d (d | N) with ξ_{de}^d = ξ_e, built from one primitive
/// N-th root by ξ_d = ξ_N^{N/d}.
pub fn compatible_roots(n: u64, ctx: &Field) -> Result<BTreeMap<u64, FieldElement>, FieldError> {
    if n == 0 {
        return Err(FieldError::NoPrimitiveRoot(0, ctx.spec_string()));
    }
    let ch = ctx.characteristic();
    if ch != 0 && n % ch == 0 {
        return Err(FieldError::CharacteristicDividesOrder(ch, n));
    }
    let xi_n = match (ctx.kind(), &ctx.data) {
        (FieldKind::Rational, _) => match n {
            1 => ctx.one(),
            2 => ctx.from_i64(-1),
            _ => return Err(FieldError::NoPrimitiveRoot(n, ctx.spec_string())),
        },
        (FieldKind::Cyclotomic(m), Data::Cyclotomic { .. }) => {
            // The roots of unity in Q(ζ_m) form a cyclic group of order lcm(2, m).
            let m = m as u64;
            let (order, zeta) = if m % 2 == 0 {
                (m, ctx.generator())
            } else {
                (2 * m, ctx.generator().neg())
            };
            if order % n != 0 {
                return Err(FieldError::NoPrimitiveRoot(n, ctx.spec_string()));
            }
            zeta.pow((order / n) as i64)?
        }
        (FieldKind::PrimeField(_) | FieldKind::FrobeniusField { .. }, _) => {
            let q = ctx.order().unwrap();
            if (q - 1) % n as u128 != 0 {
                return Err(FieldError::NoPrimitiveRoot(n, ctx.spec_string()));
            }
            multiplicative_generator(ctx).pow_u128((q - 1) / n as u128)
        }
        _ => unreachable!(),
    };
    Ok(divisors(n)
        .into_iter()
        .map(|d| (d, xi_n.pow_u128((n / d) as u128)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    fn check_family(fam: &BTreeMap<u64, FieldElement>, n: u64) {
        for (&d, x) in fam {
            assert!(x.pow(d as i64).unwrap().is_one());
            for k in 1..d {
                assert!(!x.pow(k as i64).unwrap().is_one(), "xi_{d} not primitive");
            }
        }
        for d in divisors(n) {
            for e in divisors(n / d) {
                assert_eq!(fam[&(d * e)].pow(d as i64).unwrap(), fam[&e]);
            }
        }
    }

    #[test]
    fn rationals_have_square_roots_only() {
        let q = FieldContext::rational();
        let fam = compatible_roots(2, &q).unwrap();
        assert!(fam[&1].is_one());
        assert_eq!(fam[&2], q.from_i64(-1));
        assert!(matches!(
            compatible_roots(3, &q),
            Err(FieldError::NoPrimitiveRoot(3, _))
        ));
    }

    #[test]
    fn cyclotomic_families() {
        let k4 = FieldContext::cyclotomic(4).unwrap();
        let fam = compatible_roots(4, &k4).unwrap();
        assert_eq!(fam[&4], k4.generator());
        assert_eq!(fam[&2], k4.from_i64(-1));
        check_family(&fam, 4);
        let k6 = FieldContext::cyclotomic(6).unwrap();
        let fam = compatible_roots(6, &k6).unwrap();
        assert_eq!(fam[&6].pow(3).unwrap(), fam[&2]);
        assert_eq!(fam[&6].pow(2).unwrap(), fam[&3]);
        check_family(&fam, 6);
        // Q(ζ_3) contains the sixth roots of unity.
        let k3 = FieldContext::cyclotomic(3).unwrap();
        check_family(&compatible_roots(6, &k3).unwrap(), 6);
        assert!(compatible_roots(4, &k3).is_err());
    }

    #[test]
    fn finite_field_families() {
        let f7 = FieldContext::prime(7).unwrap();
        check_family(&compatible_roots(6, &f7).unwrap(), 6);
        assert!(matches!(
            compatible_roots(7, &f7),
            Err(FieldError::CharacteristicDividesOrder(7, 7))
        ));
        assert!(compatible_roots(4, &f7).is_err());
        let f9 = FieldContext::frobenius(3, 1).unwrap();
        check_family(&compatible_roots(8, &f9).unwrap(), 8);
        let f25 = FieldContext::frobenius(5, 1).unwrap();
        check_family(&compatible_roots(12, &f25).unwrap(), 12);
    }
}
