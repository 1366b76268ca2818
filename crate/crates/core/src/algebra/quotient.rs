//! The quotient of the crossed product at a periodic orbit, landing in M_l(K[s, s^{-1}]).
//! Rows are indexed by orbit phase: row j corresponds to T^j(y).

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, FieldElement, FieldExt};
use crate::space::{Geometry, PeriodicPoint};

use super::{AlgebraError, CrossedElement};

/// Laurent polynomial in s with exact coefficients; zero coefficients absent.
pub type LaurentPoly = BTreeMap<i64, FieldElement>;

fn poly_add_into(acc: &mut LaurentPoly, e: i64, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    match acc.remove(&e) {
        Some(x) => {
            let y = &x + &c;
            if !y.is_zero() {
                acc.insert(e, y);
            }
        }
        None => {
            acc.insert(e, c);
        }
    }
}

fn poly_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::new();
    for (i, x) in a {
        for (j, y) in b {
            poly_add_into(&mut out, i + j, x * y);
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    field: Field,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(size: usize, field: &Field) -> Self {
        LaurentMatrix {
            size,
            field: field.clone(),
            entries: vec![LaurentPoly::new(); size * size],
        }
    }

    pub fn identity(size: usize, field: &Field) -> Self {
        let mut m = Self::zero(size, field);
        for i in 0..size {
            m.entries[i * size + i].insert(0, field.one());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_empty())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, p) in other.entries.iter().enumerate() {
            for (e, c) in p {
                poly_add_into(&mut out.entries[k], *e, c.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size;
        let mut out = Self::zero(n, &self.field);
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_empty() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if b.is_empty() {
                        continue;
                    }
                    for (e, c) in poly_mul(a, b) {
                        poly_add_into(&mut out.entries[i * n + j], e, c);
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose with s* = s^{-1}.
    pub fn star(&self) -> Self {
        let n = self.size;
        let mut out = Self::zero(n, &self.field);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entry(i, j).iter().map(|(e, c)| (-e, c.conj())).collect();
            }
        }
        out
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size;
        let mut rows = Vec::new();
        for i in 0..n {
            let cells: Vec<String> = (0..n)
                .map(|j| {
                    let p = self.entry(i, j);
                    if p.is_empty() {
                        return "0".to_string();
                    }
                    p.iter()
                        .map(|(e, c)| match e {
                            0 => format!("{c}"),
                            1 => format!("({c})*s"),
                            _ => format!("({c})*s^{e}"),
                        })
                        .collect::<Vec<_>>()
                        .join(" + ")
                })
                .collect();
            rows.push(format!("[{}]", cells.join(", ")));
        }
        write!(f, "[{}]", rows.join(", "))
    }
}

/// φ(f) = diag(f(T^j y)), φ(t) = Σ_{i<l-1} E_{i+1,i} + s E_{0,l-1}.
pub fn quotient_at_orbit(a: &CrossedElement, y: &PeriodicPoint) -> Result<LaurentMatrix, AlgebraError> {
    if a.space().geometry != Geometry::TwoSidedShift {
        return Err(AlgebraError::GeometryMismatch);
    }
    let l = y.period();
    let li = l as i64;
    let mut out = LaurentMatrix::zero(l, a.field());
    for (d, f) in a.terms() {
        for j in 0..li {
            // φ(t^d) e_j = s^{⌊(j+d)/l⌋} e_{(j+d) mod l}
            let r = (j + d).rem_euclid(li);
            let e = (j + d).div_euclid(li);
            let val = f.eval(|i| y.coordinate(i + r));
            poly_add_into(&mut out.entries[(r as usize) * l + j as usize], e, val);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::space::{Clopen, SpaceSpec};

    #[test]
    fn examples() {
        let k = FieldContext::rational();
        let sh = SpaceSpec::binary_shift();
        let ones = PeriodicPoint::new(vec![1]).unwrap();
        let chi0 = CrossedElement::indicator(&Clopen::cylinder(sh, 0, &[0]).unwrap(), &k);
        assert!(quotient_at_orbit(&chi0, &ones).unwrap().is_zero());
        let y = PeriodicPoint::new(vec![0, 1]).unwrap();
        let t = CrossedElement::t_pow(sh, &k, 1);
        let m = quotient_at_orbit(&t, &y).unwrap();
        assert!(m.entry(0, 0).is_empty() && m.entry(1, 1).is_empty());
        assert_eq!(m.entry(0, 1).get(&1), Some(&k.one()));
        assert_eq!(m.entry(1, 0).get(&0), Some(&k.one()));
        let one = CrossedElement::one(sh, &k);
        let y3 = PeriodicPoint::new(vec![0, 0, 1]).unwrap();
        assert_eq!(quotient_at_orbit(&one, &y3).unwrap(), LaurentMatrix::identity(3, &k));
        let tl = t.pow(3);
        let mut s_id = LaurentMatrix::zero(3, &k);
        for i in 0..3 {
            s_id.entries[i * 3 + i].insert(1, k.one());
        }
        assert_eq!(quotient_at_orbit(&tl, &y3).unwrap(), s_id);
    }
}
