use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{FieldElement, FieldExt, FieldKind};

use super::ExactMatrix;

pub(super) fn rank(m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match m.field.kind() {
        FieldKind::Rational => {
            let mut data = Vec::with_capacity(m.rows * m.cols);
            for i in 0..m.rows {
                let row: Vec<_> = (0..m.cols).map(|j| m.get(i, j).to_rational().unwrap()).collect();
                let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
                data.extend(row.iter().map(|q| q.numer() * (&l / q.denom())));
            }
            rank_integer(m.rows, m.cols, data)
        }
        FieldKind::Cyclotomic(_) => bareiss_field(m),
        FieldKind::PrimeField(_) | FieldKind::FrobeniusField { .. } => gauss_field(m),
    }
}

/// Rank of an integer matrix given row-major.
pub fn rank_integer(rows: usize, cols: usize, data: Vec<BigInt>) -> usize {
    assert_eq!(data.len(), rows * cols);
    let bound = data.iter().map(|x| x.abs()).max().unwrap_or_default();
    if bound.bits() <= 62 {
        let small: Vec<i128> = data.iter().map(|x| x.to_i128().unwrap()).collect();
        if let Some(r) = bareiss_i128(rows, cols, small) {
            return r;
        }
    }
    bareiss_big(rows, cols, data)
}

fn bareiss_i128(rows: usize, cols: usize, mut a: Vec<i128>) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c];
        for i in r + 1..rows {
            let lead = a[i * cols + c];
            for j in c + 1..cols {
                let x = piv.checked_mul(a[i * cols + j])?;
                let y = lead.checked_mul(a[r * cols + j])?;
                a[i * cols + j] = x.checked_sub(y)? / prev;
            }
            a[i * cols + c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

fn bareiss_big(rows: usize, cols: usize, mut a: Vec<BigInt>) -> usize {
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = (&piv * &a[i * cols + j] - &lead * &a[r * cols + j]) / &prev;
                a[i * cols + j] = v;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

fn bareiss_field(m: &ExactMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<FieldElement> = m.data().to_vec();
    let mut prev = m.field.one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c].clone();
        let prev_inv = prev.inv().expect("pivot is nonzero");
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            if lead.is_zero() {
                if !prev.is_one() || !piv.is_one() {
                    for j in c + 1..cols {
                        a[i * cols + j] = &(&piv * &a[i * cols + j]) * &prev_inv;
                    }
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &(&piv * &a[i * cols + j]) - &(&lead * &a[r * cols + j]);
                a[i * cols + j] = &v * &prev_inv;
            }
            a[i * cols + c] = m.field.zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

fn gauss_field(m: &ExactMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<FieldElement> = m.data().to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[r * cols + c].inv().expect("pivot is nonzero");
        for i in r + 1..rows {
            if a[i * cols + c].is_zero() {
                continue;
            }
            let f = &a[i * cols + c] * &inv;
            for j in c + 1..cols {
                let v = &a[i * cols + j] - &(&f * &a[r * cols + j]);
                a[i * cols + j] = v;
            }
            a[i * cols + c] = m.field.zero();
        }
        r += 1;
    }
    r
}
