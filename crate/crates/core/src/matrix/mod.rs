//! Dense exact matrices over a field and their ranks.

mod bareiss;
pub mod oracle;

use std::fmt;

use rand::Rng;

use crate::field::{Field, FieldElement, FieldExt};

pub use bareiss::rank_integer;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: &Field) -> Self {
        ExactMatrix {
            rows,
            cols,
            field: field.clone(),
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: &Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: &Field, f: impl Fn(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            field: field.clone(),
            data,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, field: &Field, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Self::from_fn(rows, cols, field, |i, j| field.from_i64(vals[i * cols + j]))
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, field: &Field, rng: &mut R, density: f64) -> Self {
        Self::from_fn(rows, cols, field, |_, _| field.zero()).map_entries(|_| {
            if rng.gen_bool(density) {
                field.random(rng, 4)
            } else {
                field.zero()
            }
        })
    }

    fn map_entries(mut self, mut f: impl FnMut(&FieldElement) -> FieldElement) -> Self {
        for x in self.data.iter_mut() {
            *x = f(x);
        }
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.clone().map_entries(|x| x * c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols, &self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut r = Self::identity(self.rows, &self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.field, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.field, |i, j| self.get(j, i).clone())
    }

    pub fn block_diag(blocks: &[ExactMatrix], field: &Field) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c, field);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, &self.field, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Exact rank by fraction-free elimination (plain elimination over finite fields).
    pub fn rank(&self) -> usize {
        bareiss::rank(self)
    }

    pub(crate) fn data(&self) -> &[FieldElement] {
        &self.data
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Rank of a matrix, the free-function form used by the rank engine.
pub fn matrix_rank(m: &ExactMatrix) -> usize {
    m.rank()
}
