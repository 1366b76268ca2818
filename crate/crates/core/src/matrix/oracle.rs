//! Textbook row reduction with full division, used to cross-check [`ExactMatrix::rank`].

use crate::field::FieldElement;

use super::ExactMatrix;

pub fn naive_rank(m: &ExactMatrix) -> usize {
    let mut a: Vec<Vec<FieldElement>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][c].inv().unwrap();
        let pivot_row: Vec<FieldElement> = a[rank].iter().map(|x| x * &inv).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        a[rank] = pivot_row;
        rank += 1;
    }
    rank
}
