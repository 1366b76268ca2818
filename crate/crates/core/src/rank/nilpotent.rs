use super::{ExactMatrix, RankError};

/// Strictly lower triangular with a_{ij} = 0 whenever i ≤ n−r and j ≥ r+1 (1-based).
pub fn nilpotency_pattern_holds(a: &ExactMatrix, r: usize) -> Result<(), String> {
    let n = a.rows();
    if a.cols() != n {
        return Err(format!("{}×{} is not square", n, a.cols()));
    }
    if r == 0 {
        return Err("r must be positive".into());
    }
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j).is_zero() {
                continue;
            }
            if j >= i {
                return Err(format!("entry ({}, {}) on or above the diagonal", i + 1, j + 1));
            }
            if i + 1 + r <= n && j >= r {
                return Err(format!("entry ({}, {}) inside the zero block", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// Checks A^{2r+1} = 0 by exact powering, after validating the pattern.
pub fn nilpotency_check(a: &ExactMatrix, r: usize) -> Result<bool, RankError> {
    nilpotency_pattern_holds(a, r).map_err(RankError::PatternViolated)?;
    let mut p = a.clone();
    for _ in 0..2 * r {
        if p.is_zero() {
            return Ok(true);
        }
        p = p.mul(a);
    }
    Ok(p.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldContext, FieldExt};

    #[test]
    fn examples() {
        let q = FieldContext::rational();
        assert!(nilpotency_check(&ExactMatrix::zeros(4, 4, &q), 2).unwrap());
        let n = 6;
        let shift = ExactMatrix::from_fn(n, n, &q, |i, j| if i == j + 1 { q.one() } else { q.zero() });
        assert!(nilpotency_check(&shift, n - 1).unwrap());
        assert!(matches!(
            nilpotency_check(&shift, 1),
            Err(RankError::PatternViolated(_))
        ));
        assert!(nilpotency_check(&ExactMatrix::identity(3, &q), 3).is_err());
    }
}
