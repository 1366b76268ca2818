use std::collections::HashMap;
use std::sync::Arc;

use crate::matrix::ExactMatrix;

use super::{ApproxError, BlockElement, ComponentSet};

/// j_n: the block at each W' of the finer set is assembled block-diagonally from x along the
/// segments cut out by the return times of W' to the coarser E.
pub fn refine_embedding(
    coarse: &Arc<ComponentSet>,
    fine: &Arc<ComponentSet>,
    x: &BlockElement,
) -> Result<BlockElement, ApproxError> {
    let e = coarse.scheme().e();
    if !coarse.scheme().is_refined_by(fine.scheme())? {
        return Err(ApproxError::SchemesNotNested);
    }
    let mut by_len: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, w) in coarse.components().iter().enumerate() {
        by_len.entry(w.length).or_default().push(i);
    }
    let k = x.size();
    let field = x.field().clone();
    let mut blocks = Vec::with_capacity(fine.len());
    for wp in fine.components() {
        let mut returns = Vec::new();
        for r in 0..wp.length {
            let tr = wp.clopen.image(r as i64);
            if e.contains(&tr)? {
                returns.push(r);
            } else if !tr.is_disjoint(e)? {
                return Err(ApproxError::SchemesNotNested);
            }
        }
        if returns.first() != Some(&0) {
            return Err(ApproxError::SchemesNotNested);
        }
        returns.push(wp.length);
        let l = wp.length;
        let mut out = ExactMatrix::zeros(k * l, k * l, &field);
        for seg in returns.windows(2) {
            let (r, len) = (seg[0], seg[1] - seg[0]);
            let tr = wp.clopen.image(r as i64);
            let mut hit = None;
            for &i in by_len.get(&len).map(|v| v.as_slice()).unwrap_or(&[]) {
                if coarse.components()[i].clopen.contains(&tr)? {
                    hit = Some(i);
                    break;
                }
            }
            let Some(i) = hit else {
                return Err(ApproxError::SegmentNotFound { length: len });
            };
            let b = x.block(i);
            for p in 0..k {
                for q in 0..k {
                    for a in 0..len {
                        for c in 0..len {
                            out.set(p * l + r + a, q * l + r + c, b.get(p * len + a, q * len + c).clone());
                        }
                    }
                }
            }
        }
        blocks.push(out);
    }
    BlockElement::new(fine.clone(), k, &field, blocks)
}
