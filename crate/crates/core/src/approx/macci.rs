use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Fib_m(k): Fib_m(0) = 0, Fib_m(1) = 1, and each later value is the sum of the
/// (at most) m values before it.
pub fn macci(m: usize, k: usize) -> BigUint {
    macci_sequence(m, k).pop().unwrap()
}

/// Fib_m(0), …, Fib_m(k).
pub fn macci_sequence(m: usize, k: usize) -> Vec<BigUint> {
    assert!(m >= 1, "m-acci numbers need m ≥ 1");
    let mut seq = vec![BigUint::zero()];
    if k >= 1 {
        seq.push(BigUint::one());
    }
    // running window sum of the last m values
    let mut window = BigUint::one();
    for i in 2..=k {
        let next = window.clone();
        window += &next;
        if i >= m {
            window -= &seq[i - m];
        }
        seq.push(next);
    }
    seq
}
