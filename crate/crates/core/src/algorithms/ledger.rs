//! Worst-case oracle-call counts, exact by construction of the procedures.
//!
//! `n` is the number of variables, `d` the total-degree bound and `b` the
//! error exponent passed to the enumerator.

use super::{Algorithm, ErrorBudget};
use crate::arith::{ceil_log2, ceil_log2_big, BigInt};

fn log2_up(m: u64) -> u64 {
    u64::from(ceil_log2(m))
}

/// `find_monomial(P, 2^-b)`: `n + 1` zero tests of `b + ceil(log2(n + 1))`
/// calls, then `|L| + 1 <= n + 1` recovery calls.
pub fn find_monomial_bound(n: usize, b: u32) -> u64 {
    let n = n as u64;
    (n + 1) * (u64::from(b) + log2_up(n + 1)) + n + 1
}

/// Between two outputs of the incremental enumerator:
/// `(n + 2)(b + n + 1 + ceil(log2(n + 1))) + n + 1`.
pub fn incremental_gap_bound(n: usize, b: u32) -> u64 {
    let n = n as u64;
    (n + 2) * (u64::from(b) + n + 1 + log2_up(n + 1)) + n + 1
}

/// Between two outputs of the multilinear depth-first search:
/// `2n (b + n + ceil(log2 n)) (D + 1) + (D + 1)`.
pub fn multilinear_gap_bound(n: usize, d: u32, b: u32) -> u64 {
    let n = n as u64;
    let d = u64::from(d);
    2 * n * (u64::from(b) + n + log2_up(n)) * (d + 1) + (d + 1)
}

/// Extra error exponent of the degree-two enumerator: `ceil(log2(2 * 3^n))`,
/// since a polynomial of per-variable degree two has at most `3^n` monomials.
pub fn degree2_budget_extra(n: usize) -> u32 {
    let bound = BigInt::from(2u32) * num_traits::pow(BigInt::from(3u32), n);
    ceil_log2_big(&bound) as u32
}

/// Between two outputs of the degree-two enumerator: the emptiness test,
/// `n + 1` shrinking tests, at most `n` growth tests of at most `n + 1`
/// calls per repetition, and `n + 1` calls for the coefficient.
pub fn degree2_gap_bound(n: usize, b: u32) -> u64 {
    let b1 = u64::from(b) + u64::from(degree2_budget_extra(n));
    let n = n as u64;
    let shrink = b1 + log2_up(n + 1);
    let grow = b1 + log2_up(n);
    b1 + (n + 1) * shrink + n * (n + 1) * grow + n + 1
}

pub fn gap_bound(algorithm: Algorithm, n: usize, d: u32, eps: ErrorBudget) -> u64 {
    match algorithm {
        Algorithm::Incremental => incremental_gap_bound(n, eps.bits()),
        Algorithm::Multilinear => multilinear_gap_bound(n, d, eps.bits()),
        Algorithm::Degree2 => degree2_gap_bound(n, eps.bits()),
    }
}
