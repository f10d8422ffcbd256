//! Exact arithmetic support.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; what lives
//! here is the interpolation the algorithms rely on and the random source.

mod interp;
mod random;

pub use interp::{interpolate_univariate, leading_coefficient_if_degree, UniPoly};
pub use num_bigint::BigInt;
pub use random::RandomStream;

/// Reduced rational with positive denominator.
pub type Rational = num_rational::BigRational;

/// Smallest `k` with `2^k >= m`. `ceil_log2(0)` and `ceil_log2(1)` are 0.
pub fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

/// Smallest `k` with `2^k >= m` for arbitrary-size `m`.
pub fn ceil_log2_big(m: &BigInt) -> u64 {
    use num_traits::{One, Signed};
    if m.is_negative() || *m <= BigInt::one() {
        return 0;
    }
    let below: BigInt = m - 1u32;
    below.bits()
}

pub(crate) fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1u32), |acc, i| acc * BigInt::from(i))
}
