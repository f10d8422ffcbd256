use num_traits::{One, Signed, Zero};

use super::{Enumerator, ErrorBudget};
use crate::arith::{BigInt, Rational};
use crate::blackbox::{BlackBox, SupportSet};
use crate::poly::Monomial;
use crate::{Error, Result};

/// Reads off `lambda X^e` from a box whose restriction to `support` is that
/// single monomial: one call at the all-ones point gives `lambda`, one call
/// per `i` in `support` with `X_i = 2` gives `lambda 2^(e_i)`.
pub fn recover_monomial(p: &BlackBox, support: &SupportSet) -> Result<Monomial> {
    let n = p.vars();
    let restricted = p.restrict(support);
    let mut x: Vec<BigInt> = (0..n)
        .map(|i| {
            if support.contains(i) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    let lambda = restricted.evaluate(&x)?;
    if lambda.is_zero() {
        return Err(Error::Inconsistent(format!(
            "restriction to {support:?} vanishes at the all-ones point"
        )));
    }
    let mut exponents = vec![0u32; n];
    for i in support.iter() {
        x[i] = BigInt::from(2u32);
        let ratio = restricted.evaluate(&x)? / &lambda;
        x[i] = BigInt::one();
        exponents[i] = exact_log2(&ratio).filter(|&e| e > 0).ok_or_else(|| {
            Error::Inconsistent(format!(
                "restriction to {support:?} is not a single monomial (ratio {ratio} at X{})",
                i + 1
            ))
        })?;
    }
    Monomial::new(lambda, exponents)
}

fn exact_log2(r: &Rational) -> Option<u32> {
    if !r.is_integer() || !r.is_positive() {
        return None;
    }
    let n = r.numer();
    let tz = n.trailing_zeros()?;
    (*n == BigInt::one() << tz).then_some(tz as u32)
}

impl Enumerator {
    /// Greedy support shrinking: starting from all variables, drop `i`
    /// whenever the restriction stays nonzero. Returns `None` when the first
    /// test already says zero.
    pub(crate) fn minimal_support(
        &mut self,
        p: &BlackBox,
        eps: ErrorBudget,
    ) -> Result<Option<SupportSet>> {
        let n = p.vars();
        let per_test = eps.split(n as u64 + 1);
        if !self.not_zero(p, per_test)? {
            return Ok(None);
        }
        let mut support = SupportSet::full(n);
        for i in 0..n {
            let smaller = support.without(i);
            if self.not_zero(&p.restrict(&smaller), per_test)? {
                support = smaller;
            }
        }
        Ok(Some(support))
    }

    /// A monomial of a constant-free polynomial with distinct supports, or
    /// `None` if the polynomial looks like zero.
    pub fn find_monomial(&mut self, p: &BlackBox, eps: ErrorBudget) -> Result<Option<Monomial>> {
        match self.minimal_support(p, eps)? {
            None => Ok(None),
            Some(support) => recover_monomial(p, &support).map(Some),
        }
    }
}
