use num_traits::Zero;

use super::{ledger, EnumerationSink, Enumerator, ErrorBudget, RunSummary};
use crate::blackbox::{BlackBox, SupportSet};
use crate::poly::Monomial;
use crate::{Error, Result};

impl Enumerator {
    /// A monomial of a constant-free polynomial of per-variable degree at
    /// most two.
    ///
    /// A support-minimal `L` gives `P_L = X^L Q` with `Q` multilinear. The
    /// quotient is evaluated as `P_L(x) / x^L` and only ever at points whose
    /// `L`-coordinates are positive: each growth test uses
    /// `L1 = L \ (L' ∪ {i})`, `L2 = L' ∪ {i}`, and the coefficient of the
    /// maximal `L'` is read with `L \ L'` set to 1.
    pub fn find_monomial_deg2(
        &mut self,
        p: &BlackBox,
        eps: ErrorBudget,
    ) -> Result<Option<Monomial>> {
        let Some(support) = self.minimal_support(p, eps)? else {
            return Ok(None);
        };
        let quotient = p.divide_by_support(&support);
        let per_test = eps.split(p.vars() as u64);

        let mut grown = SupportSet::empty(p.vars());
        for i in support.iter() {
            let candidate = grown.with(i);
            let rest = support.difference(&candidate);
            if self.node_test(&quotient, &rest, &candidate, per_test)? {
                grown = candidate;
            }
        }

        let ones = support.difference(&grown);
        let c = self.coefficient_within(&quotient, &ones, &grown, per_test)?;
        if c.is_zero() {
            return Err(Error::Inconsistent(format!(
                "quotient by X^{support:?} has no monomial of support {grown:?}"
            )));
        }
        let exponents = (0..p.vars())
            .map(|i| u32::from(support.contains(i)) + u32::from(grown.contains(i)))
            .collect();
        Monomial::new(c, exponents).map(Some)
    }

    /// Incremental enumeration driven by [`Enumerator::find_monomial_deg2`].
    /// Each step runs at `eps / (2 * 3^n)`, the number of possible monomials.
    pub fn enumerate_deg2(
        &mut self,
        p: &BlackBox,
        eps: ErrorBudget,
        sink: &mut dyn EnumerationSink,
    ) -> Result<RunSummary> {
        if p.var_degree().is_some_and(|d| d > 2) {
            return Err(Error::Config(format!(
                "degree-two enumeration on a box of per-variable degree {}",
                p.var_degree().unwrap_or_default()
            )));
        }
        let per_step = eps.tighten(ledger::degree2_budget_extra(p.vars()));
        self.run_incremental(p, per_step, Enumerator::find_monomial_deg2, sink)
    }
}
