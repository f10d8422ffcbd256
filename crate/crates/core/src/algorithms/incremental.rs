use std::ops::ControlFlow;

use super::{Emitter, EnumerationSink, Enumerator, ErrorBudget, Output, RunSummary};
use crate::blackbox::BlackBox;
use crate::poly::{Monomial, SparsePolynomial};
use crate::{Error, Result};

pub(crate) type Finder = fn(&mut Enumerator, &BlackBox, ErrorBudget) -> Result<Option<Monomial>>;

impl Enumerator {
    /// Incremental enumeration for constant-free polynomials whose monomials
    /// have pairwise distinct supports: while `P - Q` tests nonzero, find one
    /// of its monomials, emit it and add it to `Q`. Every test runs at
    /// `eps / 2^(n+1)`.
    pub fn enumerate_incremental(
        &mut self,
        p: &BlackBox,
        eps: ErrorBudget,
        sink: &mut dyn EnumerationSink,
    ) -> Result<RunSummary> {
        let per_step = eps.tighten(p.vars() as u32 + 1);
        self.run_incremental(p, per_step, Enumerator::find_monomial, sink)
    }

    pub(crate) fn run_incremental(
        &mut self,
        p: &BlackBox,
        per_step: ErrorBudget,
        finder: Finder,
        sink: &mut dyn EnumerationSink,
    ) -> Result<RunSummary> {
        let mut out = Emitter::new(sink, p, self.random_bits());
        if let Some(stripped) = self.start_run(p, &mut out)? {
            self.incremental_loop(&stripped, per_step, finder, &mut out)?;
        }
        Ok(out.summary(self.random_bits()))
    }

    fn incremental_loop(
        &mut self,
        p: &BlackBox,
        per_step: ErrorBudget,
        finder: Finder,
        out: &mut dyn Output,
    ) -> Result<()> {
        let mut found = SparsePolynomial::zero(p.vars());
        loop {
            let residual = p.subtract(&found)?;
            if !self.not_zero(&residual, per_step)? {
                return Ok(());
            }
            // A `None` here means the two zero tests disagreed; test again.
            let Some(m) = finder(self, &residual, per_step)? else {
                continue;
            };
            if found.contains_exponents(&m.exponents) {
                return Err(Error::Inconsistent(format!(
                    "residual still contains the emitted exponents of {m}"
                )));
            }
            found.add_monomial(&m)?;
            if let ControlFlow::Break(()) = out.push(m, self.random_bits())? {
                return Ok(());
            }
        }
    }
}
