use std::collections::HashSet;
use std::ops::ControlFlow;

use super::{Algorithm, Enumerator, ErrorBudget, OutputEvent};
use crate::blackbox::BlackBox;
use crate::poly::{Monomial, SparsePolynomial};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnotherSolution {
    Found(Monomial),
    /// The enumeration ended without leaving the known set.
    Exhausted,
}

impl Enumerator {
    /// A monomial of `p` whose exponent vector is not among `known`.
    ///
    /// Runs `algorithm` until `|known| + 1` monomials have come out or the
    /// enumeration ends, and returns the first one outside `known`.
    pub fn another_solution(
        &mut self,
        algorithm: Algorithm,
        p: &BlackBox,
        eps: ErrorBudget,
        known: &SparsePolynomial,
    ) -> Result<AnotherSolution> {
        let known_exps: HashSet<Vec<u32>> = known.monomials().map(|m| m.exponents).collect();
        let limit = known.len() + 1;
        let mut fresh = None;
        let mut sink = |event: &OutputEvent| {
            if !known_exps.contains(&event.monomial.exponents) {
                fresh = Some(event.monomial.clone());
                return ControlFlow::Break(());
            }
            if event.index >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        };
        self.enumerate(algorithm, p, eps, &mut sink)?;
        Ok(fresh.map_or(AnotherSolution::Exhausted, AnotherSolution::Found))
    }
}
