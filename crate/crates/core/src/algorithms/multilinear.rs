use std::ops::ControlFlow;

use num_traits::Zero;
use rayon::prelude::*;

use super::{Emitter, EnumerationSink, Enumerator, ErrorBudget, Flow, Output, RunSummary};
use crate::arith::ceil_log2;
use crate::blackbox::{BlackBox, SupportSet};
use crate::poly::Monomial;
use crate::{Error, Result};

/// Depth at which the parallel search hands subtrees to worker threads.
const PARALLEL_SPLIT_DEPTH: usize = 4;

fn node_budget(eps: ErrorBudget, n: usize) -> ErrorBudget {
    // eps / (2^n n)
    eps.tighten(n as u32 + ceil_log2(n as u64))
}

impl Enumerator {
    /// Polynomial-delay enumeration of a multilinear polynomial.
    ///
    /// Depth-first search over nodes `(L1, L2)` where `L2` holds the variables
    /// decided present and `L1 = {i, .., n-1}` those not decided yet. Variable
    /// `i` is first tested absent, then present; a leaf emits `X^L2` with its
    /// coefficient. Monomials come out in lexicographic order of their
    /// characteristic vectors, absent before present.
    pub fn enumerate_multilinear(
        &mut self,
        p: &BlackBox,
        eps: ErrorBudget,
        sink: &mut dyn EnumerationSink,
    ) -> Result<RunSummary> {
        let mut out = Emitter::new(sink, p, self.random_bits());
        if let Some(stripped) = self.start_run(p, &mut out)? {
            let per_node = node_budget(eps, p.vars());
            let root = SupportSet::empty(p.vars());
            let _ = self.search(&stripped, 0, root, per_node, &mut out)?;
        }
        Ok(out.summary(self.random_bits()))
    }

    fn search(
        &mut self,
        p: &BlackBox,
        depth: usize,
        present: SupportSet,
        eps: ErrorBudget,
        out: &mut dyn Output,
    ) -> Result<Flow> {
        let n = p.vars();
        if depth == n {
            // The empty leaf is the constant term, already stripped. With
            // zero variables this is also the untested root.
            if present.is_empty() {
                return Ok(ControlFlow::Continue(()));
            }
            return self.emit_leaf(p, &present, eps, out);
        }
        let undecided = SupportSet::from_indices(n, depth + 1..n);
        if self.node_test(p, &undecided, &present, eps)? {
            if let ControlFlow::Break(()) = self.search(p, depth + 1, present.clone(), eps, out)? {
                return Ok(ControlFlow::Break(()));
            }
        }
        let with = present.with(depth);
        if self.node_test(p, &undecided, &with, eps)? {
            return self.search(p, depth + 1, with, eps, out);
        }
        Ok(ControlFlow::Continue(()))
    }

    fn emit_leaf(
        &mut self,
        p: &BlackBox,
        support: &SupportSet,
        eps: ErrorBudget,
        out: &mut dyn Output,
    ) -> Result<Flow> {
        let none = SupportSet::empty(p.vars());
        let c = self.coefficient_within(p, &none, support, eps)?;
        if c.is_zero() {
            return Err(Error::Inconsistent(format!(
                "leaf {support:?} was reached but its coefficient is zero"
            )));
        }
        out.push(Monomial::multilinear(c, support)?, self.random_bits())
    }

    /// Nodes at depth `target` reachable from `(depth, present)`, in search
    /// order.
    fn frontier(
        &mut self,
        p: &BlackBox,
        depth: usize,
        target: usize,
        present: SupportSet,
        eps: ErrorBudget,
        nodes: &mut Vec<SupportSet>,
    ) -> Result<()> {
        if depth == target {
            nodes.push(present);
            return Ok(());
        }
        let n = p.vars();
        let undecided = SupportSet::from_indices(n, depth + 1..n);
        if self.node_test(p, &undecided, &present, eps)? {
            self.frontier(p, depth + 1, target, present.clone(), eps, nodes)?;
        }
        let with = present.with(depth);
        if self.node_test(p, &undecided, &with, eps)? {
            self.frontier(p, depth + 1, target, with, eps, nodes)?;
        }
        Ok(())
    }

    /// Same output as [`Enumerator::enumerate_multilinear`] but the subtrees
    /// below a fixed depth are searched concurrently, each with its own child
    /// random stream. Results are merged back in search order, so monomials
    /// reach the sink only after every subtree has finished and the per-output
    /// call counts do not measure delay.
    pub fn enumerate_multilinear_parallel(
        &mut self,
        p: &BlackBox,
        eps: ErrorBudget,
        sink: &mut dyn EnumerationSink,
    ) -> Result<RunSummary> {
        let mut out = Emitter::new(sink, p, self.random_bits());
        let Some(stripped) = self.start_run(p, &mut out)? else {
            return Ok(out.summary(self.random_bits()));
        };
        let n = p.vars();
        let per_node = node_budget(eps, n);
        let split = PARALLEL_SPLIT_DEPTH.min(n);
        let mut nodes = Vec::new();
        self.frontier(
            &stripped,
            0,
            split,
            SupportSet::empty(n),
            per_node,
            &mut nodes,
        )?;

        let (mode, variant) = (self.mode, self.variant);
        let children: Vec<_> = (0..nodes.len()).map(|k| self.rng.split(k as u64)).collect();
        let found: Vec<Result<(Vec<Monomial>, u64)>> = nodes
            .into_par_iter()
            .zip(children)
            .map(|(present, rng)| {
                let mut worker = Enumerator::with_stream(mode, variant, rng);
                let mut local = Vec::new();
                let _ = worker.search(&stripped, split, present, per_node, &mut local)?;
                Ok((local, worker.random_bits()))
            })
            .collect();

        let mut bits = self.random_bits();
        for subtree in found {
            let (monomials, used) = subtree?;
            bits += used;
            for m in monomials {
                if out.push(m, bits)?.is_break() {
                    return Ok(out.summary(bits));
                }
            }
        }
        Ok(out.summary(bits))
    }
}
