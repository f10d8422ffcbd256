//! Zero tests, monomial finders and enumerators.
//!
//! All procedures run through an [`Enumerator`], which owns the random stream
//! and the configuration (randomized or monotone-deterministic, interpolation
//! or one-call zero tests). Enumerators report each monomial to an
//! [`EnumerationSink`] the moment it is found.

mod amplify;
mod another;
mod degree2;
mod find;
mod incremental;
pub mod ledger;
mod multilinear;

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_log2, RandomStream};
use crate::blackbox::{BlackBox, OracleStats};
use crate::poly::{Monomial, SparsePolynomial};
use crate::{Error, Result};

pub use amplify::amplified_enumerate;
pub use another::AnotherSolution;
pub use find::recover_monomial;
pub use zero_test::coefficient;

/// Failure probability `2^-b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ErrorBudget(pub u32);

impl ErrorBudget {
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Budget for one of `m` sub-procedures sharing this one: `eps / m`,
    /// rounded down to a power of two.
    pub fn split(self, m: u64) -> ErrorBudget {
        ErrorBudget(self.0 + ceil_log2(m))
    }

    /// `eps / 2^k`.
    pub fn tighten(self, k: u32) -> ErrorBudget {
        ErrorBudget(self.0 + k)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[default]
    Randomized,
    /// Valid only for boxes flagged monotone: every zero test is a single
    /// evaluation at positive points and no randomness is drawn.
    MonotoneDeterministic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroTestVariant {
    /// Univariate interpolation on small points.
    #[default]
    Interpolation,
    /// One call on exponentially large points; needs a coefficient bit bound.
    OneCall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    /// Incremental enumeration for polynomials with distinct supports.
    Incremental,
    /// Polynomial-delay depth-first search for multilinear polynomials.
    Multilinear,
    /// Incremental enumeration for per-variable degree at most two.
    Degree2,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Incremental => "incremental",
            Algorithm::Multilinear => "multilinear",
            Algorithm::Degree2 => "degree2",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "incremental" => Ok(Algorithm::Incremental),
            "multilinear" => Ok(Algorithm::Multilinear),
            "degree2" => Ok(Algorithm::Degree2),
            other => Err(Error::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorConfig {
    pub mode: Mode,
    pub variant: ZeroTestVariant,
    pub seed: u64,
}

/// One emitted monomial together with the accounting at the moment of output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputEvent {
    /// 1-based position in the output stream.
    pub index: usize,
    pub monomial: Monomial,
    /// Oracle calls since the previous output (or since the run started).
    pub calls_since_previous: u64,
    /// Oracle calls since the run started.
    pub calls_total: u64,
    /// Random bits drawn since the run started.
    pub random_bits: u64,
}

pub trait EnumerationSink {
    /// Receives the next monomial. Returning `Break` stops the run.
    fn emit(&mut self, event: &OutputEvent) -> ControlFlow<()>;
}

impl<F: FnMut(&OutputEvent) -> ControlFlow<()>> EnumerationSink for F {
    fn emit(&mut self, event: &OutputEvent) -> ControlFlow<()> {
        self(event)
    }
}

/// Sink that keeps every event.
#[derive(Clone, Debug, Default)]
pub struct Collector {
    pub events: Vec<OutputEvent>,
}

impl Collector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.events.iter().map(|e| &e.monomial)
    }

    pub fn polynomial(&self, vars: usize) -> Result<SparsePolynomial> {
        let mut p = SparsePolynomial::zero(vars);
        for m in self.monomials() {
            p.add_monomial(m)?;
        }
        Ok(p)
    }
}

impl EnumerationSink for Collector {
    fn emit(&mut self, event: &OutputEvent) -> ControlFlow<()> {
        self.events.push(event.clone());
        ControlFlow::Continue(())
    }
}

/// What a finished (or stopped) run reports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub outputs: usize,
    /// False when the sink stopped the run early.
    pub completed: bool,
    pub total_calls: u64,
    /// Calls made after the last output (the final emptiness check).
    pub tail_calls: u64,
    pub random_bits: u64,
}

type Flow = ControlFlow<()>;

/// Destination of the monomials found inside a run.
trait Output {
    fn push(&mut self, m: Monomial, random_bits: u64) -> Result<Flow>;
}

/// Forwards to the user's sink; rejects repeated exponent vectors.
struct Emitter<'s> {
    sink: &'s mut dyn EnumerationSink,
    seen: HashSet<Vec<u32>>,
    stats: Arc<OracleStats>,
    start_calls: u64,
    last_calls: u64,
    start_bits: u64,
    stopped: bool,
}

impl<'s> Emitter<'s> {
    fn new(sink: &'s mut dyn EnumerationSink, p: &BlackBox, start_bits: u64) -> Self {
        let stats = Arc::clone(p.stats());
        let now = stats.total_calls();
        Self {
            sink,
            seen: HashSet::new(),
            stats,
            start_calls: now,
            last_calls: now,
            start_bits,
            stopped: false,
        }
    }

    fn summary(&self, random_bits: u64) -> RunSummary {
        let now = self.stats.total_calls();
        RunSummary {
            outputs: self.seen.len(),
            completed: !self.stopped,
            total_calls: now - self.start_calls,
            tail_calls: now - self.last_calls,
            random_bits: random_bits - self.start_bits,
        }
    }
}

impl Output for Emitter<'_> {
    fn push(&mut self, m: Monomial, random_bits: u64) -> Result<Flow> {
        if !self.seen.insert(m.exponents.clone()) {
            return Err(Error::Repetition(m.to_string()));
        }
        self.stats.mark_output();
        let now = self.stats.total_calls();
        let event = OutputEvent {
            index: self.seen.len(),
            monomial: m,
            calls_since_previous: now - self.last_calls,
            calls_total: now - self.start_calls,
            random_bits: random_bits - self.start_bits,
        };
        self.last_calls = now;
        let flow = self.sink.emit(&event);
        if flow.is_break() {
            self.stopped = true;
        }
        Ok(flow)
    }
}

impl Output for Vec<Monomial> {
    fn push(&mut self, m: Monomial, _random_bits: u64) -> Result<Flow> {
        self.push(m);
        Ok(ControlFlow::Continue(()))
    }
}

/// Runs the procedures of this module with a fixed configuration and an
/// owned random stream.
#[derive(Clone, Debug)]
pub struct Enumerator {
    mode: Mode,
    variant: ZeroTestVariant,
    rng: RandomStream,
}

impl Enumerator {
    pub fn new(config: &EnumeratorConfig) -> Self {
        Self::with_stream(config.mode, config.variant, RandomStream::new(config.seed))
    }

    pub fn with_stream(mode: Mode, variant: ZeroTestVariant, rng: RandomStream) -> Self {
        Self { mode, variant, rng }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn variant(&self) -> ZeroTestVariant {
        self.variant
    }

    pub fn stream(&self) -> &RandomStream {
        &self.rng
    }

    pub fn random_bits(&self) -> u64 {
        self.rng.bits_consumed()
    }

    fn check_mode(&self, p: &BlackBox) -> Result<()> {
        if self.mode == Mode::MonotoneDeterministic && !p.is_monotone() {
            return Err(Error::Config(
                "monotone-deterministic mode needs a box flagged monotone".into(),
            ));
        }
        Ok(())
    }

    /// Runs `algorithm` on `p`, emitting every monomial (constant term first,
    /// when nonzero) into `sink`.
    pub fn enumerate(
        &mut self,
        algorithm: Algorithm,
        p: &BlackBox,
        eps: ErrorBudget,
        sink: &mut dyn EnumerationSink,
    ) -> Result<RunSummary> {
        match algorithm {
            Algorithm::Incremental => self.enumerate_incremental(p, eps, sink),
            Algorithm::Multilinear => self.enumerate_multilinear(p, eps, sink),
            Algorithm::Degree2 => self.enumerate_deg2(p, eps, sink),
        }
    }

    /// Strips the constant term and emits it when nonzero.
    fn start_run(&mut self, p: &BlackBox, out: &mut Emitter<'_>) -> Result<Option<BlackBox>> {
        self.check_mode(p)?;
        let (stripped, constant) = p.strip_constant()?;
        if !num_traits::Zero::is_zero(&constant) {
            let m = Monomial::new(constant, vec![0; p.vars()])?;
            if out.push(m, self.random_bits())?.is_break() {
                return Ok(None);
            }
        }
        Ok(Some(stripped))
    }
}
