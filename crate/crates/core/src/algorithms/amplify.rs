use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Condvar, Mutex};
use std::thread;

use super::{
    ledger, Algorithm, EnumerationSink, Enumerator, EnumeratorConfig, ErrorBudget, OutputEvent,
    RunSummary,
};
use crate::arith::RandomStream;
use crate::blackbox::BlackBox;
use crate::poly::Monomial;
use crate::{Error, Result};

#[derive(Default)]
struct GateState {
    tokens: u64,
    parked: bool,
    done: bool,
    cancelled: bool,
}

/// Per-run call allowance. A run blocks inside the oracle once its tokens
/// are spent, until the scheduler grants more or cancels it.
#[derive(Default)]
struct Gate {
    state: Mutex<GateState>,
    cv: Condvar,
}

impl Gate {
    fn acquire(&self) -> Result<()> {
        let mut s = self.state.lock().unwrap();
        loop {
            if s.cancelled {
                return Err(Error::Cancelled);
            }
            if s.tokens > 0 {
                s.tokens -= 1;
                return Ok(());
            }
            s.parked = true;
            self.cv.notify_all();
            s = self.cv.wait(s).unwrap();
            s.parked = false;
        }
    }

    fn grant(&self, n: u64) {
        let mut s = self.state.lock().unwrap();
        s.tokens += n;
        self.cv.notify_all();
    }

    /// Blocks until the run has spent its tokens or finished; returns whether
    /// it finished.
    fn settle(&self) -> bool {
        let mut s = self.state.lock().unwrap();
        while !(s.done || (s.parked && s.tokens == 0)) {
            s = self.cv.wait(s).unwrap();
        }
        s.done
    }

    fn finish(&self) {
        let mut s = self.state.lock().unwrap();
        s.done = true;
        self.cv.notify_all();
    }

    fn cancel(&self) {
        let mut s = self.state.lock().unwrap();
        s.cancelled = true;
        self.cv.notify_all();
    }
}

struct Run {
    gate: Arc<Gate>,
    found: Arc<Mutex<Vec<Monomial>>>,
    bits: Arc<AtomicU64>,
    cursor: usize,
    done: bool,
}

/// Error amplification: `k` independent runs of `algorithm` (run `r` draws
/// from child stream `r` of the configured seed) advance in lock step. Each
/// phase lets every unfinished run make another per-gap bound's worth of
/// oracle calls, then emits one monomial not yet emitted by any run. The
/// enumeration stops at the first phase that yields nothing new, or once all
/// runs have finished and their outputs are flushed.
///
/// Runs that abort with an error simply stop contributing. Reported random
/// bits are those of each run as of its latest output.
pub fn amplified_enumerate(
    algorithm: Algorithm,
    p: &BlackBox,
    eps_per_run: ErrorBudget,
    k: usize,
    config: &EnumeratorConfig,
    sink: &mut dyn EnumerationSink,
) -> Result<RunSummary> {
    if k == 0 {
        return Err(Error::Config("amplification needs at least one run".into()));
    }
    let quantum = ledger::gap_bound(algorithm, p.vars(), p.total_degree(), eps_per_run);
    let root = RandomStream::new(config.seed);
    let stats = Arc::clone(p.stats());
    let start_calls = stats.total_calls();

    let mut runs: Vec<Run> = (0..k)
        .map(|_| Run {
            gate: Arc::new(Gate::default()),
            found: Arc::default(),
            bits: Arc::default(),
            cursor: 0,
            done: false,
        })
        .collect();

    thread::scope(|scope| {
        for (r, run) in runs.iter().enumerate() {
            let gate = Arc::clone(&run.gate);
            let found = Arc::clone(&run.found);
            let bits = Arc::clone(&run.bits);
            let gate_for_box = Arc::clone(&gate);
            let boxed = p.gated(move || gate_for_box.acquire());
            let rng = root.split(r as u64);
            let (mode, variant) = (config.mode, config.variant);
            scope.spawn(move || {
                let mut e = Enumerator::with_stream(mode, variant, rng);
                let mut run_sink = |event: &OutputEvent| {
                    bits.store(event.random_bits, Ordering::SeqCst);
                    found.lock().unwrap().push(event.monomial.clone());
                    ControlFlow::Continue(())
                };
                // Errors, cancellation included, end this run only.
                let _ = e.enumerate(algorithm, &boxed, eps_per_run, &mut run_sink);
                gate.finish();
            });
        }

        let result = schedule(&mut runs, quantum, sink, &stats, start_calls);
        for run in &runs {
            run.gate.cancel();
        }
        result
    })
}

fn schedule(
    runs: &mut [Run],
    quantum: u64,
    sink: &mut dyn EnumerationSink,
    stats: &Arc<crate::blackbox::OracleStats>,
    start_calls: u64,
) -> Result<RunSummary> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut pending: VecDeque<Monomial> = VecDeque::new();
    let mut emitted = 0usize;
    let mut last_calls = start_calls;
    let mut stopped = false;

    let mut emit = |m: Monomial, runs: &[Run]| {
        emitted += 1;
        stats.mark_output();
        let now = stats.total_calls();
        let event = OutputEvent {
            index: emitted,
            monomial: m,
            calls_since_previous: now - last_calls,
            calls_total: now - start_calls,
            random_bits: runs.iter().map(|r| r.bits.load(Ordering::SeqCst)).sum(),
        };
        last_calls = now;
        sink.emit(&event)
    };

    let summary = |emitted: usize, completed: bool, last_calls: u64, runs: &[Run]| {
        let now = stats.total_calls();
        RunSummary {
            outputs: emitted,
            completed,
            total_calls: now - start_calls,
            tail_calls: now - last_calls,
            random_bits: runs.iter().map(|r| r.bits.load(Ordering::SeqCst)).sum(),
        }
    };

    loop {
        for run in runs.iter().filter(|r| !r.done) {
            run.gate.grant(quantum);
        }
        for run in runs.iter_mut().filter(|r| !r.done) {
            run.done = run.gate.settle();
        }
        for run in runs.iter_mut() {
            let found = run.found.lock().unwrap();
            for m in &found[run.cursor..] {
                if seen.insert(m.exponents.clone()) {
                    pending.push_back(m.clone());
                }
            }
            run.cursor = found.len();
        }

        if runs.iter().all(|r| r.done) {
            while let Some(m) = pending.pop_front() {
                if emit(m, runs).is_break() {
                    stopped = true;
                    break;
                }
            }
            break;
        }
        let Some(m) = pending.pop_front() else {
            break;
        };
        if emit(m, runs).is_break() {
            stopped = true;
            break;
        }
    }
    Ok(summary(emitted, !stopped, last_calls, runs))
}
