use std::io::{self, Write};
use std::ops::ControlFlow;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algorithms::{
    Algorithm, EnumerationSink, Enumerator, EnumeratorConfig, ErrorBudget, OutputEvent, RunSummary,
};
use crate::blackbox::BlackBox;
use crate::poly::SparsePolynomial;
use crate::Result;

/// One emitted monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub index: usize,
    /// Decimal string, `p/q` for non-integers.
    pub coefficient: String,
    pub exponents: Vec<u32>,
    /// Wall-clock time since the run started.
    pub elapsed_ns: u64,
    pub calls_since_previous: u64,
    pub calls_total: u64,
    pub random_bits: u64,
}

impl OutputRecord {
    pub fn from_event(event: &OutputEvent, elapsed_ns: u64) -> Self {
        Self {
            index: event.index,
            coefficient: event.monomial.coefficient.to_string(),
            exponents: event.monomial.exponents.clone(),
            elapsed_ns,
            calls_since_previous: event.calls_since_previous,
            calls_total: event.calls_total,
            random_bits: event.random_bits,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsSummary {
    pub outputs: usize,
    pub completed: bool,
    pub total_calls: u64,
    /// Calls after the last output.
    pub tail_calls: u64,
    pub max_gap_calls: u64,
    pub random_bits: u64,
    pub max_point_bits: u64,
    pub max_coordinate: String,
    pub elapsed_ns: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub records: Vec<OutputRecord>,
    pub summary: MetricsSummary,
}

impl MetricsReport {
    /// Largest number of calls between two outputs, counting the stretch
    /// before the first output and the one after the last.
    pub fn max_gap_calls(&self) -> u64 {
        self.summary.max_gap_calls
    }

    /// One JSON object per record, then the summary object.
    pub fn write_json_lines<W: Write>(&self, mut w: W) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            writeln!(w)?;
        }
        serde_json::to_writer(&mut w, &self.summary)?;
        writeln!(w)
    }
}

/// Sink that timestamps every event and optionally forwards it.
pub struct MetricsRecorder<'a> {
    start: Instant,
    records: Vec<OutputRecord>,
    inner: Option<&'a mut dyn EnumerationSink>,
}

impl<'a> MetricsRecorder<'a> {
    pub fn new() -> Self {
        Self {
            start: Instant::now(),
            records: Vec::new(),
            inner: None,
        }
    }

    pub fn forwarding(inner: &'a mut dyn EnumerationSink) -> Self {
        Self {
            inner: Some(inner),
            ..Self::new()
        }
    }

    pub fn records(&self) -> &[OutputRecord] {
        &self.records
    }

    pub fn finish(self, run: &RunSummary, p: &BlackBox) -> MetricsReport {
        let gaps = self.records.iter().map(|r| r.calls_since_previous);
        let summary = MetricsSummary {
            outputs: run.outputs,
            completed: run.completed,
            total_calls: run.total_calls,
            tail_calls: run.tail_calls,
            max_gap_calls: gaps.chain([run.tail_calls]).max().unwrap_or(0),
            random_bits: run.random_bits,
            max_point_bits: p.stats().max_point_bits(),
            max_coordinate: p.stats().max_coordinate().to_string(),
            elapsed_ns: self.start.elapsed().as_nanos() as u64,
        };
        MetricsReport {
            records: self.records,
            summary,
        }
    }
}

impl Default for MetricsRecorder<'_> {
    fn default() -> Self {
        Self::new()
    }
}

impl EnumerationSink for MetricsRecorder<'_> {
    fn emit(&mut self, event: &OutputEvent) -> ControlFlow<()> {
        let elapsed = self.start.elapsed().as_nanos() as u64;
        self.records.push(OutputRecord::from_event(event, elapsed));
        match self.inner.as_mut() {
            Some(inner) => inner.emit(event),
            None => ControlFlow::Continue(()),
        }
    }
}

/// Runs `algorithm` on `p` and returns the emitted polynomial with its
/// metrics.
pub fn run_with_metrics(
    algorithm: Algorithm,
    p: &BlackBox,
    eps: ErrorBudget,
    config: &EnumeratorConfig,
) -> Result<(SparsePolynomial, MetricsReport)> {
    let mut found = SparsePolynomial::zero(p.vars());
    let mut collect = |e: &OutputEvent| {
        // Exponent vectors are distinct within a run, so this cannot fail.
        let _ = found.add_monomial(&e.monomial);
        ControlFlow::Continue(())
    };
    let mut recorder = MetricsRecorder::forwarding(&mut collect);
    let run = Enumerator::new(config).enumerate(algorithm, p, eps, &mut recorder)?;
    let report = recorder.finish(&run, p);
    Ok((found, report))
}
