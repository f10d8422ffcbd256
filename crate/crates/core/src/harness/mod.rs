//! Delay metrics and brute-force reference oracles.

mod brute;
mod metrics;

pub use brute::{
    brute_force_interpolate, brute_force_interpolate_with_budget, brute_force_structures,
    find_pfaffian_orientation, Family, Instance, DEFAULT_EVAL_BUDGET, MAX_STRUCTURE_VERTICES,
};
pub use metrics::{run_with_metrics, MetricsRecorder, MetricsReport, MetricsSummary, OutputRecord};
