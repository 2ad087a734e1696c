//! End-to-end runs that check each hypothesis, build a certified piercing
//! set and report the bound it is measured against.

mod counterexample;
mod free;
mod helly;
mod projection;
mod report;

pub use counterexample::{
    classify, predicted_subfamily, verify_counterexample, CounterexampleRun, TupleCase,
};
pub use free::pierce_via_s2;
pub use helly::{eta_upper_bound, pierce_via_s1};
pub use projection::{pierce_via_main, rotated_counterexample, verify_corollary52, Route};
pub use report::{BoundClaim, HypothesisCheck, PipelineReport};
