use std::sync::atomic::{AtomicU64, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::PipelineReport;
use crate::constructions::{
    counterexample_family, escape_witness, member_a, sample_points, CounterexampleSpec,
};
use crate::convex::contains_point;
use crate::error::{Error, Result};
use crate::exact::Point;
use crate::pq::property::first_failure;
use crate::pq::{has_pq_property_with, Budget, FamilyOracle, Memo};

/// Which branch of the three-way case split a tuple falls in, by the number
/// `i` of unbounded members it contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleCase {
    /// `i ≤ d`: the whole tuple meets.
    Whole,
    /// `d < i ≤ d+k`: `d` unbounded members and every bounded one meet.
    Mixed,
    /// `i > d+k`: the unbounded members meet on the first axis.
    Axis,
}

pub fn classify(i: usize, d: usize, k: usize) -> TupleCase {
    if i <= d {
        TupleCase::Whole
    } else if i <= d + k {
        TupleCase::Mixed
    } else {
        TupleCase::Axis
    }
}

/// The subfamily the case split predicts to be intersecting. Indices below
/// `n_a` are unbounded members.
pub fn predicted_subfamily(
    tuple: &[usize],
    n_a: usize,
    d: usize,
    k: usize,
) -> (TupleCase, Vec<usize>) {
    let (a, b): (Vec<usize>, Vec<usize>) = tuple.iter().partition(|&&i| i < n_a);
    let case = classify(a.len(), d, k);
    let set = match case {
        TupleCase::Whole => tuple.to_vec(),
        TupleCase::Mixed => a[..d].iter().chain(&b).copied().collect(),
        TupleCase::Axis => a,
    };
    (case, set)
}

/// Options shared by the counterexample run.
#[derive(Clone, Debug)]
pub struct CounterexampleRun {
    pub k_max: usize,
    /// Candidate piercing sets; when empty, `default_candidates` random sets
    /// of 10 points are drawn from `seed`.
    pub candidates: Vec<Vec<Point>>,
    pub default_candidates: usize,
    pub seed: u64,
    pub n_cap: u64,
    pub budget: Option<u64>,
}

impl Default for CounterexampleRun {
    fn default() -> Self {
        CounterexampleRun {
            k_max: 1,
            candidates: Vec::new(),
            default_candidates: 3,
            seed: 0,
            n_cap: 1000,
            budget: None,
        }
    }
}

/// Checks the `(d+1+2k, d+1+k)`-property of a truncation for `k ≤ k_max`,
/// replays the three-way case split on every tuple, and certifies escape
/// indices for candidate piercing sets.
pub fn verify_counterexample(
    spec: &CounterexampleSpec,
    run: &CounterexampleRun,
) -> Result<PipelineReport> {
    let mut report = PipelineReport::new(
        "counterexample",
        json!({
            "spec": spec,
            "k_max": run.k_max,
            "seed": run.seed,
            "n_cap": run.n_cap,
            "budget": run.budget,
        }),
    );
    match run_checks(spec, run, &mut report) {
        Ok(()) => {}
        Err(Error::BudgetExhausted(b)) => {
            report.exhaustive = false;
            report.conclusion = format!("LP budget of {b} exhausted; report is partial");
            return Ok(report);
        }
        Err(e) => return Err(e),
    }
    report.conclusion = if report.all_passed() {
        "all property checks, case predictions and escape certificates hold".into()
    } else {
        format!(
            "check failed: {}",
            report
                .first_failure()
                .map(|c| c.description.clone())
                .unwrap_or_default()
        )
    };
    Ok(report)
}

fn run_checks(
    spec: &CounterexampleSpec,
    run: &CounterexampleRun,
    report: &mut PipelineReport,
) -> Result<()> {
    let fam = counterexample_family(spec)?;
    let n_a = (spec.n_max - 1) as usize;
    let d = spec.ambient() - 1;
    let oracle = FamilyOracle(&fam);
    let memo = Memo::new(&oracle)?.with_budget(Budget::new(run.budget));
    let all = fam.all_indices();

    for k in 0..=run.k_max {
        let (p, q) = (d + 1 + 2 * k, d + 1 + k);
        if p > fam.len() {
            report.check(
                format!("({p},{q})-property (k={k})"),
                false,
                json!({"reason": "family smaller than p", "size": fam.len()}),
            );
            continue;
        }
        let pq = has_pq_property_with(&memo, p, q)?;
        report.check(
            format!("({p},{q})-property (k={k})"),
            pq.holds,
            serde_json::to_value(&pq).unwrap(),
        );

        let counts = [AtomicU64::new(0), AtomicU64::new(0), AtomicU64::new(0)];
        let (_, mismatch) = first_failure(&all, p, |t| {
            let (case, set) = predicted_subfamily(t, n_a, d, k);
            counts[case as usize].fetch_add(1, Ordering::Relaxed);
            if set.len() < q {
                return Ok(false);
            }
            memo.intersects(&set)
        })?;
        let [whole, mixed, axis] = counts.map(|c| c.into_inner());
        report.check(
            format!("case split predicts an intersecting {q}-set in every {p}-tuple (k={k})"),
            mismatch.is_none(),
            json!({
                "whole_tuple": whole,
                "mixed": mixed,
                "axis": axis,
                "first_mismatch": mismatch,
            }),
        );
    }

    let candidates = if run.candidates.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
        (0..run.default_candidates)
            .map(|_| sample_points(&mut rng, spec.ambient(), 10))
            .collect()
    } else {
        run.candidates.clone()
    };
    for (j, s) in candidates.iter().enumerate() {
        let n = escape_witness(spec, s, run.n_cap)?;
        let certified = match n {
            Some(n) => {
                let a = member_a(spec.d, n)?;
                let mut ok = true;
                for p in s {
                    ok &= !contains_point(&a, p)?;
                }
                ok
            }
            None => false,
        };
        report.check(
            format!("candidate set {j} misses some A_n"),
            certified,
            json!({"escape_index": n, "points": s, "n_cap": run.n_cap}),
        );
    }
    Ok(())
}
