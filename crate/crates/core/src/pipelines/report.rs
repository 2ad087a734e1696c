use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::convex::Family;
use crate::error::Result;
use crate::exact::Point;
use crate::pq::{BoundKind, PiercingSolution};

/// One hypothesis or intermediate claim, with the data that justifies the
/// verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub description: String,
    pub passed: bool,
    pub witness: Value,
}

/// The theorem's bound next to what the run achieved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundClaim {
    pub formula: String,
    /// `None` when a constant in the formula is not catalogued.
    pub value: Option<u64>,
    pub kind: Option<BoundKind>,
    pub achieved: usize,
}

/// Audit trail of one pipeline run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub name: String,
    pub inputs: Value,
    pub hypothesis_checks: Vec<HypothesisCheck>,
    pub piercing: Option<PiercingSolution>,
    pub bound_claim: Option<BoundClaim>,
    pub conclusion: String,
    /// False when the LP budget ran out before every check finished.
    pub exhaustive: bool,
}

impl PipelineReport {
    pub(crate) fn new(name: &str, inputs: Value) -> Self {
        PipelineReport {
            name: name.into(),
            inputs,
            hypothesis_checks: Vec::new(),
            piercing: None,
            bound_claim: None,
            conclusion: String::new(),
            exhaustive: true,
        }
    }

    pub(crate) fn check(
        &mut self,
        description: impl Into<String>,
        passed: bool,
        witness: Value,
    ) -> bool {
        self.hypothesis_checks.push(HypothesisCheck {
            description: description.into(),
            passed,
            witness,
        });
        passed
    }

    pub fn all_passed(&self) -> bool {
        self.hypothesis_checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&HypothesisCheck> {
        self.hypothesis_checks.iter().find(|c| !c.passed)
    }

    pub(crate) fn fail(mut self) -> Self {
        let what = self
            .first_failure()
            .map_or("unknown", |c| c.description.as_str())
            .to_string();
        self.conclusion = format!("hypothesis failed: {what}");
        self.piercing = None;
        self
    }

    pub const CSV_HEADER: &'static str = "pipeline,check,passed,witness";

    /// One row per hypothesis check.
    pub fn csv_rows(&self) -> Vec<String> {
        self.hypothesis_checks
            .iter()
            .map(|c| {
                format!(
                    "{},{},{},{}",
                    csv_field(&self.name),
                    csv_field(&c.description),
                    c.passed,
                    csv_field(&c.witness.to_string())
                )
            })
            .collect()
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Assembles a piercing solution from groups of member indices, each with
/// the point that pierces them, and re-checks every membership.
pub(crate) fn assemble(fam: &Family, groups: Vec<(Vec<usize>, Point)>) -> Result<PiercingSolution> {
    let mut assignment = vec![usize::MAX; fam.len()];
    let mut points = Vec::with_capacity(groups.len());
    for (members, point) in groups {
        for i in members {
            assignment[i] = points.len();
        }
        points.push(point);
    }
    let sol = PiercingSolution {
        points,
        assignment,
        optimal: false,
    };
    assert!(
        sol.certify(fam)?,
        "pipeline produced an uncertified piercing"
    );
    Ok(sol)
}
