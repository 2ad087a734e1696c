use std::path::Path;

use piercing_core::constructions::{
    counterexample_family, escape_witness, free_flats_family, gruenbaum_line, sample_alphas,
    simplex_common_point, simplex_s, CounterexampleSpec,
};
use piercing_core::convex::{
    common_recession_direction, is_bounded, project_drop_last, recession_cone, ConvexSet,
};
use piercing_core::exact::{format_rational, Point};
use piercing_core::io::{read_json, to_json, PointList};
use piercing_core::pipelines::{
    eta_upper_bound, pierce_via_main, pierce_via_s1, pierce_via_s2, rotated_counterexample,
    verify_corollary52, verify_counterexample, CounterexampleRun, PipelineReport,
};
use piercing_core::pq::{
    build_gf_with, eta_tuza_bound, has_pq_property_with, m_free_violation, piercing_number_with,
    transversal_number, BoundKind, Budget, FamilyOracle, Memo,
};
use piercing_core::{BoundCatalog, Error, Family, Hypergraph, Rep, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::args::*;

/// Rendered result of one command with its exit status.
pub struct Outcome {
    pub json: String,
    /// Header plus rows, for commands with a flat CSV form.
    pub csv: Option<Vec<String>>,
    pub status: u8,
}

impl Outcome {
    fn ok<T: Serialize>(value: &T) -> Self {
        Outcome {
            json: to_json(value),
            csv: None,
            status: 0,
        }
    }

    fn status(mut self, passed: bool) -> Self {
        self.status = if passed { 0 } else { 1 };
        self
    }

    fn csv(mut self, header: &str, rows: Vec<String>) -> Self {
        let mut all = vec![header.to_string()];
        all.extend(rows);
        self.csv = Some(all);
        self
    }
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        Command::Construct(c) => construct(c, cfg),
        Command::Check(c) => check(c, cfg),
        Command::Solve(s) => solve(s, cfg),
        Command::Analyze(a) => analyze(a, cfg),
        Command::Escape(e) => escape(e, cfg),
        Command::Bounds(b) => bounds(b),
        Command::Pipeline(p) => pipeline(p, cfg),
    }
}

fn spec_of(a: &CounterexampleArgs) -> Result<CounterexampleSpec> {
    let mut spec = CounterexampleSpec::new(a.d, a.n_max, a.n_bounded);
    if let Some(m) = &a.margin {
        spec.bounded_margin = m.clone();
    }
    spec.validate()?;
    Ok(spec)
}

fn family_outcome(fam: &Family) -> Outcome {
    let mut rows = Vec::new();
    for s in fam.sets() {
        let coords = |p: &Point| {
            p.coords()
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(" ")
        };
        match s.rep() {
            Rep::V { points, rays } => {
                rows.extend(
                    points
                        .iter()
                        .enumerate()
                        .map(|(i, p)| format!("{},point,{i},{}", csv_label(s), coords(p))),
                );
                rows.extend(
                    rays.iter()
                        .enumerate()
                        .map(|(i, r)| format!("{},ray,{i},{}", csv_label(s), coords(r))),
                );
            }
            Rep::H(hs) => rows.extend(hs.iter().enumerate().map(|(i, h)| {
                format!(
                    "{},halfspace,{i},{} {}",
                    csv_label(s),
                    coords(&h.normal),
                    format_rational(&h.offset)
                )
            })),
        }
    }
    Outcome::ok(fam).csv("set,kind,index,values", rows)
}

fn csv_label(s: &ConvexSet) -> String {
    let l = s.label();
    if l.contains([',', '"', '\n']) {
        format!("\"{}\"", l.replace('"', "\"\""))
    } else {
        l.to_string()
    }
}

fn construct(c: &Construct, cfg: &RunConfig) -> Result<Outcome> {
    let fam = match c {
        Construct::Simplex { d, alphas } => {
            let alphas = if alphas.is_empty() {
                sample_alphas(&mut ChaCha8Rng::seed_from_u64(cfg.seed), *d)
            } else {
                alphas.clone()
            };
            if alphas.len() != *d {
                return Err(Error::InvalidParameter(format!(
                    "expected {d} alpha values, got {}",
                    alphas.len()
                )));
            }
            // Also checks that the simplices share the predicted point.
            simplex_common_point(&alphas)?;
            let sets = alphas
                .iter()
                .map(|a| simplex_s(a, *d))
                .collect::<Result<Vec<_>>>()?;
            Family::new(*d, sets)?
        }
        Construct::Counterexample(a) => counterexample_family(&spec_of(a)?)?,
        Construct::Gruenbaum { n_max, copies } => gruenbaum_line(*n_max, *copies)?,
        Construct::FreeFlats {
            d,
            k,
            count,
            radius,
        } => free_flats_family(*d, *k, *count, radius, cfg.seed)?,
    };
    Ok(family_outcome(&fam))
}

fn memo_for<'o>(
    oracle: &'o FamilyOracle<'o>,
    cfg: &RunConfig,
) -> Result<Memo<'o, FamilyOracle<'o>>> {
    Ok(Memo::new(oracle)?.with_budget(Budget::new(cfg.budget)))
}

fn check(c: &Check, cfg: &RunConfig) -> Result<Outcome> {
    match c {
        Check::Pq { p, q, input } => {
            let fam: Family = read_json(input)?;
            let oracle = FamilyOracle(&fam);
            let report = has_pq_property_with(&memo_for(&oracle, cfg)?, *p, *q)?;
            let row = format!(
                "{p},{q},{},{},{}",
                report.holds,
                report.checked_tuples,
                report
                    .violating_tuple
                    .as_ref()
                    .map(|t| t.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default()
            );
            Ok(Outcome::ok(&report)
                .status(report.holds)
                .csv("p,q,holds,checked_tuples,violating_tuple", vec![row]))
        }
        Check::Free { m, input } => {
            let fam: Family = read_json(input)?;
            let violation = m_free_violation(&fam, &fam.all_indices(), *m)?;
            let out = json!({"m": m, "free": violation.is_none(), "violation": violation});
            Ok(Outcome::ok(&out).status(violation.is_none()))
        }
    }
}

fn solve(s: &Solve, cfg: &RunConfig) -> Result<Outcome> {
    match s {
        Solve::Pierce { input, limit } => {
            let fam: Family = read_json(input)?;
            let oracle = FamilyOracle(&fam);
            let sol = piercing_number_with(&memo_for(&oracle, cfg)?, *limit)?;
            let rows = sol
                .points
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    let members: Vec<String> = (0..fam.len())
                        .filter(|&i| sol.assignment[i] == j)
                        .map(|i| i.to_string())
                        .collect();
                    let coords: Vec<String> = p.coords().iter().map(format_rational).collect();
                    format!("{j},{},{}", coords.join(" "), members.join(" "))
                })
                .collect();
            Ok(Outcome::ok(&sol).csv("point,coordinates,members", rows))
        }
        Solve::Transversal { input, limit } => {
            let h: Hypergraph = read_json(input)?;
            let t = transversal_number(&h, *limit);
            Ok(Outcome::ok(&t))
        }
    }
}

fn analyze(a: &Analyze, cfg: &RunConfig) -> Result<Outcome> {
    match a {
        Analyze::Recession { input } => {
            let fam: Family = read_json(input)?;
            let mut members = Vec::new();
            for s in fam.sets() {
                members.push(json!({
                    "label": s.label(),
                    "bounded": is_bounded(s)?,
                    "cone": recession_cone(s)?,
                }));
            }
            let common = common_recession_direction(&fam)?;
            Ok(Outcome::ok(
                &json!({"members": members, "common_direction": common}),
            ))
        }
        Analyze::Project { input, reduce } => {
            let fam: Family = read_json(input)?;
            if fam.dim() < 2 {
                return Err(Error::InvalidParameter(
                    "projection needs dimension at least 2".into(),
                ));
            }
            let sets = fam
                .sets()
                .iter()
                .map(|s| project_drop_last(s, *reduce))
                .collect::<Result<Vec<_>>>()?;
            Ok(family_outcome(&Family::new(fam.dim() - 1, sets)?))
        }
        Analyze::Gf { input } => {
            let fam: Family = read_json(input)?;
            let oracle = FamilyOracle(&fam);
            let gf = build_gf_with(&memo_for(&oracle, cfg)?, fam.dim())?;
            Ok(Outcome::ok(&gf))
        }
    }
}

fn escape(e: &EscapeArgs, cfg: &RunConfig) -> Result<Outcome> {
    let pts: PointList = read_json(&e.points)?;
    let spec = CounterexampleSpec::new(e.d, cfg.n_cap, 0);
    spec.validate()?;
    pts.check_dim(spec.ambient())?;
    let n = escape_witness(&spec, &pts.points, cfg.n_cap)?;
    let out = json!({"d": e.d, "n_cap": cfg.n_cap, "points": pts.points.len(), "escape_index": n});
    Ok(Outcome::ok(&out).status(n.is_some()))
}

fn bounds(b: &Bounds) -> Result<Outcome> {
    let catalog = BoundCatalog::standard();
    let out = match b {
        Bounds::Eta { lam, k } => {
            if *lam == 0 || *k == 0 {
                return Err(Error::InvalidParameter("lam and k must be positive".into()));
            }
            match catalog.lookup("eta", &[*lam, *k]) {
                Some(e) if *k > 1 => {
                    let tuza = eta_tuza_bound(*lam, *k)?;
                    json!({"name": "eta", "args": [lam, k], "value": e.value, "kind": e.kind,
                           "provenance": e.provenance, "binomial_bound": tuza})
                }
                _ => {
                    let (value, source) = eta_upper_bound(*lam, *k, &catalog)?;
                    let kind = if *k == 1 {
                        BoundKind::Exact
                    } else {
                        BoundKind::UpperBound
                    };
                    json!({"name": "eta", "args": [lam, k], "value": value, "kind": kind, "provenance": source})
                }
            }
        }
        Bounds::Xi { p, q, d } => match catalog.lookup("xi", &[*p, *q, *d]) {
            Some(e) => serde_json::to_value(e).expect("serializable"),
            None => json!({"name": "xi", "args": [p, q, d], "value": null, "kind": null,
                           "provenance": "not catalogued; the constant stays symbolic"}),
        },
    };
    Ok(Outcome::ok(&out))
}

fn report_outcome(r: &PipelineReport) -> Outcome {
    let mut out = Outcome::ok(r).csv(PipelineReport::CSV_HEADER, r.csv_rows());
    out.status = if !r.exhaustive {
        3
    } else if r.all_passed() {
        0
    } else {
        1
    };
    out
}

fn pipeline(p: &Pipeline, cfg: &RunConfig) -> Result<Outcome> {
    let catalog = BoundCatalog::standard();
    let report = match p {
        Pipeline::S1 { input, t, p } => {
            pierce_via_s1(&read_json(input)?, *t, *p, &catalog, cfg.budget)?
        }
        Pipeline::S2 { input, free, p, q } => {
            pierce_via_s2(&read_json(input)?, free, *p, *q, &catalog, cfg.budget)?
        }
        Pipeline::Main {
            input,
            compact,
            p,
            q,
            route,
        } => pierce_via_main(
            &read_json(input)?,
            compact,
            *p,
            *q,
            (*route).into(),
            &catalog,
            cfg.budget,
        )?,
        Pipeline::Counterexample {
            spec,
            k_max,
            candidates,
        } => {
            let mut sets = Vec::new();
            for path in candidates {
                let pl: PointList = read_json(path)?;
                pl.check_dim(spec.d + 1)?;
                sets.push(pl.points);
            }
            let run = CounterexampleRun {
                k_max: *k_max,
                candidates: sets,
                seed: cfg.seed,
                n_cap: cfg.n_cap,
                budget: cfg.budget,
                ..CounterexampleRun::default()
            };
            verify_counterexample(&spec_of(spec)?, &run)?
        }
        Pipeline::Corollary52 {
            input,
            box_file,
            d,
            n_max,
            n_bounded,
            max_subset,
        } => {
            let (fam, bx) = match (input, box_file) {
                (Some(i), Some(b)) => (read_json::<Family>(i)?, read_json::<ConvexSet>(b)?),
                _ => {
                    let args = CounterexampleArgs {
                        d: d.expect("required by the parser"),
                        n_max: n_max.expect("required by the parser"),
                        n_bounded: n_bounded.expect("required by the parser"),
                        margin: None,
                    };
                    rotated_counterexample(&spec_of(&args)?)?
                }
            };
            verify_corollary52(&fam, &bx, *max_subset, cfg.budget)?
        }
    };
    Ok(report_outcome(&report))
}

/// Writes to the output path, or stdout when none is set.
pub fn emit(body: &str, output: Option<&Path>) -> std::io::Result<()> {
    use std::io::Write;
    match output {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}
