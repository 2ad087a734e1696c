use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::free::xi_claim;
use super::report::{assemble, BoundClaim, PipelineReport};
use crate::constructions::{family_a, family_b, CounterexampleSpec};
use crate::convex::{
    common_recession_direction, convex_hull_union, in_recession_cone, is_bounded, BasisChange,
    ConvexSet, Family, Rep,
};
use crate::error::{Error, Result};
use crate::exact::{Point, Rational};
use crate::pq::property::first_failure;
use crate::pq::{
    has_pq_property_with, min_intersecting_partition, piercing_number, BoundCatalog, BoundKind,
    Budget, Combinations, FamilyOracle, Memo, ShadowOracle,
};

/// How `pierce_via_main` pierces an intersecting part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// One joint-LP point per part.
    #[default]
    Direct,
    /// Project along a common recession direction, pierce the shadows and
    /// lift, whenever the part has such a direction.
    Projection,
}

/// Pierces a family with the `(p,q)`-property and `p-q+1` compact members.
///
/// The non-compact members are split into the fewest intersecting parts.
/// With [`Route::Projection`], every part that shares a recession direction
/// `v` is moved so that `v = e_d`, intersected with the hull `B` of the
/// compacts, projected along `e_d`, pierced exactly in dimension `d-1` and
/// lifted back above the highest required height.
pub fn pierce_via_main(
    fam: &Family,
    compact_indices: &[usize],
    p: usize,
    q: usize,
    route: Route,
    catalog: &BoundCatalog,
    budget: Option<u64>,
) -> Result<PipelineReport> {
    let d = fam.dim();
    let mut report = PipelineReport::new(
        "main",
        json!({"p": p, "q": q, "d": d, "compact": compact_indices, "route": route, "size": fam.len()}),
    );
    fam.check_indices(compact_indices)?;
    let mut compact = compact_indices.to_vec();
    compact.sort_unstable();
    compact.dedup();

    report.check(
        format!(
            "p - q + 1 = {} compact members given",
            (p + 1).saturating_sub(q)
        ),
        p >= q && compact.len() == p - q + 1,
        json!({"given": compact.len()}),
    );
    report.check(
        format!(
            "q >= p - q + d + 1 ({q} >= {})",
            (p + d + 1).saturating_sub(q)
        ),
        2 * q > p + d,
        json!({"p": p, "q": q, "d": d}),
    );
    let mut unbounded = Vec::new();
    for &i in &compact {
        if !is_bounded(fam.get(i))? {
            unbounded.push(i);
        }
    }
    report.check(
        "compact members are bounded",
        unbounded.is_empty(),
        json!({ "unbounded": unbounded }),
    );
    if fam.len() < p {
        report.check(
            "family has at least p members",
            false,
            json!({"size": fam.len()}),
        );
    }
    if !report.all_passed() {
        return Ok(report.fail());
    }

    let budget = Budget::new(budget);
    let oracle = FamilyOracle(fam);
    let memo = Memo::new(&oracle)?.with_budget(budget.clone());
    let pq = has_pq_property_with(&memo, p, q)?;
    if !report.check(
        format!("({p},{q})-property"),
        pq.holds,
        serde_json::to_value(&pq).unwrap(),
    ) {
        return Ok(report.fail());
    }
    let hull = match convex_hull_union(fam, &compact) {
        Ok(h) => h,
        Err(Error::NotVRep(label)) => {
            report.check(
                "compact members are V-represented",
                false,
                json!({ "member": label }),
            );
            return Ok(report.fail());
        }
        Err(e) => return Err(e),
    };

    let rest: Vec<usize> = fam
        .all_indices()
        .into_iter()
        .filter(|i| !compact.contains(i))
        .collect();
    let mut groups = Vec::new();
    let mut parts_count = 0;
    if !rest.is_empty() {
        let rest_fam = fam.subfamily(&rest)?;
        let rest_oracle = FamilyOracle(&rest_fam);
        let rest_memo = Memo::new(&rest_oracle)?.with_budget(budget.clone());
        let partition = min_intersecting_partition(&rest_memo, None)?;
        parts_count = partition.parts.len();
        for part in &partition.parts {
            let members: Vec<usize> = part.iter().map(|&j| rest[j]).collect();
            let direction = if route == Route::Projection && d >= 2 {
                common_recession_direction(&fam.subfamily(&members)?)?
            } else {
                None
            };
            match direction {
                Some(v) => {
                    let ok = project_part(
                        fam,
                        &members,
                        &hull,
                        &v,
                        q,
                        catalog,
                        &budget,
                        &mut report,
                        &mut groups,
                    )?;
                    if !ok {
                        return Ok(report.fail());
                    }
                }
                None => {
                    if route == Route::Projection && d >= 2 {
                        report.check(
                            format!(
                                "part {members:?}: no common recession direction; pierced directly"
                            ),
                            true,
                            json!({ "members": members }),
                        );
                    }
                    let point = rest_memo
                        .witness(part)?
                        .expect("parts of the partition intersect");
                    groups.push((members, point));
                }
            }
        }
        if route == Route::Projection && d < 2 {
            report.check(
                "projection needs d >= 2; parts pierced directly",
                true,
                json!({ "d": d }),
            );
        }
    }

    let c_fam = fam.subfamily(&compact)?;
    let c_sol = piercing_number(&c_fam, None)?;
    report.check(
        format!(
            "compact members pierced by at most p - q + 1 = {} points",
            p - q + 1
        ),
        c_sol.size() <= p - q + 1,
        json!({"points": c_sol.size()}),
    );
    for (j, pt) in c_sol.points.iter().enumerate() {
        let members = (0..compact.len())
            .filter(|&k| c_sol.assignment[k] == j)
            .map(|k| compact[k])
            .collect();
        groups.push((members, pt.clone()));
    }

    let sol = assemble(fam, groups)?;
    report.bound_claim = Some(main_claim(catalog, p, q, d, sol.size()));
    report.conclusion = format!(
        "pierced by {} point(s): {} intersecting part(s) of the non-compact members, {} point(s) for the compacts",
        sol.size(),
        parts_count,
        c_sol.size()
    );
    report.piercing = Some(sol);
    Ok(report)
}

fn main_claim(catalog: &BoundCatalog, p: usize, q: usize, d: usize, achieved: usize) -> BoundClaim {
    let outer = xi_claim(catalog, p, q, d, p - q + 1, achieved);
    let inner = if d >= 2 {
        catalog.lookup("xi", &[q as u64 - 1, d as u64, d as u64 - 1])
    } else {
        None
    };
    let outer_xi = outer.value.map(|v| v - (p - q + 1) as u64);
    let (value, kind) = match (inner, outer_xi) {
        (Some(i), Some(o)) => {
            let exact = i.kind == BoundKind::Exact && outer.kind == Some(BoundKind::Exact);
            (
                Some(i.value * o + (p - q + 1) as u64),
                Some(if exact {
                    BoundKind::Exact
                } else {
                    BoundKind::UpperBound
                }),
            )
        }
        _ => (None, None),
    };
    BoundClaim {
        formula: format!(
            "xi({},{d},{}) * xi({p},{q},{d}) + {}",
            q - 1,
            d.saturating_sub(1),
            p - q + 1
        ),
        value,
        kind,
        achieved,
    }
}

/// The projection route for one part. Returns false after recording a
/// failed check.
#[allow(clippy::too_many_arguments)]
fn project_part(
    fam: &Family,
    members: &[usize],
    hull: &ConvexSet,
    v: &Point,
    q: usize,
    catalog: &BoundCatalog,
    budget: &Arc<Budget>,
    report: &mut PipelineReport,
    groups: &mut Vec<(Vec<usize>, Point)>,
) -> Result<bool> {
    let d = fam.dim();
    let part_fam = fam.subfamily(members)?;

    // Every (q-1) members include d that meet inside the hull.
    let ext = part_fam.union(&Family::new(d, vec![hull.clone()])?)?;
    let ext_oracle = FamilyOracle(&ext);
    let ext_memo = Memo::new(&ext_oracle)?.with_budget(budget.clone());
    let hull_idx = members.len();
    let local: Vec<usize> = (0..members.len()).collect();
    let (_, bad) = if members.len() + 1 >= q {
        first_failure(&local, q - 1, |t| {
            for sub in Combinations::new(t, d) {
                let mut with_hull = sub.clone();
                with_hull.push(hull_idx);
                if ext_memo.intersects(&with_hull)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })?
    } else {
        (0, None)
    };
    let ok = report.check(
        format!("part {members:?}: ({},{d})-property inside the hull", q - 1),
        bad.is_none(),
        json!({"violating": bad.map(|t| t.iter().map(|&j| members[j]).collect::<Vec<_>>())}),
    );
    if !ok {
        return Ok(false);
    }

    let change = BasisChange::moving_to_last_axis(v)?;
    let rot = change.apply_family(&part_fam)?;
    let rot_hull = change.apply_set(hull)?;

    let mut meeting = Vec::new();
    let mut missing = Vec::new();
    for (j, &i) in members.iter().enumerate() {
        if ext_memo.intersects(&[j, hull_idx])? {
            meeting.push(j);
        } else {
            missing.push(i);
        }
    }
    report.check(
        format!("part {members:?}: members missing the hull are pierced directly"),
        true,
        json!({"direction": v, "missing": missing}),
    );
    for &i in &missing {
        let own = fam
            .get(i)
            .some_point()?
            .ok_or_else(|| Error::EmptySet(fam.get(i).label().into()))?;
        groups.push((vec![i], own));
    }
    if meeting.is_empty() {
        return Ok(true);
    }

    let shadows = rot.subfamily(&meeting)?;
    let shadow_oracle = ShadowOracle {
        family: &shadows,
        bx: &rot_hull,
    };
    let shadow_memo = Memo::new(&shadow_oracle)?.with_budget(budget.clone());
    let split = min_intersecting_partition(&shadow_memo, None)?;
    let mut lifted = Vec::new();
    for sub in &split.parts {
        let w = shadow_memo.witness(sub)?.expect("shadow parts intersect");
        let t = w
            .heights
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(|| Rational::from_integer(0.into()));
        let x = change.to_old(&w.shadow.extend(t.clone()));
        let ids: Vec<usize> = sub.iter().map(|&j| members[meeting[j]]).collect();
        lifted.push(json!({"members": ids, "shadow": w.shadow, "height": crate::exact::format_rational(&t), "point": x}));
        groups.push((ids, x));
    }
    let inner = if d >= 2 {
        catalog.lookup("xi", &[q as u64 - 1, d as u64, d as u64 - 1])
    } else {
        None
    };
    let ok = report.check(
        format!(
            "part {members:?}: shadows pierced within xi({},{d},{})",
            q - 1,
            d - 1
        ),
        inner
            .as_ref()
            .is_none_or(|e| split.parts.len() as u64 <= e.value),
        json!({"points": split.parts.len(), "bound": inner.map(|e| e.value), "lifted": lifted}),
    );
    Ok(ok)
}

/// The counterexample's unbounded members and the hull of its bounded ones,
/// with coordinates changed so the shared direction `e_1` becomes `e_d`.
pub fn rotated_counterexample(spec: &CounterexampleSpec) -> Result<(Family, ConvexSet)> {
    let a = family_a(spec)?;
    let b = family_b(spec)?;
    let change = BasisChange::moving_to_last_axis(&Point::unit(spec.ambient(), 0))?;
    let hull = convex_hull_union(&b, &b.all_indices())?.with_label("B");
    Ok((change.apply_family(&a)?, change.apply_set(&hull)?))
}

/// Checks that `⋂(A ∩ box)` and `⋂Π(A ∩ box)` are empty together for every
/// subfamily of at most `max_subset` members, where every member recedes
/// along `e_d`.
pub fn verify_corollary52(
    fam: &Family,
    bx: &ConvexSet,
    max_subset: usize,
    budget: Option<u64>,
) -> Result<PipelineReport> {
    let d = fam.dim();
    let mut report = PipelineReport::new(
        "corollary52",
        json!({"d": d, "size": fam.len(), "box": bx.label(), "max_subset": max_subset}),
    );
    let compact_vrep = matches!(bx.rep(), Rep::V { rays, .. } if rays.iter().all(Point::is_zero));
    report.check(
        "box is a compact V-representation",
        compact_vrep && bx.dim() == d,
        json!({"box": bx.label()}),
    );
    report.check("d >= 2", d >= 2, json!({ "d": d }));
    if !report.all_passed() {
        return Ok(report.fail());
    }
    let e_d = Point::unit(d, d - 1);
    let mut lacking = None;
    for s in fam.sets() {
        if !in_recession_cone(s, &e_d)? {
            lacking = Some(s.label().to_string());
            break;
        }
    }
    if !report.check(
        "every member recedes along e_d",
        lacking.is_none(),
        json!({ "lacking": lacking }),
    ) {
        return Ok(report.fail());
    }

    let budget = Budget::new(budget);
    let ext = fam.union(&Family::new(d, vec![bx.clone()])?)?;
    let direct_oracle = FamilyOracle(&ext);
    let direct = Memo::new(&direct_oracle)?.with_budget(budget.clone());
    let shadow_oracle = ShadowOracle { family: fam, bx };
    let shadow = Memo::new(&shadow_oracle)?.with_budget(budget);
    let box_idx = fam.len();
    let all = fam.all_indices();
    let (mut checked, nonempty) = (0u64, AtomicU64::new(0));
    let mut mismatch = None;
    for k in 1..=max_subset.min(fam.len()) {
        let (seen, bad) = first_failure(&all, k, |t| {
            let mut with_box = t.to_vec();
            with_box.push(box_idx);
            let a = direct.intersects(&with_box)?;
            let b = shadow.intersects(t)?;
            if a {
                nonempty.fetch_add(1, Ordering::Relaxed);
            }
            Ok(a == b)
        })?;
        checked += seen;
        if bad.is_some() {
            mismatch = bad;
            break;
        }
    }
    let ok = report.check(
        format!("intersections and shadow intersections agree on subsets of size <= {max_subset}"),
        mismatch.is_none(),
        json!({"subsets": checked, "nonempty": nonempty.into_inner(), "first_mismatch": mismatch}),
    );
    report.conclusion = if ok {
        format!("equivalence holds on all {checked} subsets")
    } else {
        "equivalence fails".into()
    };
    Ok(report)
}
