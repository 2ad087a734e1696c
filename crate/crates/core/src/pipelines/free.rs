use serde_json::json;

use super::report::{assemble, BoundClaim, PipelineReport};
use crate::convex::{convex_hull_union, Family, JointLp};
use crate::error::{Error, Result};
use crate::pq::{
    has_pq_property_with, m_free_violation, min_intersecting_partition, piercing_number,
    BoundCatalog, Budget, FamilyOracle, Memo,
};

/// Bound `ξ(p,q,d) + extra` from the catalogue, when `ξ(p,q,d)` is listed.
pub(crate) fn xi_claim(
    catalog: &BoundCatalog,
    p: usize,
    q: usize,
    d: usize,
    extra: usize,
    achieved: usize,
) -> BoundClaim {
    let entry = catalog.lookup("xi", &[p as u64, q as u64, d as u64]);
    BoundClaim {
        formula: format!("xi({p},{q},{d}) + {extra}"),
        value: entry.as_ref().map(|e| e.value + extra as u64),
        kind: entry.map(|e| e.kind),
        achieved,
    }
}

/// Pierces a family with the `(p,q)`-property that contains a
/// `(q-d)`-free subfamily `𝓑` of size `p-d`.
///
/// The rest is split into the fewest intersecting parts; each part together
/// with `conv(∪𝓑)` is checked to meet, and that common point pierces the
/// part. `𝓑` itself is pierced exactly.
pub fn pierce_via_s2(
    fam: &Family,
    b_indices: &[usize],
    p: usize,
    q: usize,
    catalog: &BoundCatalog,
    budget: Option<u64>,
) -> Result<PipelineReport> {
    let d = fam.dim();
    let mut report = PipelineReport::new(
        "s2",
        json!({"p": p, "q": q, "d": d, "free": b_indices, "size": fam.len()}),
    );
    fam.check_indices(b_indices)?;
    let mut b: Vec<usize> = b_indices.to_vec();
    b.sort_unstable();
    b.dedup();

    report.check(
        format!("q >= d + 1 ({q} >= {})", d + 1),
        q > d && p >= q,
        json!({"p": p, "q": q, "d": d}),
    );
    report.check(
        format!("free subfamily has p - d = {} members", p.saturating_sub(d)),
        b.len() + d == p,
        json!({"size": b.len()}),
    );
    if !report.all_passed() {
        return Ok(report.fail());
    }
    let violation = m_free_violation(fam, &b, q - d)?;
    let ok = report.check(
        format!("free subfamily is {}-free", q - d),
        violation.is_none(),
        serde_json::to_value(&violation).unwrap(),
    );
    if !ok {
        return Ok(report.fail());
    }
    if fam.len() < p {
        report.check(
            "family has at least p members",
            false,
            json!({"size": fam.len()}),
        );
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

    let hull = match convex_hull_union(fam, &b) {
        Ok(h) => h,
        Err(Error::NotVRep(label)) => {
            report.check(
                "free members are V-represented",
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
        .filter(|i| !b.contains(i))
        .collect();
    let mut groups = Vec::new();
    if !rest.is_empty() {
        let rest_fam = fam.subfamily(&rest)?;
        let rest_oracle = FamilyOracle(&rest_fam);
        let rest_memo = Memo::new(&rest_oracle)?.with_budget(budget);
        let partition = min_intersecting_partition(&rest_memo, None)?;
        report.check(
            "rest split into intersecting parts",
            true,
            json!({"parts": partition.parts.iter().map(|part| part.iter().map(|&j| rest[j]).collect::<Vec<_>>()).collect::<Vec<_>>(), "optimal": partition.optimal}),
        );
        for part in &partition.parts {
            let members: Vec<usize> = part.iter().map(|&j| rest[j]).collect();
            let mut lp = JointLp::new(d);
            for &i in &members {
                lp.constrain_ambient(fam.get(i));
            }
            lp.constrain_ambient(&hull);
            let point = lp.solve()?;
            let ok = report.check(
                format!("part {members:?} meets the hull of the free members"),
                point.is_some(),
                json!({"members": members, "point": point}),
            );
            if !ok {
                return Ok(report.fail());
            }
            groups.push((members, point.unwrap()));
        }
    }

    let b_fam = fam.subfamily(&b)?;
    let b_sol = piercing_number(&b_fam, None)?;
    let ok = report.check(
        format!(
            "free members pierced by at most p - q + 1 = {} points",
            p - q + 1
        ),
        b_sol.size() <= p - q + 1,
        json!({"points": b_sol.size(), "optimal": b_sol.optimal}),
    );
    if !ok {
        return Ok(report.fail());
    }
    for (j, pt) in b_sol.points.iter().enumerate() {
        let members = (0..b.len())
            .filter(|&k| b_sol.assignment[k] == j)
            .map(|k| b[k])
            .collect();
        groups.push((members, pt.clone()));
    }

    let sol = assemble(fam, groups)?;
    report.bound_claim = Some(xi_claim(catalog, p, q, d, p - q + 1, sol.size()));
    report.conclusion = format!(
        "pierced by {} point(s); free members by {}",
        sol.size(),
        b_sol.size()
    );
    report.piercing = Some(sol);
    Ok(report)
}
