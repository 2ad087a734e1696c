use serde_json::json;

use super::report::{assemble, BoundClaim, PipelineReport};
use crate::convex::{is_bounded, Family};
use crate::error::{Error, Result};
use crate::pq::{
    build_gf_with, eta_tuza_bound, has_pq_property_with, transversal_number, BoundCatalog,
    BoundKind, Budget, FamilyOracle, Memo,
};

/// Best known upper bound on `η(lam, k)` with its source: `λ` itself when
/// `k = 1`, otherwise the smaller of the catalogue entry and the binomial
/// bound.
pub fn eta_upper_bound(lam: u64, k: u64, catalog: &BoundCatalog) -> Result<(u64, String)> {
    if k == 1 {
        return Ok((lam, "a 1-critical hypergraph is a single edge".into()));
    }
    let tuza = eta_tuza_bound(lam, k)?;
    Ok(match catalog.lookup("eta", &[lam, k]) {
        Some(e) if e.value <= tuza => (e.value, e.provenance),
        _ => (tuza, "binomial bound (Tuza 1989)".into()),
    })
}

/// Pierces a family with the `(p, p-t)`-property and `t+1` bounded members by
/// at most `t+1` points: a transversal `T` of the empty-intersection
/// hypergraph with `|T| ≤ t`, one common point for the rest, and one point
/// inside each member of `T`.
pub fn pierce_via_s1(
    fam: &Family,
    t: usize,
    p: usize,
    catalog: &BoundCatalog,
    budget: Option<u64>,
) -> Result<PipelineReport> {
    let d = fam.dim();
    let mut report = PipelineReport::new("s1", json!({"t": t, "p": p, "d": d, "size": fam.len()}));

    let mut bounded = Vec::new();
    for (i, s) in fam.sets().iter().enumerate() {
        if is_bounded(s)? {
            bounded.push(i);
        }
    }
    report.check(
        format!("at least {} bounded members", t + 1),
        bounded.len() > t,
        json!({ "bounded": bounded }),
    );
    report.check(
        format!("p - t >= d + 1 ({p} - {t} >= {})", d + 1),
        p > t + d,
        json!({"p": p, "t": t, "d": d}),
    );
    let (eta, source) = eta_upper_bound(d as u64 + 1, t as u64 + 1, catalog)?;
    report.check(
        format!("p >= eta({}, {})", d + 1, t + 1),
        p as u64 >= eta,
        json!({"eta_upper_bound": eta, "source": source}),
    );
    if !report.all_passed() {
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

    let oracle = FamilyOracle(fam);
    let memo = Memo::new(&oracle)?.with_budget(Budget::new(budget));
    let pq = has_pq_property_with(&memo, p, p - t)?;
    if !report.check(
        format!("({p},{})-property", p - t),
        pq.holds,
        serde_json::to_value(&pq).unwrap(),
    ) {
        return Ok(report.fail());
    }

    let gf = build_gf_with(&memo, d)?;
    let cover = transversal_number(&gf, Some(t));
    let ok = report.check(
        format!("G_F has a transversal of size <= {t}"),
        cover.optimal,
        json!({"edges": gf.edges().len(), "beta": cover.beta, "cover": cover.cover, "exact": cover.optimal}),
    );
    if !ok {
        return Ok(report.fail());
    }

    let rest: Vec<usize> = fam
        .all_indices()
        .into_iter()
        .filter(|i| !cover.cover.contains(i))
        .collect();
    let mut groups = Vec::new();
    if !rest.is_empty() {
        let common = memo.witness(&rest)?;
        let ok = report.check(
            "members outside the transversal share a point",
            common.is_some(),
            json!({"members": rest, "point": common}),
        );
        if !ok {
            return Ok(report.fail());
        }
        groups.push((rest, common.unwrap()));
    }
    for &i in &cover.cover {
        let own = fam
            .get(i)
            .some_point()?
            .ok_or_else(|| Error::EmptySet(fam.get(i).label().to_string()))?;
        groups.push((vec![i], own));
    }
    let sol = assemble(fam, groups)?;
    report.bound_claim = Some(BoundClaim {
        formula: "t + 1".into(),
        value: Some(t as u64 + 1),
        kind: Some(BoundKind::UpperBound),
        achieved: sol.size(),
    });
    report.conclusion = format!(
        "pierced by {} point(s), bound t + 1 = {}",
        sol.size(),
        t + 1
    );
    report.piercing = Some(sol);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::ConvexSet;
    use crate::exact::Point;

    fn rect(label: &str, lo: [i64; 2], hi: [i64; 2]) -> ConvexSet {
        ConvexSet::hbox(label, &Point::from_ints(&lo), &Point::from_ints(&hi)).unwrap()
    }

    #[test]
    fn helly_case() {
        let fam = Family::new(
            2,
            vec![
                rect("a", [0, 0], [2, 2]),
                rect("b", [1, 1], [3, 3]),
                rect("c", [1, 0], [2, 5]),
            ],
        )
        .unwrap();
        let r = pierce_via_s1(&fam, 0, 3, &BoundCatalog::standard(), None).unwrap();
        assert!(r.all_passed(), "{:?}", r.first_failure());
        assert_eq!(r.piercing.unwrap().size(), 1);
    }

    #[test]
    fn eta_bounds() {
        let c = BoundCatalog::standard();
        assert_eq!(eta_upper_bound(3, 2, &c).unwrap().0, 6);
        assert_eq!(eta_upper_bound(4, 2, &c).unwrap().0, 9);
        assert_eq!(eta_upper_bound(3, 3, &c).unwrap().0, 15);
        assert_eq!(eta_upper_bound(3, 1, &c).unwrap().0, 3);
    }

    #[test]
    fn missing_bounded_members() {
        let half = ConvexSet::vrep(
            "h",
            1,
            vec![Point::from_ints(&[0])],
            vec![Point::from_ints(&[1])],
        )
        .unwrap();
        let fam = Family::new(1, vec![half]).unwrap();
        let r = pierce_via_s1(&fam, 0, 2, &BoundCatalog::standard(), None).unwrap();
        assert!(r.piercing.is_none());
        assert!(r.conclusion.starts_with("hypothesis failed"));
    }
}
