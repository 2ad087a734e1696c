//! Recession cones and common recession directions.

use num_traits::{One, Signed, Zero};

use super::{ConvexSet, Family, Halfspace, Rep};
use crate::error::{Error, Result};
use crate::exact::simplex::{lp_feasible, LinearSystem, Relation};
use crate::exact::{Point, Rational};

/// The recession cone `{v : a + t v in s for all t >= 0}`.
///
/// For an H-representation this is `{v : normal · v <= 0}`; for a
/// V-representation it is `cone(rays)`, returned with the origin as its
/// single point.
pub fn recession_cone(s: &ConvexSet) -> Result<ConvexSet> {
    let label = format!("C({})", s.label());
    match s.rep() {
        Rep::H(hs) => {
            if s.some_point()?.is_none() {
                return Err(Error::EmptySet(s.label().to_string()));
            }
            let cone = hs
                .iter()
                .filter(|h| !h.normal.is_zero())
                .map(|h| Halfspace::new(h.normal.clone(), Rational::zero()))
                .collect();
            ConvexSet::hrep(label, s.dim(), cone)
        }
        Rep::V { rays, .. } => {
            ConvexSet::vrep(label, s.dim(), vec![Point::origin(s.dim())], rays.clone())
        }
    }
}

/// Appends "v lies in the recession cone of `s`" over the variables
/// `v_vars` of `sys`.
fn constrain_direction(sys: &mut LinearSystem, s: &ConvexSet, v_vars: &[usize]) {
    match s.rep() {
        Rep::H(hs) => {
            for h in hs {
                let terms: Vec<(usize, Rational)> = v_vars
                    .iter()
                    .zip(h.normal.coords())
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&v, c)| (v, c.clone()))
                    .collect();
                if !terms.is_empty() {
                    sys.push_sparse(&terms, Relation::Le, Rational::zero());
                }
            }
        }
        Rep::V { rays, .. } => {
            let mu = sys.add_vars(rays.len(), true);
            for (i, &vv) in v_vars.iter().enumerate() {
                let mut terms = vec![(vv, Rational::one())];
                for (k, r) in rays.iter().enumerate() {
                    if !r[i].is_zero() {
                        terms.push((mu + k, -r[i].clone()));
                    }
                }
                sys.push_sparse(&terms, Relation::Eq, Rational::zero());
            }
        }
    }
}

/// Exact test of `v ∈ C(s)`.
pub fn in_recession_cone(s: &ConvexSet, v: &Point) -> Result<bool> {
    v.check_dim(s.dim())?;
    match s.rep() {
        Rep::H(hs) => Ok(hs.iter().all(|h| !h.normal.dot(v).is_positive())),
        Rep::V { .. } => {
            let mut sys = LinearSystem::new(s.dim());
            let vars: Vec<usize> = (0..s.dim()).collect();
            constrain_direction(&mut sys, s, &vars);
            for (i, c) in v.coords().iter().enumerate() {
                sys.push_sparse(&[(i, Rational::one())], Relation::Eq, c.clone());
            }
            Ok(lp_feasible(&sys)?.is_some())
        }
    }
}

/// Probes the signed coordinate functionals in order `+e_1, -e_1, +e_2, ...`
/// over the conjunction of the given cone systems; the first feasible probe
/// yields a nonzero direction.
fn probe_directions(dim: usize, sets: &[&ConvexSet]) -> Result<Option<Point>> {
    let mut base = LinearSystem::new(dim);
    let vars: Vec<usize> = (0..dim).collect();
    for s in sets {
        constrain_direction(&mut base, s, &vars);
    }
    for axis in 0..dim {
        for sign in [Rational::one(), -Rational::one()] {
            let mut sys = base.clone();
            sys.push_sparse(&[(axis, Rational::one())], Relation::Eq, sign);
            if let Some(w) = lp_feasible(&sys)? {
                return Ok(Some(Point::new(w.coords()[..dim].to_vec())));
            }
        }
    }
    Ok(None)
}

/// A nonzero direction in every member's recession cone, if one exists.
pub fn common_recession_direction(fam: &Family) -> Result<Option<Point>> {
    let sets: Vec<&ConvexSet> = fam.sets().iter().collect();
    let v = probe_directions(fam.dim(), &sets)?;
    if let Some(v) = &v {
        for s in fam.sets() {
            debug_assert!(in_recession_cone(s, v)?, "direction escapes {}", s.label());
        }
    }
    Ok(v)
}

/// Whether `s` is bounded, i.e. its recession cone is `{0}`.
pub fn is_bounded(s: &ConvexSet) -> Result<bool> {
    match s.rep() {
        Rep::V { rays, .. } => Ok(rays.iter().all(Point::is_zero)),
        Rep::H(_) => Ok(probe_directions(s.dim(), &[s])?.is_none()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::contains_point;
    use crate::exact::rational::{int, rat};

    fn quadrant() -> ConvexSet {
        ConvexSet::hrep(
            "Q",
            2,
            vec![
                Halfspace::new(Point::from_ints(&[-1, 0]), int(0)),
                Halfspace::new(Point::from_ints(&[0, -1]), int(0)),
            ],
        )
        .unwrap()
    }

    fn a_n(n: i64) -> ConvexSet {
        ConvexSet::vrep(
            format!("A_{n}"),
            2,
            vec![
                Point::new(vec![int(0), rat(1, n)]),
                Point::from_ints(&[n, 0]),
            ],
            vec![Point::from_ints(&[1, 0])],
        )
        .unwrap()
    }

    #[test]
    fn quadrant_is_own_cone() {
        let c = recession_cone(&quadrant()).unwrap();
        assert!(c.is_cone());
        assert_eq!(c.rep(), quadrant().rep());
    }

    #[test]
    fn compact_has_trivial_cone() {
        let sq =
            ConvexSet::vbox("sq", &Point::from_ints(&[0, 0]), &Point::from_ints(&[1, 1])).unwrap();
        let c = recession_cone(&sq).unwrap();
        assert!(c.is_cone());
        assert!(is_bounded(&c).unwrap());
        assert!(!in_recession_cone(&sq, &Point::from_ints(&[1, 0])).unwrap());
    }

    #[test]
    fn a_n_cone_is_e1_ray() {
        let c = recession_cone(&a_n(3)).unwrap();
        assert!(contains_point(&c, &Point::from_ints(&[7, 0])).unwrap());
        assert!(!contains_point(&c, &Point::from_ints(&[1, 1])).unwrap());
        assert!(!contains_point(&c, &Point::from_ints(&[-1, 0])).unwrap());
    }

    #[test]
    fn empty_hrep_has_no_cone() {
        let empty = ConvexSet::hrep(
            "E",
            1,
            vec![
                Halfspace::new(Point::from_ints(&[1]), int(-1)),
                Halfspace::new(Point::from_ints(&[-1]), int(0)),
            ],
        )
        .unwrap();
        assert!(matches!(recession_cone(&empty), Err(Error::EmptySet(_))));
    }

    #[test]
    fn common_direction_examples() {
        let fam = Family::new(2, vec![a_n(2), a_n(3), a_n(4)]).unwrap();
        let v = common_recession_direction(&fam).unwrap().unwrap();
        assert!(v[0].is_positive() && v[1].is_zero());

        let sq = |l: &str, o: i64| {
            ConvexSet::vbox(
                l,
                &Point::from_ints(&[o, o]),
                &Point::from_ints(&[o + 1, o + 1]),
            )
            .unwrap()
        };
        let fam = Family::new(2, vec![sq("a", 0), sq("b", 3)]).unwrap();
        assert_eq!(common_recession_direction(&fam).unwrap(), None);

        // {x2 >= 0} and {x2 >= x1}
        let h1 = ConvexSet::hrep(
            "h1",
            2,
            vec![Halfspace::new(Point::from_ints(&[0, -1]), int(0))],
        )
        .unwrap();
        let h2 = ConvexSet::hrep(
            "h2",
            2,
            vec![Halfspace::new(Point::from_ints(&[1, -1]), int(0))],
        )
        .unwrap();
        let fam = Family::new(2, vec![h1, h2]).unwrap();
        let v = common_recession_direction(&fam).unwrap().unwrap();
        assert!(v[1] >= v[0] && !v[1].is_negative());
        assert!(!v.is_zero());
    }

    #[test]
    fn boundedness() {
        assert!(!is_bounded(&a_n(2)).unwrap());
        let ray = ConvexSet::hrep(
            "x>=0",
            1,
            vec![Halfspace::new(Point::from_ints(&[-1]), int(0))],
        )
        .unwrap();
        assert!(!is_bounded(&ray).unwrap());
        let cube = ConvexSet::hbox(
            "cube",
            &Point::from_ints(&[0, 0, 0]),
            &Point::from_ints(&[1, 1, 1]),
        )
        .unwrap();
        assert!(is_bounded(&cube).unwrap());
    }

    #[test]
    fn ray_property_at_sampled_lengths() {
        let s = a_n(5);
        let c = recession_cone(&s).unwrap();
        let v = Point::from_ints(&[2, 0]);
        assert!(contains_point(&c, &v).unwrap());
        let a = Point::new(vec![int(1), rat(9, 50)]);
        assert!(contains_point(&s, &a).unwrap());
        for t in [1, 10, 1000] {
            assert!(contains_point(&s, &(&a + &v.scale(&int(t)))).unwrap());
        }
    }
}
