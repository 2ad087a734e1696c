use num_traits::{One, Zero};

use super::{ConvexSet, Family, Rep};
use crate::error::{Error, Result};
use crate::exact::simplex::{lp_feasible, LinearSystem, Relation};
use crate::exact::{Point, Rational};

/// Builder for feasibility systems of the form "this point lies in these sets".
///
/// Variables `0..ambient` are the shared point. Each V-represented member
/// gets its own block of convex and conic coefficients; H-represented
/// members contribute their halfspace rows directly.
#[derive(Clone, Debug)]
pub struct JointLp {
    sys: LinearSystem,
    ambient: usize,
}

impl JointLp {
    pub fn new(ambient: usize) -> Self {
        JointLp {
            sys: LinearSystem::new(ambient),
            ambient,
        }
    }

    pub fn system(&self) -> &LinearSystem {
        &self.sys
    }

    pub fn system_mut(&mut self) -> &mut LinearSystem {
        &mut self.sys
    }

    pub fn add_vars(&mut self, n: usize, nonneg: bool) -> usize {
        self.sys.add_vars(n, nonneg)
    }

    /// Requires the shared point to lie in `set`.
    pub fn constrain_ambient(&mut self, set: &ConvexSet) {
        let vars: Vec<usize> = (0..self.ambient).collect();
        self.constrain(set, &vars);
    }

    /// Requires the point whose coordinates are the variables `coord_vars`
    /// to lie in `set`.
    pub fn constrain(&mut self, set: &ConvexSet, coord_vars: &[usize]) {
        debug_assert_eq!(coord_vars.len(), set.dim());
        match set.rep() {
            Rep::H(hs) => {
                for h in hs {
                    let terms: Vec<(usize, Rational)> = coord_vars
                        .iter()
                        .zip(h.normal.coords())
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(&v, c)| (v, c.clone()))
                        .collect();
                    self.sys.push_sparse(&terms, Relation::Le, h.offset.clone());
                }
            }
            Rep::V { points, rays } => {
                let lam = self.sys.add_vars(points.len(), true);
                let mu = self.sys.add_vars(rays.len(), true);
                let sum: Vec<(usize, Rational)> = (0..points.len())
                    .map(|k| (lam + k, Rational::one()))
                    .collect();
                self.sys.push_sparse(&sum, Relation::Eq, Rational::one());
                for (i, &xv) in coord_vars.iter().enumerate() {
                    let mut terms = vec![(xv, Rational::one())];
                    for (k, p) in points.iter().enumerate() {
                        if !p[i].is_zero() {
                            terms.push((lam + k, -p[i].clone()));
                        }
                    }
                    for (k, r) in rays.iter().enumerate() {
                        if !r[i].is_zero() {
                            terms.push((mu + k, -r[i].clone()));
                        }
                    }
                    self.sys.push_sparse(&terms, Relation::Eq, Rational::zero());
                }
            }
        }
    }

    /// Solves and returns the values of all variables.
    pub fn solve_all(&self) -> Result<Option<Point>> {
        lp_feasible(&self.sys)
    }

    /// Solves and returns the shared point.
    pub fn solve(&self) -> Result<Option<Point>> {
        Ok(self
            .solve_all()?
            .map(|w| Point::new(w.coords()[..self.ambient].to_vec())))
    }
}

/// Exact membership test.
pub fn contains_point(s: &ConvexSet, x: &Point) -> Result<bool> {
    x.check_dim(s.dim())?;
    match s.rep() {
        Rep::H(hs) => Ok(hs.iter().all(|h| h.contains(x))),
        Rep::V { points, rays } => {
            // Solve for the coefficients with the point fixed.
            let n = points.len() + rays.len();
            let mut sys = LinearSystem::new(n);
            sys.nonneg.extend(0..n);
            let mut sum = vec![Rational::zero(); n];
            for s in sum.iter_mut().take(points.len()) {
                *s = Rational::one();
            }
            sys.add_eq(sum, Rational::one());
            for i in 0..s.dim() {
                let row = points.iter().chain(rays).map(|g| g[i].clone()).collect();
                sys.add_eq(row, x[i].clone());
            }
            Ok(lp_feasible(&sys)?.is_some())
        }
    }
}

/// Decides whether the indexed members share a point, returning one if so.
pub fn intersect_nonempty(fam: &Family, indices: &[usize]) -> Result<Option<Point>> {
    if indices.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    fam.check_indices(indices)?;
    let mut lp = JointLp::new(fam.dim());
    for &i in indices {
        lp.constrain_ambient(fam.get(i));
    }
    let witness = lp.solve()?;
    if let Some(w) = &witness {
        debug_assert!(indices
            .iter()
            .all(|&i| contains_point(fam.get(i), w).unwrap_or(false)));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::Halfspace;
    use crate::exact::rational::{int, rat};

    fn unit_square() -> ConvexSet {
        ConvexSet::hbox("sq", &Point::from_ints(&[0, 0]), &Point::from_ints(&[1, 1])).unwrap()
    }

    fn a2() -> ConvexSet {
        ConvexSet::vrep(
            "A_2",
            2,
            vec![
                Point::new(vec![int(0), rat(1, 2)]),
                Point::from_ints(&[2, 0]),
            ],
            vec![Point::from_ints(&[1, 0])],
        )
        .unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(contains_point(&unit_square(), &Point::new(vec![rat(1, 2), rat(1, 2)])).unwrap());
        let seg = ConvexSet::vrep(
            "seg",
            1,
            vec![Point::from_ints(&[0]), Point::from_ints(&[1])],
            vec![],
        )
        .unwrap();
        assert!(!contains_point(&seg, &Point::from_ints(&[2])).unwrap());
        assert!(contains_point(&a2(), &Point::from_ints(&[5, 0])).unwrap());
        assert!(!contains_point(&a2(), &Point::from_ints(&[1, 0])).unwrap());
        assert!(contains_point(&a2(), &Point::new(vec![int(1), rat(1, 4)])).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch() {
        assert!(matches!(
            contains_point(&unit_square(), &Point::from_ints(&[0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn intersection_examples() {
        let single = Family::new(2, vec![a2()]).unwrap();
        assert_eq!(
            intersect_nonempty(&single, &[0])
                .unwrap()
                .map(|w| contains_point(&a2(), &w).unwrap()),
            Some(true)
        );

        let f0 = ConvexSet::singleton("F0", Point::from_ints(&[0])).unwrap();
        let f1 = ConvexSet::vrep(
            "F1",
            1,
            vec![Point::from_ints(&[1])],
            vec![Point::from_ints(&[1])],
        )
        .unwrap();
        let g = Family::new(1, vec![f0, f1]).unwrap();
        assert_eq!(intersect_nonempty(&g, &[0, 1]).unwrap(), None);
        assert_eq!(intersect_nonempty(&g, &[]), Err(Error::EmptyIndexSet));
        assert!(matches!(
            intersect_nonempty(&g, &[2]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn mixed_representations() {
        let half = ConvexSet::hrep(
            "x+y<=1",
            2,
            vec![Halfspace::new(Point::from_ints(&[1, 1]), int(1))],
        )
        .unwrap();
        let fam = Family::new(2, vec![half, a2()]).unwrap();
        let w = intersect_nonempty(&fam, &[0, 1]).unwrap().unwrap();
        assert!(contains_point(fam.get(0), &w).unwrap());
        assert!(contains_point(fam.get(1), &w).unwrap());
    }
}
