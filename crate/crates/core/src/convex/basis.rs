use num_traits::Zero;

use super::{ConvexSet, Family, Halfspace, Rep};
use crate::error::{Error, Result};
use crate::exact::{invert, Matrix, Point};

/// An exact linear change of coordinates `x = Q z` whose last column is a
/// given direction `v`, so that `v` becomes `e_d` in the new coordinates.
///
/// `Q` is the identity with column `j` removed and `v` appended, where `j`
/// is the last nonzero coordinate of `v`. When `v = e_d` the change is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    to_old: Matrix,
    to_new: Matrix,
}

impl BasisChange {
    pub fn moving_to_last_axis(v: &Point) -> Result<Self> {
        let d = v.dim();
        let Some(pivot) = (0..d).rev().find(|&i| !v[i].is_zero()) else {
            return Err(Error::InvalidParameter("zero direction".into()));
        };
        let mut columns: Vec<Point> = (0..d)
            .filter(|&i| i != pivot)
            .map(|i| Point::unit(d, i))
            .collect();
        columns.push(v.clone());
        let to_old = Matrix::from_points(&columns)?.transpose();
        let to_new = invert(&to_old)?.expect("basis completion is invertible");
        Ok(BasisChange { to_old, to_new })
    }

    pub fn to_new(&self, x: &Point) -> Point {
        self.to_new.mul_vec(x)
    }

    pub fn to_old(&self, z: &Point) -> Point {
        self.to_old.mul_vec(z)
    }

    pub fn apply_set(&self, s: &ConvexSet) -> Result<ConvexSet> {
        match s.rep() {
            Rep::V { points, rays } => ConvexSet::vrep(
                s.label(),
                s.dim(),
                points.iter().map(|p| self.to_new(p)).collect(),
                rays.iter().map(|r| self.to_new(r)).collect(),
            ),
            Rep::H(hs) => {
                // n · x = n · Q z = (Qᵀ n) · z
                let qt = self.to_old.transpose();
                ConvexSet::hrep(
                    s.label(),
                    s.dim(),
                    hs.iter()
                        .map(|h| Halfspace::new(qt.mul_vec(&h.normal), h.offset.clone()))
                        .collect(),
                )
            }
        }
    }

    pub fn apply_family(&self, fam: &Family) -> Result<Family> {
        Family::new(
            fam.dim(),
            fam.sets()
                .iter()
                .map(|s| self.apply_set(s))
                .collect::<Result<_>>()?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::{contains_point, in_recession_cone};
    use crate::exact::rational::{int, rat};

    #[test]
    fn identity_for_last_axis() {
        let b = BasisChange::moving_to_last_axis(&Point::unit(3, 2)).unwrap();
        let x = Point::new(vec![rat(1, 2), int(-3), int(7)]);
        assert_eq!(b.to_new(&x), x);
    }

    #[test]
    fn direction_becomes_last_axis() {
        let v = Point::from_ints(&[2, -1, 0]);
        let b = BasisChange::moving_to_last_axis(&v).unwrap();
        assert_eq!(b.to_new(&v), Point::unit(3, 2));
        let x = Point::new(vec![rat(5, 3), int(1), int(-2)]);
        assert_eq!(b.to_old(&b.to_new(&x)), x);
        assert!(BasisChange::moving_to_last_axis(&Point::origin(2)).is_err());
    }

    #[test]
    fn sets_move_consistently() {
        let v = Point::from_ints(&[1, 0]);
        let b = BasisChange::moving_to_last_axis(&v).unwrap();
        let h = ConvexSet::hrep(
            "h",
            2,
            vec![
                Halfspace::new(Point::from_ints(&[0, 1]), int(1)),
                Halfspace::new(Point::from_ints(&[-1, -1]), int(0)),
            ],
        )
        .unwrap();
        let a = ConvexSet::vrep("a", 2, vec![Point::from_ints(&[0, 1])], vec![v.clone()]).unwrap();
        let (h2, a2) = (b.apply_set(&h).unwrap(), b.apply_set(&a).unwrap());
        for x in -2..=2 {
            for y in -2..=2 {
                let p = Point::from_ints(&[x, y]);
                let q = b.to_new(&p);
                assert_eq!(
                    contains_point(&h, &p).unwrap(),
                    contains_point(&h2, &q).unwrap()
                );
                assert_eq!(
                    contains_point(&a, &p).unwrap(),
                    contains_point(&a2, &q).unwrap()
                );
            }
        }
        assert!(in_recession_cone(&a2, &Point::unit(2, 1)).unwrap());
        assert!(in_recession_cone(&h2, &Point::unit(2, 1)).unwrap());
    }
}
