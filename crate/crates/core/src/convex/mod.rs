//! Closed convex polyhedra in H- or V-representation, and families of them.
//!
//! A V-representation denotes `conv(points) + cone(rays)`; it is always
//! closed and nonempty. An H-representation is a finite intersection of
//! halfspaces `normal · x <= offset` and may be empty.

mod basis;
mod membership;
mod projection;
mod recession;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exact::rational::{serde_rat, Rational};
use crate::exact::Point;

pub use basis::BasisChange;
pub use membership::{contains_point, intersect_nonempty, JointLp};
pub use projection::{
    lifted_projection_intersect, lifted_projection_witness, project_drop_last, LiftedWitness,
};
pub use recession::{common_recession_direction, in_recession_cone, is_bounded, recession_cone};

/// `{x : normal · x <= offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Point,
    #[serde(with = "serde_rat")]
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Point, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.normal.dot(x) <= self.offset
    }

    fn is_degenerate(&self) -> bool {
        self.normal.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rep {
    H(Vec<Halfspace>),
    V {
        points: Vec<Point>,
        rays: Vec<Point>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetDto", into = "SetDto")]
pub struct ConvexSet {
    label: String,
    dim: usize,
    rep: Rep,
}

impl ConvexSet {
    pub fn hrep(label: impl Into<String>, dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        let label = label.into();
        check_dim_positive(dim)?;
        for h in &halfspaces {
            h.normal.check_dim(dim)?;
            if h.is_degenerate() && h.offset.is_negative() {
                return Err(Error::Malformed(format!(
                    "set {label:?}: zero normal with negative offset"
                )));
            }
        }
        Ok(ConvexSet {
            label,
            dim,
            rep: Rep::H(halfspaces),
        })
    }

    pub fn vrep(
        label: impl Into<String>,
        dim: usize,
        points: Vec<Point>,
        rays: Vec<Point>,
    ) -> Result<Self> {
        let label = label.into();
        check_dim_positive(dim)?;
        if points.is_empty() {
            return Err(Error::Malformed(format!("set {label:?}: no points")));
        }
        for p in points.iter().chain(&rays) {
            p.check_dim(dim)?;
        }
        Ok(ConvexSet {
            label,
            dim,
            rep: Rep::V { points, rays },
        })
    }

    pub fn singleton(label: impl Into<String>, p: Point) -> Result<Self> {
        let dim = p.dim();
        Self::vrep(label, dim, vec![p], vec![])
    }

    /// Axis-aligned box `[lo, hi]` as an H-representation.
    pub fn hbox(label: impl Into<String>, lo: &Point, hi: &Point) -> Result<Self> {
        let dim = lo.dim();
        hi.check_dim(dim)?;
        let mut hs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let e = Point::unit(dim, i);
            hs.push(Halfspace::new(
                e.scale(&-Rational::from_integer(1.into())),
                -lo[i].clone(),
            ));
            hs.push(Halfspace::new(e, hi[i].clone()));
        }
        Self::hrep(label, dim, hs)
    }

    /// Axis-aligned box `[lo, hi]` listed by its `2^d` corners.
    pub fn vbox(label: impl Into<String>, lo: &Point, hi: &Point) -> Result<Self> {
        let dim = lo.dim();
        hi.check_dim(dim)?;
        let corners = (0..1usize << dim)
            .map(|mask| {
                Point::new(
                    (0..dim)
                        .map(|i| {
                            if mask >> i & 1 == 1 {
                                hi[i].clone()
                            } else {
                                lo[i].clone()
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        Self::vrep(label, dim, corners, vec![])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_vrep(&self) -> bool {
        matches!(self.rep, Rep::V { .. })
    }

    /// True for sets whose representation is a cone with apex at the origin.
    pub fn is_cone(&self) -> bool {
        match &self.rep {
            Rep::H(hs) => hs.iter().all(|h| h.offset.is_zero()),
            Rep::V { points, .. } => points.iter().all(Point::is_zero),
        }
    }

    /// Some point of the set: the first listed point for a V-representation,
    /// an LP witness for an H-representation (`None` if empty).
    pub fn some_point(&self) -> Result<Option<Point>> {
        match &self.rep {
            Rep::V { points, .. } => Ok(Some(points[0].clone())),
            Rep::H(_) => {
                let mut lp = JointLp::new(self.dim);
                lp.constrain_ambient(self);
                lp.solve()
            }
        }
    }
}

fn check_dim_positive(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidParameter("dimension must be positive".into()))
    } else {
        Ok(())
    }
}

/// An ordered, labelled list of sets of one common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyDto", into = "FamilyDto")]
pub struct Family {
    dim: usize,
    sets: Vec<ConvexSet>,
}

impl Family {
    pub fn new(dim: usize, sets: Vec<ConvexSet>) -> Result<Self> {
        check_dim_positive(dim)?;
        let mut seen = HashSet::new();
        for s in &sets {
            if s.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim,
                });
            }
            if !seen.insert(s.label.as_str()) {
                return Err(Error::Malformed(format!("duplicate label {:?}", s.label)));
            }
        }
        Ok(Family { dim, sets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sets(&self) -> &[ConvexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn get(&self, i: usize) -> &ConvexSet {
        &self.sets[i]
    }

    pub fn push(&mut self, set: ConvexSet) -> Result<()> {
        let mut sets = std::mem::take(&mut self.sets);
        sets.push(set);
        *self = Family::new(self.dim, sets)?;
        Ok(())
    }

    /// Concatenation of two families of the same dimension.
    pub fn union(&self, other: &Family) -> Result<Family> {
        let mut sets = self.sets.clone();
        sets.extend(other.sets.iter().cloned());
        Family::new(self.dim, sets)
    }

    /// The subfamily at the given indices, in the given order.
    pub fn subfamily(&self, indices: &[usize]) -> Result<Family> {
        self.check_indices(indices)?;
        Family::new(
            self.dim,
            indices.iter().map(|&i| self.sets[i].clone()).collect(),
        )
    }

    pub fn check_indices(&self, indices: &[usize]) -> Result<()> {
        match indices.iter().find(|&&i| i >= self.sets.len()) {
            Some(&index) => Err(Error::IndexOutOfRange {
                index,
                len: self.sets.len(),
            }),
            None => Ok(()),
        }
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.sets.len()).collect()
    }
}

/// `conv` of the union of V-represented members: all points and rays
/// concatenated.
pub fn convex_hull_union(fam: &Family, indices: &[usize]) -> Result<ConvexSet> {
    if indices.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    fam.check_indices(indices)?;
    let (mut points, mut rays) = (Vec::new(), Vec::new());
    let mut labels = Vec::with_capacity(indices.len());
    for &i in indices {
        let s = fam.get(i);
        match s.rep() {
            Rep::V { points: p, rays: r } => {
                points.extend(p.iter().cloned());
                rays.extend(r.iter().cloned());
            }
            Rep::H(_) => return Err(Error::NotVRep(s.label().to_string())),
        }
        labels.push(s.label());
    }
    ConvexSet::vrep(
        format!("conv({})", labels.join(" ∪ ")),
        fam.dim(),
        points,
        rays,
    )
}

#[derive(Serialize, Deserialize)]
struct VRepDto {
    points: Vec<Point>,
    #[serde(default)]
    rays: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDto {
    label: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vrep: Option<VRepDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hrep: Option<Vec<Halfspace>>,
}

impl TryFrom<SetDto> for ConvexSet {
    type Error = Error;

    fn try_from(dto: SetDto) -> Result<Self> {
        match (dto.vrep, dto.hrep) {
            (Some(v), None) => ConvexSet::vrep(dto.label, dto.dim, v.points, v.rays),
            (None, Some(h)) => ConvexSet::hrep(dto.label, dto.dim, h),
            _ => Err(Error::Malformed(format!(
                "set {:?}: exactly one of \"vrep\" or \"hrep\" is required",
                dto.label
            ))),
        }
    }
}

impl From<ConvexSet> for SetDto {
    fn from(s: ConvexSet) -> Self {
        let (vrep, hrep) = match s.rep {
            Rep::V { points, rays } => (Some(VRepDto { points, rays }), None),
            Rep::H(hs) => (None, Some(hs)),
        };
        SetDto {
            label: s.label,
            dim: s.dim,
            vrep,
            hrep,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyDto {
    dimension: usize,
    sets: Vec<ConvexSet>,
}

impl TryFrom<FamilyDto> for Family {
    type Error = Error;

    fn try_from(dto: FamilyDto) -> Result<Self> {
        Family::new(dto.dimension, dto.sets)
    }
}

impl From<Family> for FamilyDto {
    fn from(f: Family) -> Self {
        FamilyDto {
            dimension: f.dim,
            sets: f.sets,
        }
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn hull_of_unions() {
        use super::*;
        let f0 = ConvexSet::singleton("F0", Point::from_ints(&[0])).unwrap();
        let seg = ConvexSet::vrep(
            "I",
            1,
            vec![Point::from_ints(&[2]), Point::from_ints(&[3])],
            vec![],
        )
        .unwrap();
        let half = ConvexSet::hbox("H", &Point::from_ints(&[0]), &Point::from_ints(&[1])).unwrap();
        let fam = Family::new(1, vec![f0, seg, half]).unwrap();
        let hull = convex_hull_union(&fam, &[0, 1]).unwrap();
        assert_eq!(hull.label(), "conv(F0 ∪ I)");
        for (x, inside) in [(0, true), (1, true), (3, true), (4, false), (-1, false)] {
            assert_eq!(
                contains_point(&hull, &Point::from_ints(&[x])).unwrap(),
                inside
            );
        }
        assert!(matches!(
            convex_hull_union(&fam, &[0, 2]),
            Err(Error::NotVRep(_))
        ));
        assert!(convex_hull_union(&fam, &[]).is_err());
    }

    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn json_round_trip() {
        let text = r#"{"dimension": 2, "sets": [
            {"label": "A", "dim": 2, "vrep": {"points": [[0, "1/2"], [2, 0]], "rays": [[1, 0]]}},
            {"label": "H", "dim": 2, "hrep": [{"normal": [1, 1], "offset": "-3/7"}]}
        ]}"#;
        let fam: Family = serde_json::from_str(text).unwrap();
        assert_eq!(fam.len(), 2);
        match fam.get(1).rep() {
            Rep::H(hs) => assert_eq!(hs[0].offset, rat(-3, 7)),
            _ => panic!(),
        }
        let back: Family = serde_json::from_str(&serde_json::to_string(&fam).unwrap()).unwrap();
        assert_eq!(back, fam);
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(serde_json::from_str::<ConvexSet>(
            r#"{"label":"x","dim":1,"vrep":{"points":[["1/0"]]}}"#
        )
        .is_err());
        assert!(serde_json::from_str::<ConvexSet>(
            r#"{"label":"x","dim":2,"vrep":{"points":[[1]]}}"#
        )
        .is_err());
        assert!(serde_json::from_str::<ConvexSet>(r#"{"label":"x","dim":1}"#).is_err());
        assert!(ConvexSet::vrep("e", 1, vec![], vec![]).is_err());
        assert!(ConvexSet::hrep("e", 1, vec![Halfspace::new(Point::origin(1), int(-1))]).is_err());
    }

    #[test]
    fn family_invariants() {
        let a = ConvexSet::singleton("a", Point::from_ints(&[0])).unwrap();
        let b = ConvexSet::singleton("a", Point::from_ints(&[1])).unwrap();
        assert!(Family::new(1, vec![a.clone(), b]).is_err());
        let c = ConvexSet::singleton("c", Point::from_ints(&[0, 0])).unwrap();
        assert!(Family::new(1, vec![a, c]).is_err());
    }

    #[test]
    fn boxes_agree() {
        let lo = Point::from_ints(&[0, 0]);
        let hi = Point::from_ints(&[1, 2]);
        let h = ConvexSet::hbox("h", &lo, &hi).unwrap();
        let v = ConvexSet::vbox("v", &lo, &hi).unwrap();
        for x in -1..=2 {
            for y in -1..=3 {
                let p = Point::new(vec![rat(x, 1), rat(y, 1)]);
                assert_eq!(
                    contains_point(&h, &p).unwrap(),
                    contains_point(&v, &p).unwrap()
                );
            }
        }
    }
}
