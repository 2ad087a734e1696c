//! Projection along the last coordinate.

use num_traits::{Signed, Zero};

use super::membership::JointLp;
use super::{ConvexSet, Family, Halfspace, Rep};
use crate::error::{Error, Result};
use crate::exact::simplex::{lp_minimize, LinearSystem, Minimum};
use crate::exact::{Point, Rational};

/// Image of `s` under `(x_1, ..., x_d) -> (x_1, ..., x_{d-1})`.
///
/// V-representations are projected generator by generator. H-representations
/// go through one Fourier–Motzkin step; output rows are scaled to a canonical
/// form and deduplicated, and with `remove_redundant` every row implied by
/// the others is dropped as well (one LP per row).
pub fn project_drop_last(s: &ConvexSet, remove_redundant: bool) -> Result<ConvexSet> {
    let d = s.dim();
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "cannot project {:?} of dimension {d}",
            s.label()
        )));
    }
    let label = format!("Π({})", s.label());
    match s.rep() {
        Rep::V { points, rays } => ConvexSet::vrep(
            label,
            d - 1,
            points.iter().map(Point::drop_last).collect(),
            rays.iter().map(Point::drop_last).collect(),
        ),
        Rep::H(hs) => {
            let mut rows = fourier_motzkin(hs, d);
            if remove_redundant {
                rows = drop_redundant(rows, d - 1)?;
            }
            ConvexSet::hrep(label, d - 1, rows)
        }
    }
}

fn fourier_motzkin(hs: &[Halfspace], d: usize) -> Vec<Halfspace> {
    let last = d - 1;
    let (mut kept, mut upper, mut lower) = (Vec::new(), Vec::new(), Vec::new());
    for h in hs {
        let c = &h.normal[last];
        if c.is_zero() {
            kept.push((h.normal.drop_last(), h.offset.clone()));
        } else {
            // Divide by |c| so the last coefficient is +1 or -1.
            let scale = c.abs().recip();
            let row = (h.normal.scale(&scale).drop_last(), &h.offset * &scale);
            if c.is_positive() {
                upper.push(row);
            } else {
                lower.push(row);
            }
        }
    }
    for (un, uo) in &upper {
        for (ln, lo) in &lower {
            kept.push((un + ln, uo + lo));
        }
    }

    let mut out: Vec<Halfspace> = Vec::new();
    let mut infeasible = false;
    for (normal, offset) in kept {
        if normal.is_zero() {
            infeasible |= offset.is_negative();
            continue;
        }
        let h = canonical(normal, offset);
        if !out.contains(&h) {
            out.push(h);
        }
    }
    if infeasible {
        // Zero-normal rows with negative offset are not representable; use a
        // contradictory pair instead.
        let e = Point::unit(d - 1, 0);
        out = vec![
            Halfspace::new(e.clone(), -Rational::from_integer(1.into())),
            Halfspace::new(
                e.scale(&-Rational::from_integer(1.into())),
                Rational::zero(),
            ),
        ];
    }
    out
}

/// Scales so that the first nonzero normal coefficient has absolute value one.
fn canonical(normal: Point, offset: Rational) -> Halfspace {
    let lead = normal
        .coords()
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero normal")
        .abs()
        .recip();
    Halfspace::new(normal.scale(&lead), offset * lead)
}

fn drop_redundant(mut rows: Vec<Halfspace>, dim: usize) -> Result<Vec<Halfspace>> {
    let mut i = 0;
    while i < rows.len() {
        let mut sys = LinearSystem::new(dim);
        for (j, h) in rows.iter().enumerate() {
            if j != i {
                sys.add_le(h.normal.coords().to_vec(), h.offset.clone());
            }
        }
        let objective: Vec<Rational> = rows[i].normal.coords().iter().map(|c| -c).collect();
        let redundant = match lp_minimize(&sys, &objective)? {
            Minimum::Infeasible => true,
            Minimum::Unbounded => false,
            Minimum::Optimal { value, .. } => -value <= rows[i].offset,
        };
        if redundant {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(rows)
}

/// Witness of a common point of the shadows `Π(A ∩ box)`: the shared
/// first `d-1` coordinates and, per member, a last coordinate realising it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedWitness {
    pub shadow: Point,
    pub heights: Vec<Rational>,
}

fn check_box(fam: &Family, bx: &ConvexSet) -> Result<()> {
    if bx.dim() != fam.dim() {
        return Err(Error::DimensionMismatch {
            expected: fam.dim(),
            found: bx.dim(),
        });
    }
    match bx.rep() {
        Rep::V { rays, .. } if rays.iter().all(Point::is_zero) => Ok(()),
        Rep::V { .. } => Err(Error::NotCompact(bx.label().to_string())),
        Rep::H(_) => Err(Error::NotVRep(bx.label().to_string())),
    }
}

/// Decides `⋂ Π(A ∩ box) != ∅` over the indexed members with a single LP:
/// shared first `d-1` coordinates and an independent last coordinate per
/// member.
pub fn lifted_projection_witness(
    fam: &Family,
    indices: &[usize],
    bx: &ConvexSet,
) -> Result<Option<LiftedWitness>> {
    if indices.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    fam.check_indices(indices)?;
    check_box(fam, bx)?;
    let d = fam.dim();
    let mut lp = JointLp::new(d - 1);
    let t0 = lp.add_vars(indices.len(), false);
    for (k, &i) in indices.iter().enumerate() {
        let mut vars: Vec<usize> = (0..d - 1).collect();
        vars.push(t0 + k);
        lp.constrain(fam.get(i), &vars);
        lp.constrain(bx, &vars);
    }
    Ok(lp.solve_all()?.map(|w| LiftedWitness {
        shadow: Point::new(w.coords()[..d - 1].to_vec()),
        heights: w.coords()[t0..t0 + indices.len()].to_vec(),
    }))
}

pub fn lifted_projection_intersect(
    fam: &Family,
    indices: &[usize],
    bx: &ConvexSet,
) -> Result<bool> {
    Ok(lifted_projection_witness(fam, indices, bx)?.is_some())
}
