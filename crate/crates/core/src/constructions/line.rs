use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convex::{ConvexSet, Family};
use crate::error::{Error, Result};
use crate::exact::{int, rat, Point, Rational};
use crate::pq::is_m_free;

/// `copies` singletons `{0}` followed by the rays `[n, ∞)` for `n = 1..=n_max`.
pub fn gruenbaum_line(n_max: u64, copies: usize) -> Result<Family> {
    if n_max == 0 || copies == 0 {
        return Err(Error::InvalidParameter(
            "n_max and copies must be positive".into(),
        ));
    }
    let mut sets: Vec<ConvexSet> = (0..copies)
        .map(|c| ConvexSet::singleton(format!("F0{}", "'".repeat(c)), Point::from_ints(&[0])))
        .collect::<Result<_>>()?;
    for n in 1..=n_max {
        sets.push(ConvexSet::vrep(
            format!("F{n}"),
            1,
            vec![Point::from_ints(&[n as i64])],
            vec![Point::from_ints(&[1])],
        )?);
    }
    Family::new(1, sets)
}

const MAX_DRAWS: usize = 200;

fn grid<R: Rng>(rng: &mut R, scale: &Rational) -> Rational {
    rat(rng.gen_range(-1000..=1000), 1000) * scale
}

/// A compact piece of a random `(k-1)`-flat inside `[-radius, radius]^d`:
/// the parallelotope `p + Σ s_j u_j`, `|s_j| ≤ 3 radius / (4(k-1))`, with
/// `|p|_∞ ≤ radius/4` and `|u_j|_∞ = 1`.
fn flat_piece<R: Rng>(
    rng: &mut R,
    label: String,
    d: usize,
    k: usize,
    radius: &Rational,
) -> Result<ConvexSet> {
    let quarter = radius / int(4);
    let p = Point::new((0..d).map(|_| grid(rng, &quarter)).collect());
    if k == 1 {
        return ConvexSet::singleton(label, p);
    }
    let reach = radius * rat(3, 4 * (k as i64 - 1));
    let mut dirs = Vec::with_capacity(k - 1);
    while dirs.len() < k - 1 {
        let u: Vec<Rational> = (0..d).map(|_| grid(rng, &int(1))).collect();
        let top = u.iter().map(Signed::abs).max().unwrap();
        if top.is_zero() {
            continue;
        }
        dirs.push(Point::new(u.iter().map(|c| c / &top * &reach).collect()));
    }
    let corners = (0..1usize << (k - 1))
        .map(|mask| {
            dirs.iter().enumerate().fold(p.clone(), |acc, (j, u)| {
                if mask >> j & 1 == 1 {
                    &acc + u
                } else {
                    &acc - u
                }
            })
        })
        .collect();
    ConvexSet::vrep(label, d, corners, vec![])
}

/// `count` compact pieces of random `(k-1)`-flats in `R^d`, redrawn until the
/// family is verified `k`-free.
pub fn free_flats_family(
    d: usize,
    k: usize,
    count: usize,
    radius: &Rational,
    seed: u64,
) -> Result<Family> {
    if k == 0 || k > d {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= d, got k={k}, d={d}"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("count must be positive".into()));
    }
    if !radius.is_positive() {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let sets = (0..count)
            .map(|i| flat_piece(&mut rng, format!("L{}", i + 1), d, k, radius))
            .collect::<Result<_>>()?;
        let fam = Family::new(d, sets)?;
        if is_m_free(&fam, &fam.all_indices(), k)? {
            return Ok(fam);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no {k}-free draw found in {MAX_DRAWS} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pq::has_pq_property;

    #[test]
    fn line_example() {
        let f = gruenbaum_line(3, 1).unwrap();
        let labels: Vec<_> = f.sets().iter().map(|s| s.label()).collect();
        assert_eq!(labels, ["F0", "F1", "F2", "F3"]);
        assert!(
            has_pq_property(&gruenbaum_line(6, 1).unwrap(), 4, 3)
                .unwrap()
                .holds
        );
        assert!(
            !has_pq_property(&gruenbaum_line(6, 2).unwrap(), 4, 3)
                .unwrap()
                .holds
        );
        assert!(gruenbaum_line(0, 1).is_err());
    }

    #[test]
    fn free_flats() {
        let r = int(10);
        let pts = free_flats_family(2, 1, 3, &r, 0).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(is_m_free(&pts, &[0, 1, 2], 1).unwrap());
        let segs = free_flats_family(2, 2, 4, &r, 0).unwrap();
        assert!(is_m_free(&segs, &segs.all_indices(), 2).unwrap());
        let space = free_flats_family(3, 2, 5, &r, 1).unwrap();
        assert!(is_m_free(&space, &space.all_indices(), 2).unwrap());
        assert!(free_flats_family(2, 3, 4, &r, 0).is_err());
    }

    #[test]
    fn free_flats_stay_in_the_box() {
        let r = int(10);
        let fam = free_flats_family(3, 3, 4, &r, 5).unwrap();
        let bx = ConvexSet::hbox(
            "box",
            &Point::from_ints(&[-10; 3]),
            &Point::from_ints(&[10; 3]),
        )
        .unwrap();
        for s in fam.sets() {
            if let crate::convex::Rep::V { points, .. } = s.rep() {
                assert!(points
                    .iter()
                    .all(|p| crate::convex::contains_point(&bx, p).unwrap()));
            }
        }
        assert_eq!(free_flats_family(3, 3, 4, &r, 5).unwrap(), fam);
    }
}
