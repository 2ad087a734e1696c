use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::simplex::simplex_matrix;
use crate::convex::{contains_point, ConvexSet, Family};
use crate::error::{Error, Result};
use crate::exact::rational::serde_rat;
use crate::exact::{int, rat, Point, Rational};

/// Parameters of the unbounded counterexample in `R^{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleSpec {
    /// The simplices live in `R^d`; the ambient space is `R^{d+1}`.
    pub d: usize,
    pub n_max: u64,
    pub n_bounded: usize,
    /// How far the bounded boxes reach beyond the unit cube (before the
    /// per-member growth of 1, 2, 3, …).
    #[serde(with = "serde_rat")]
    pub bounded_margin: Rational,
}

impl CounterexampleSpec {
    pub fn new(d: usize, n_max: u64, n_bounded: usize) -> Self {
        CounterexampleSpec {
            d,
            n_max,
            n_bounded,
            bounded_margin: Rational::zero(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.d + 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidParameter("d must be at least 1".into()));
        }
        if self.n_max < 2 {
            return Err(Error::InvalidParameter("n_max must be at least 2".into()));
        }
        if self.bounded_margin < Rational::zero() {
            return Err(Error::InvalidParameter(
                "bounded_margin must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// `A_n = conv(S_{1/n} ∪ {t e_1 : t ≥ n})`, with `S_{1/n}` placed in the
/// coordinates `2..=d+1`.
pub fn member_a(d: usize, n: u64) -> Result<ConvexSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "A_n needs n >= 2, got {n}"
        )));
    }
    let alpha = rat(1, n as i64);
    let mut points: Vec<Point> = simplex_matrix(&alpha, d)?
        .rows()
        .iter()
        .map(|r| {
            Point::new(
                std::iter::once(Rational::zero())
                    .chain(r.iter().cloned())
                    .collect(),
            )
        })
        .collect();
    let mut tip = Point::origin(d + 1);
    tip[0] = int(n as i64);
    points.push(tip);
    ConvexSet::vrep(format!("A_{n}"), d + 1, points, vec![Point::unit(d + 1, 0)])
}

pub fn family_a(spec: &CounterexampleSpec) -> Result<Family> {
    spec.validate()?;
    let sets = (2..=spec.n_max)
        .map(|n| member_a(spec.d, n))
        .collect::<Result<_>>()?;
    Family::new(spec.ambient(), sets)
}

/// Boxes `B_i` (1-indexed) with margin `m_i = bounded_margin + i`:
/// `x_1 ∈ [-m_i, m_i]` and every other coordinate in `[-m_i, 1 + m_i]`.
/// Each contains the unit cube of the hyperplane `x_1 = 0`.
pub fn family_b(spec: &CounterexampleSpec) -> Result<Family> {
    spec.validate()?;
    if spec.n_bounded == 0 {
        return Err(Error::InvalidParameter(
            "n_bounded must be at least 1".into(),
        ));
    }
    let dim = spec.ambient();
    let sets = (1..=spec.n_bounded)
        .map(|i| {
            let m = &spec.bounded_margin + int(i as i64);
            let lo = Point::new(vec![-m.clone(); dim]);
            let mut hi = Point::new(vec![&m + Rational::one(); dim]);
            hi[0] = m.clone();
            ConvexSet::vbox(format!("B_{i}"), &lo, &hi)
        })
        .collect::<Result<_>>()?;
    Family::new(dim, sets)
}

/// `𝓐 ∪ 𝓑`, with the unbounded members first.
pub fn counterexample_family(spec: &CounterexampleSpec) -> Result<Family> {
    let a = family_a(spec)?;
    if spec.n_bounded == 0 {
        return Ok(a);
    }
    a.union(&family_b(spec)?)
}

/// Smallest `n ∈ [2, n_cap]` such that `A_n` contains none of `points`, or
/// `None` when the cap is reached first.
pub fn escape_witness(
    spec: &CounterexampleSpec,
    points: &[Point],
    n_cap: u64,
) -> Result<Option<u64>> {
    if spec.d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    for p in points {
        p.check_dim(spec.ambient())?;
    }
    'next: for n in 2..=n_cap {
        let a = member_a(spec.d, n)?;
        for p in points {
            if contains_point(&a, p)? {
                continue 'next;
            }
        }
        return Ok(Some(n));
    }
    Ok(None)
}

/// Random candidate points for escape checks: denominators at most 100,
/// first coordinate in `[-5, 50]`, the others in `[-1, 2]`.
pub fn sample_points<R: Rng>(rng: &mut R, dim: usize, count: usize) -> Vec<Point> {
    (0..count)
        .map(|_| {
            Point::new(
                (0..dim)
                    .map(|i| {
                        let den = rng.gen_range(1..=100i64);
                        let (lo, hi) = if i == 0 { (-5, 50) } else { (-1, 2) };
                        rat(rng.gen_range(lo * den..=hi * den), den)
                    })
                    .collect(),
            )
        })
        .collect()
}
