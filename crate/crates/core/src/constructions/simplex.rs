use num_traits::{One, Zero};
use rand::Rng;

use crate::convex::{contains_point, ConvexSet};
use crate::error::{Error, Result};
use crate::exact::{rat, Matrix, Point, Rational};

/// The `(d-1)`-simplex in `R^d` whose `k`-th vertex is
/// `e_1 + … + e_{k-1} + α e_k`.
pub fn simplex_s(alpha: &Rational, d: usize) -> Result<ConvexSet> {
    let vertices = simplex_matrix(alpha, d)?
        .rows()
        .iter()
        .cloned()
        .map(Point::new)
        .collect();
    ConvexSet::vrep(format!("S_{alpha}"), d, vertices, vec![])
}

/// Vertices of [`simplex_s`] as matrix rows: ones below the diagonal, `α` on it.
pub fn simplex_matrix(alpha: &Rational, d: usize) -> Result<Matrix> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if !alpha.is_positive_in_unit() {
        return Err(Error::InvalidParameter(format!(
            "alpha {alpha} not in (0,1]"
        )));
    }
    let rows = (0..d)
        .map(|k| {
            (0..d)
                .map(|j| match j.cmp(&k) {
                    std::cmp::Ordering::Less => Rational::one(),
                    std::cmp::Ordering::Equal => alpha.clone(),
                    std::cmp::Ordering::Greater => Rational::zero(),
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

trait UnitInterval {
    fn is_positive_in_unit(&self) -> bool;
    fn is_open_unit(&self) -> bool;
}

impl UnitInterval for Rational {
    fn is_positive_in_unit(&self) -> bool {
        *self > Rational::zero() && *self <= Rational::one()
    }

    fn is_open_unit(&self) -> bool {
        *self > Rational::zero() && *self < Rational::one()
    }
}

/// `c[k]` = probability that exactly `k` of independent events with the
/// given probabilities occur, for `k = 0..=alphas.len()`.
pub fn poisson_binomial_coeffs(alphas: &[Rational]) -> Result<Vec<Rational>> {
    if let Some(a) = alphas.iter().find(|a| !a.is_open_unit()) {
        return Err(Error::InvalidParameter(format!(
            "probability {a} not in (0,1)"
        )));
    }
    let mut c = vec![Rational::one()];
    for a in alphas {
        let miss = Rational::one() - a;
        let mut next = vec![Rational::zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k] += ck * &miss;
            next[k + 1] += ck * a;
        }
        c = next;
    }
    Ok(c)
}

/// `x_i` = probability that at least `i` of the events occur, `i = 1..=d`.
pub fn at_least_probabilities(alphas: &[Rational]) -> Result<Point> {
    let c = poisson_binomial_coeffs(alphas)?;
    let mut tail = Rational::zero();
    let mut x = vec![Rational::zero(); alphas.len()];
    for i in (1..c.len()).rev() {
        tail += &c[i];
        x[i - 1] = tail.clone();
    }
    Ok(Point::new(x))
}

fn check_sorted(alphas: &[Rational]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("need at least one alpha".into()));
    }
    if alphas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("alphas must be sorted".into()));
    }
    Ok(())
}

/// A point common to `S_{α_1}, …, S_{α_d}` for sorted `α_j ∈ (0,1)`.
///
/// Depends only on the multiset of alphas. Membership in every simplex is
/// re-checked exactly before returning.
pub fn simplex_common_point(alphas: &[Rational]) -> Result<Point> {
    check_sorted(alphas)?;
    let x = at_least_probabilities(alphas)?;
    for a in alphas {
        assert!(
            contains_point(&simplex_s(a, alphas.len())?, &x)?,
            "common point {x} escapes S_{a}"
        );
    }
    Ok(x)
}

/// The same point assembled as `(c_0, …, c_{d-1}) · M_{α_d}`, with `c` the
/// exactly-k probabilities of the first `d-1` events.
pub fn simplex_common_point_by_coeffs(alphas: &[Rational]) -> Result<Point> {
    check_sorted(alphas)?;
    let d = alphas.len();
    let c = poisson_binomial_coeffs(&alphas[..d - 1])?;
    Ok(simplex_matrix(&alphas[d - 1], d)?.left_mul(&c))
}

/// `d` sorted alphas in `(0,1)` with denominators at most 1000.
pub fn sample_alphas<R: Rng>(rng: &mut R, d: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..d)
        .map(|_| {
            let den = rng.gen_range(2..=1000i64);
            rat(rng.gen_range(1..den), den)
        })
        .collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::Rep;
    use crate::exact::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vertices(s: &ConvexSet) -> Vec<Point> {
        match s.rep() {
            Rep::V { points, .. } => points.clone(),
            Rep::H(_) => unreachable!(),
        }
    }

    fn pt(c: &[(i64, i64)]) -> Point {
        Point::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn simplex_vertices() {
        assert_eq!(
            vertices(&simplex_s(&rat(1, 2), 2).unwrap()),
            vec![pt(&[(1, 2), (0, 1)]), pt(&[(1, 1), (1, 2)])]
        );
        assert_eq!(
            vertices(&simplex_s(&int(1), 3).unwrap()),
            vec![
                Point::from_ints(&[1, 0, 0]),
                Point::from_ints(&[1, 1, 0]),
                Point::from_ints(&[1, 1, 1])
            ]
        );
        assert_eq!(
            vertices(&simplex_s(&rat(1, 3), 2).unwrap()),
            vec![pt(&[(1, 3), (0, 1)]), pt(&[(1, 1), (1, 3)])]
        );
        assert!(simplex_s(&int(0), 2).is_err());
        assert!(simplex_s(&rat(3, 2), 2).is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(
            poisson_binomial_coeffs(&[rat(1, 3)]).unwrap(),
            vec![rat(2, 3), rat(1, 3)]
        );
        assert_eq!(
            poisson_binomial_coeffs(&[rat(1, 2), rat(1, 2)]).unwrap(),
            vec![rat(1, 4), rat(1, 2), rat(1, 4)]
        );
        assert_eq!(poisson_binomial_coeffs(&[]).unwrap(), vec![int(1)]);
        assert!(poisson_binomial_coeffs(&[int(1)]).is_err());
    }

    #[test]
    fn common_points() {
        assert_eq!(
            simplex_common_point(&[rat(1, 3), rat(1, 2)]).unwrap(),
            pt(&[(2, 3), (1, 6)])
        );
        assert_eq!(
            simplex_common_point(&[rat(1, 2), rat(1, 2)]).unwrap(),
            pt(&[(3, 4), (1, 4)])
        );
        assert!(simplex_common_point(&[rat(1, 2), rat(1, 3)]).is_err());
        assert!(simplex_common_point(&[]).is_err());
    }

    #[test]
    fn equal_alphas_land_in_that_simplex() {
        let a = vec![rat(2, 7); 4];
        let x = simplex_common_point(&a).unwrap();
        assert!(contains_point(&simplex_s(&a[0], 4).unwrap(), &x).unwrap());
    }

    #[test]
    fn coefficient_form_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=5 {
            for _ in 0..10 {
                let a = sample_alphas(&mut rng, d);
                assert_eq!(
                    simplex_common_point_by_coeffs(&a).unwrap(),
                    at_least_probabilities(&a).unwrap()
                );
            }
        }
    }
}
