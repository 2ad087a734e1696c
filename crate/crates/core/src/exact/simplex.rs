//! Exact two-phase simplex with Bland's anti-cycling rule.
//!
//! Only feasibility is exposed publicly. A minimisation entry point is kept
//! crate-private for the few callers that need an extremal point.

use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

use super::linalg::Point;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `coeffs · x <= rhs`
    Le,
    /// `coeffs · x == rhs`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn is_satisfied_by(&self, x: &Point) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x.coords())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// A conjunction of linear constraints over `dim` variables.
///
/// Variables are free unless listed in `nonneg`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
    pub nonneg: BTreeSet<usize>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            ..Default::default()
        }
    }

    /// Adds `n` fresh variables and returns the index of the first.
    pub fn add_vars(&mut self, n: usize, nonneg: bool) -> usize {
        let first = self.dim;
        self.dim += n;
        for c in &mut self.constraints {
            c.coeffs.resize(self.dim, Rational::zero());
        }
        if nonneg {
            self.nonneg.extend(first..first + n);
        }
        first
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs, Relation::Le, rhs);
    }

    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs.into_iter().map(|c| -c).collect(), Relation::Le, -rhs);
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.push(coeffs, Relation::Eq, rhs);
    }

    /// Adds a constraint given as `(variable, coefficient)` terms.
    pub fn push_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.dim];
        for (i, c) in terms {
            coeffs[*i] += c;
        }
        self.push(coeffs, relation, rhs);
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.constraints {
            if c.coeffs.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: c.coeffs.len(),
                });
            }
        }
        if let Some(&bad) = self.nonneg.iter().find(|&&i| i >= self.dim) {
            return Err(Error::Malformed(format!(
                "nonnegative variable {bad} outside 0..{}",
                self.dim
            )));
        }
        Ok(())
    }

    /// Exact check of a candidate point against every constraint and sign.
    pub fn is_satisfied_by(&self, x: &Point) -> bool {
        x.dim() == self.dim
            && self.nonneg.iter().all(|&i| !x[i].is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }
}

/// Decides feasibility; returns a witness satisfying every constraint exactly.
pub fn lp_feasible(sys: &LinearSystem) -> Result<Option<Point>> {
    sys.validate()?;
    let mut t = Tableau::build(sys);
    if !t.phase_one() {
        return Ok(None);
    }
    let x = t.extract(sys);
    debug_assert!(sys.is_satisfied_by(&x));
    Ok(Some(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Minimum {
    Infeasible,
    Unbounded,
    Optimal { point: Point, value: Rational },
}

/// Minimises `objective · x` over the system.
pub(crate) fn lp_minimize(sys: &LinearSystem, objective: &[Rational]) -> Result<Minimum> {
    sys.validate()?;
    if objective.len() != sys.dim {
        return Err(Error::DimensionMismatch {
            expected: sys.dim,
            found: objective.len(),
        });
    }
    let mut t = Tableau::build(sys);
    if !t.phase_one() {
        return Ok(Minimum::Infeasible);
    }
    let mut cost = vec![Rational::zero(); t.n_cols];
    for (j, c) in objective.iter().enumerate() {
        let (pos, neg) = t.var_cols[j];
        cost[pos] = c.clone();
        if let Some(neg) = neg {
            cost[neg] = -c;
        }
    }
    let allowed: Vec<bool> = (0..t.n_cols).map(|j| j < t.first_artificial).collect();
    if !t.optimize(&cost, &allowed) {
        return Ok(Minimum::Unbounded);
    }
    let point = t.extract(sys);
    let value = objective
        .iter()
        .zip(point.coords())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
    Ok(Minimum::Optimal { point, value })
}

struct Tableau {
    /// Each row is `B^-1 A | B^-1 b`.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    n_cols: usize,
    first_artificial: usize,
    /// Column of the positive part and (for free variables) the negative part.
    var_cols: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(sys: &LinearSystem) -> Self {
        let mut var_cols = Vec::with_capacity(sys.dim);
        let mut n = 0;
        for j in 0..sys.dim {
            if sys.nonneg.contains(&j) {
                var_cols.push((n, None));
                n += 1;
            } else {
                var_cols.push((n, Some(n + 1)));
                n += 2;
            }
        }
        let n_slack = sys
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::Le)
            .count();
        let first_slack = n;
        let first_artificial = first_slack + n_slack;

        // Rows whose slack can start in the basis need no artificial.
        let mut needs_artificial = Vec::with_capacity(sys.constraints.len());
        let mut slack = first_slack;
        let mut slack_of_row = Vec::with_capacity(sys.constraints.len());
        for c in &sys.constraints {
            if c.relation == Relation::Le {
                slack_of_row.push(Some(slack));
                needs_artificial.push(c.rhs.is_negative());
                slack += 1;
            } else {
                slack_of_row.push(None);
                needs_artificial.push(true);
            }
        }
        let n_art = needs_artificial.iter().filter(|&&b| b).count();
        let n_cols = first_artificial + n_art;

        let mut rows = Vec::with_capacity(sys.constraints.len());
        let mut basis = Vec::with_capacity(sys.constraints.len());
        let mut art = first_artificial;
        for (i, c) in sys.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); n_cols + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                let (pos, neg) = var_cols[j];
                row[pos] = a.clone();
                if let Some(neg) = neg {
                    row[neg] = -a;
                }
            }
            if let Some(s) = slack_of_row[i] {
                row[s] = Rational::from_integer(1.into());
            }
            row[n_cols] = c.rhs.clone();
            if c.rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
            }
            if needs_artificial[i] {
                row[art] = Rational::from_integer(1.into());
                basis.push(art);
                art += 1;
            } else {
                basis.push(slack_of_row[i].expect("slack row"));
            }
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            n_cols,
            first_artificial,
            var_cols,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Bland's rule minimisation. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.n_cols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    let cb = &cost[self.basis[i]];
                    if !cb.is_zero() && !row[j].is_zero() {
                        reduced -= cb * &row[j];
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };

            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.n_cols] / &row[c];
                let better = match &leaving {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Minimises the sum of artificials, then drives any that remain basic
    /// at level zero out of the basis. Returns feasibility.
    fn phase_one(&mut self) -> bool {
        if self.first_artificial == self.n_cols {
            return true;
        }
        let cost: Vec<Rational> = (0..self.n_cols)
            .map(|j| Rational::from_integer(i64::from(j >= self.first_artificial).into()))
            .collect();
        let allowed = vec![true; self.n_cols];
        let bounded = self.optimize(&cost, &allowed);
        debug_assert!(bounded, "phase one objective is bounded below by zero");

        let infeasible = self
            .rows
            .iter()
            .zip(&self.basis)
            .any(|(row, &b)| b >= self.first_artificial && !row[self.n_cols].is_zero());
        if infeasible {
            return false;
        }

        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(c) => self.pivot(r, c),
                    None => {
                        // Redundant equality.
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        true
    }

    fn extract(&self, sys: &LinearSystem) -> Point {
        let mut values = vec![Rational::zero(); self.n_cols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            values[b] = row[self.n_cols].clone();
        }
        Point::new(
            self.var_cols
                .iter()
                .take(sys.dim)
                .map(|&(pos, neg)| match neg {
                    Some(neg) => &values[pos] - &values[neg],
                    None => values[pos].clone(),
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn vacuous_system() {
        let sys = LinearSystem::new(1);
        assert_eq!(lp_feasible(&sys).unwrap(), Some(Point::origin(1)));
    }

    #[test]
    fn contradictory_bounds() {
        let mut sys = LinearSystem::new(1);
        sys.add_ge(ints(&[1]), int(1));
        sys.add_le(ints(&[1]), int(0));
        assert_eq!(lp_feasible(&sys).unwrap(), None);
    }

    #[test]
    fn overlapping_squares() {
        let mut sys = LinearSystem::new(2);
        for (lo, hi) in [(int(0), int(1)), (rat(1, 2), rat(3, 2))] {
            for axis in 0..2 {
                let e = Point::unit(2, axis).into_coords();
                sys.add_le(e.clone(), hi.clone());
                sys.add_ge(e, lo.clone());
            }
        }
        let w = lp_feasible(&sys).unwrap().expect("squares overlap");
        for c in w.coords() {
            assert!(*c >= rat(1, 2) && *c <= int(1));
        }
        assert!(sys.is_satisfied_by(&w));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let mut sys = LinearSystem::new(2);
        sys.add_le(ints(&[1]), int(0));
        assert!(matches!(
            lp_feasible(&sys),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn redundant_equalities() {
        let mut sys = LinearSystem::new(2);
        sys.add_eq(ints(&[1, 1]), int(2));
        sys.add_eq(ints(&[2, 2]), int(4));
        sys.add_eq(ints(&[1, -1]), int(0));
        assert_eq!(lp_feasible(&sys).unwrap(), Some(Point::from_ints(&[1, 1])));
    }

    #[test]
    fn minimize_simple() {
        let mut sys = LinearSystem::new(2);
        sys.add_ge(ints(&[1, 0]), int(1));
        sys.add_ge(ints(&[0, 1]), int(2));
        sys.add_le(ints(&[1, 1]), int(10));
        match lp_minimize(&sys, &ints(&[1, 1])).unwrap() {
            Minimum::Optimal { value, .. } => assert_eq!(value, int(3)),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            lp_minimize(&sys, &ints(&[-1, 0])).unwrap(),
            Minimum::Optimal {
                point: Point::from_ints(&[8, 2]),
                value: int(-8),
            }
        );
        let mut open = LinearSystem::new(1);
        open.add_ge(ints(&[1]), int(0));
        assert_eq!(
            lp_minimize(&open, &ints(&[-1])).unwrap(),
            Minimum::Unbounded
        );
    }

    #[test]
    fn degenerate_klee_minty_like() {
        // Many constraints through the same vertex; Bland's rule must terminate.
        let mut sys = LinearSystem::new(3);
        sys.nonneg.extend(0..3);
        for a in -3..=3 {
            for b in -3..=3 {
                sys.add_le(ints(&[a, b, 1]), int(0));
            }
        }
        sys.add_ge(ints(&[1, 1, 1]), int(0));
        let w = lp_feasible(&sys).unwrap().unwrap();
        assert!(sys.is_satisfied_by(&w));
        assert!(matches!(
            lp_minimize(&sys, &ints(&[-1, -1, -1])).unwrap(),
            Minimum::Optimal { .. } | Minimum::Unbounded
        ));
    }
}
