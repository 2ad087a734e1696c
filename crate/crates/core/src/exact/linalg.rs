use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};

use super::rational::{format_rational, serde_rat_vec, Rational};
use crate::error::{Error, Result};

/// A point (or direction) in `R^d` with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| super::rational::int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    /// The standard basis vector `e_axis` (zero-based axis).
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut p = Self::origin(dim);
        p.0[axis] = Rational::one();
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Point) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Rational) -> Point {
        Point(self.0.iter().map(|c| c * factor).collect())
    }

    /// Drops the last coordinate.
    pub fn drop_last(&self) -> Point {
        Point(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// Appends a coordinate.
    pub fn extend(&self, last: Rational) -> Point {
        let mut c = self.0.clone();
        c.push(last);
        Point(c)
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }
}

impl Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for Point {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(c))?;
        }
        f.write_str(")")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rat_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        serde_rat_vec::deserialize(d).map(Point)
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix { rows, cols })
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        Self::from_rows(points.iter().map(|p| p.coords().to_vec()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| Point::unit(n, i).into_coords()).collect();
        Matrix { rows, cols: n }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// `self · x` for a column vector `x`.
    pub fn mul_vec(&self, x: &Point) -> Point {
        Point::new(
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(x.coords())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    /// Row vector times matrix: `y · self`.
    pub fn left_mul(&self, y: &[Rational]) -> Point {
        let mut out = vec![Rational::zero(); self.cols];
        for (coef, row) in y.iter().zip(&self.rows) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += coef * a;
            }
        }
        Point::new(out)
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix {
            rows,
            cols: self.rows.len(),
        }
    }
}

/// Solves `mat · x = rhs` exactly by Gauss–Jordan elimination.
///
/// Returns `None` when the system is inconsistent. Free variables of an
/// underdetermined system are set to zero.
pub fn solve_linear(mat: &Matrix, rhs: &Point) -> Result<Option<Point>> {
    if rhs.dim() != mat.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: mat.n_rows(),
            found: rhs.dim(),
        });
    }
    let n = mat.n_cols();
    let mut aug: Vec<Vec<Rational>> = mat
        .rows()
        .iter()
        .zip(rhs.coords())
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for v in aug[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == aug.len() {
            break;
        }
    }

    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Ok(Some(Point::new(x)))
}

/// Inverse of a square matrix, or `None` when singular.
pub fn invert(mat: &Matrix) -> Result<Option<Matrix>> {
    let n = mat.n_rows();
    if mat.n_cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: mat.n_cols(),
        });
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        match solve_linear(mat, &Point::unit(n, j))? {
            Some(c) => cols.push(c.into_coords()),
            None => return Ok(None),
        }
    }
    // Each solution is a column of the inverse.
    Ok(Some(Matrix::from_rows(cols)?.transpose()))
}
