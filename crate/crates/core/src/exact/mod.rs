//! Exact rational arithmetic, dense linear algebra and LP feasibility.

pub mod linalg;
pub mod rational;
pub mod simplex;

pub use linalg::{invert, solve_linear, Matrix, Point};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use simplex::{lp_feasible, Constraint, LinearSystem, Relation};
