//! Generators for the explicit families: simplices with a common point, the
//! unbounded counterexample, the line example and free flat families.

mod counterexample;
mod line;
mod simplex;

pub use counterexample::{
    counterexample_family, escape_witness, family_a, family_b, member_a, sample_points,
    CounterexampleSpec,
};
pub use line::{free_flats_family, gruenbaum_line};
pub use simplex::{
    at_least_probabilities, poisson_binomial_coeffs, sample_alphas, simplex_common_point,
    simplex_common_point_by_coeffs, simplex_matrix, simplex_s,
};
