//! Fixtures shared by the benchmarks under `benches/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use piercing_core::constructions::{counterexample_family, CounterexampleSpec};
pub use piercing_core::{ConvexSet, Family, Point};

/// `count` random axis boxes with integer corners in `[0, 10]^2`.
pub fn random_boxes(count: usize, seed: u64) -> Family {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = (0..count)
        .map(|i| {
            let (x, y) = (rng.gen_range(0..=7i64), rng.gen_range(0..=7i64));
            let lo = Point::from_ints(&[x, y]);
            let hi = Point::from_ints(&[x + rng.gen_range(1..=3), y + rng.gen_range(1..=3)]);
            ConvexSet::vbox(format!("K{i}"), &lo, &hi).expect("valid box")
        })
        .collect();
    Family::new(2, sets).expect("valid family")
}

pub fn counterexample(d: usize, n_max: u64, n_bounded: usize) -> Family {
    counterexample_family(&CounterexampleSpec::new(d, n_max, n_bounded)).expect("valid spec")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(random_boxes(6, 3), random_boxes(6, 3));
        assert_eq!(counterexample(1, 6, 2).len(), 7);
    }
}
