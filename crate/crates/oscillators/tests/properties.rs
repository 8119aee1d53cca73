//! Randomised checks of the drive blend and the right-hand side.

use msfs_oscillators::{derivatives, gamma};
use proptest::prelude::*;

proptest! {
    #[test]
    fn gamma_is_convex_combination(w in 0.0..=1.0f64, p in 0.0..3.0f64, c in 0.0..3.0f64) {
        let g = gamma(w, Some(p), Some(c));
        prop_assert!(g >= p.min(c) - 1e-12 && g <= p.max(c) + 1e-12);
    }

    #[test]
    fn production_terms_bounded(g in 0.0..3.0f64, f in 0.0..6.0f64, x in 0.0..3.0f64, y in 0.0..3.0f64,
                                xl in 0.0..3.0f64, yl in 0.0..3.0f64, pp: bool) {
        let (dx, dy) = derivatives(g, f, pp, x, y, xl, yl);
        // Production lies in [0, 1]; decay is linear.
        prop_assert!(dx <= 1.0 - 0.5 * x + 0.1 + 1e-12 && dx >= -0.5 * x + 0.1 - 1e-12);
        prop_assert!(dy <= 1.0 - 0.5 * y + 0.1 + 1e-12 && dy >= -0.5 * y + 0.1 - 1e-12);
    }
}
