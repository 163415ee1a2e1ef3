//! Seeded random problem instances for the march-vs-dense-oracle checks.

use std::sync::Arc;

use mtfrac::model::{FracTerm, ModelCoefficients, ProblemSpec, SpaceTimeFn};
use mtfrac::rng::Lcg64;

/// Random valid coefficient set: one or two terms per fractional family,
/// coefficients in [0, 2), orders clear of the interval endpoints.
pub fn random_coefficients(rng: &mut Lcg64) -> ModelCoefficients {
    let n_gamma = rng.next_usize(1, 2);
    let mut gamma_orders: Vec<f64> = (0..n_gamma).map(|_| rng.next_in(1.05, 1.95)).collect();
    gamma_orders.sort_by(|a, b| a.partial_cmp(b).unwrap());
    gamma_orders.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    let gamma_terms = gamma_orders
        .into_iter()
        .map(|o| FracTerm::new(rng.next_in(0.0, 2.0), o))
        .collect();

    let n_alpha = rng.next_usize(1, 2);
    let mut alpha_orders: Vec<f64> = (0..n_alpha).map(|_| rng.next_in(0.05, 0.95)).collect();
    alpha_orders.sort_by(|a, b| a.partial_cmp(b).unwrap());
    alpha_orders.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    let alpha_terms = alpha_orders
        .into_iter()
        .map(|o| FracTerm::new(rng.next_in(0.0, 2.0), o))
        .collect();

    ModelCoefficients::new(
        rng.next_in(0.5, 2.0),
        rng.next_in(0.0, 2.0),
        rng.next_in(0.5, 2.0),
        rng.next_in(0.0, 2.0),
        gamma_terms,
        alpha_terms,
        rng.next_in(0.05, 0.95),
    )
    .expect("sampled coefficients are valid")
}

/// Random smooth problem data (low-order polynomials); when requested, the
/// right boundary ramps linearly instead of staying homogeneous.
pub fn random_problem(rng: &mut Lcg64, nonhomogeneous: bool) -> ProblemSpec {
    let coeffs = random_coefficients(rng);
    let (p0, p1, p2) = (
        rng.next_in(-1.0, 1.0),
        rng.next_in(-1.0, 1.0),
        rng.next_in(-1.0, 1.0),
    );
    let (q0, q1) = (rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0));
    let (f0, f1, f2) = (
        rng.next_in(-1.0, 1.0),
        rng.next_in(-1.0, 1.0),
        rng.next_in(-1.0, 1.0),
    );
    let boundary_slope = if nonhomogeneous {
        rng.next_in(0.5, 2.0)
    } else {
        0.0
    };
    let phi1 = move |x: f64| x * (1.0 - x) * (p0 + p1 * x + p2 * x * x);
    let phi2 = move |x: f64| q0 + q1 * x;
    let source: SpaceTimeFn =
        Arc::new(move |x: f64, t: f64| f0 + f1 * x + f2 * t + 0.5 * f0 * x * t);
    ProblemSpec::new(
        coeffs,
        1.0,
        1.0,
        Arc::new(phi1),
        Arc::new(phi2),
        Arc::new(|_| 0.0),
        Arc::new(move |t: f64| boundary_slope * t),
        source,
    )
    .expect("sampled problem is valid")
}
