//! March vs dense space-time oracle on randomized small instances.
//!
//! The two paths share nothing past the scheme definition: the marcher runs
//! incremental history sums through the Thomas solver, the oracle assembles
//! one dense linear system over all interior unknowns at all levels and
//! solves it with pivoted elimination. Agreement to 1e-10 on random
//! coefficients, data and grids pins both sides to the scheme equations.

use std::sync::Arc;

use mtfrac::model::{FracTerm, ModelCoefficients, ProblemSpec, SpaceTimeFn};
use mtfrac::rng::Lcg64;
use mtfrac::solver::{dense_oracle_solve, march, GridSpec, Scheme};

const AGREEMENT_TOL: f64 = 1e-10;

/// Random valid coefficient set: 1-2 γ terms, 1-2 α terms, mixed signs off.
fn random_coefficients(rng: &mut Lcg64) -> ModelCoefficients {
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

/// Random smooth data: low-order polynomials in x and t.
fn random_problem(rng: &mut Lcg64, nonhomogeneous: bool) -> ProblemSpec {
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
    // phi1 vanishing at both ends keeps corners compatible with g(0) = 0
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

fn max_deviation(problem: &ProblemSpec, grid: &GridSpec, scheme: Scheme) -> f64 {
    let a = march(problem, grid, scheme).expect("march");
    let b = dense_oracle_solve(problem, grid, scheme).expect("oracle");
    let mut worst: f64 = 0.0;
    for (la, lb) in a.levels().iter().zip(b.levels()) {
        for (x, y) in la.iter().zip(lb) {
            worst = worst.max((x - y).abs());
        }
    }
    worst
}

#[test]
fn randomized_instances_agree_for_both_schemes() {
    let mut rng = Lcg64::new(0x0ac1e);
    let mut nonhomogeneous_seen = 0;
    for instance in 0..8 {
        let nonhomogeneous = instance % 4 == 3;
        if nonhomogeneous {
            nonhomogeneous_seen += 1;
        }
        let problem = random_problem(&mut rng, nonhomogeneous);
        let m = rng.next_usize(4, 8);
        let n = rng.next_usize(2, 5);
        let grid = GridSpec::for_problem(&problem, m, n).unwrap();
        for scheme in [Scheme::I, Scheme::II] {
            let dev = max_deviation(&problem, &grid, scheme);
            assert!(
                dev <= AGREEMENT_TOL,
                "instance {instance} (M={m}, N={n}, scheme {scheme}, \
                 nonhomogeneous={nonhomogeneous}): deviation {dev:.3e}"
            );
        }
    }
    assert!(nonhomogeneous_seen >= 1);
}

#[test]
fn example_problems_agree() {
    let p1 = mtfrac::model::example1_problem(0.7, 0.6, 1.5).unwrap();
    let g1 = GridSpec::for_problem(&p1, 5, 4).unwrap();
    for scheme in [Scheme::I, Scheme::II] {
        assert!(max_deviation(&p1, &g1, scheme) <= AGREEMENT_TOL);
    }

    let params = mtfrac::model::OldroydBParams {
        lambda_relax: 3.0,
        theta_retard: 4.0,
        alpha: 0.5,
        beta: 0.6,
        nu: 1.0,
        magnetic: 2.0,
    };
    let p2 = mtfrac::model::example2_problem(1.0, &params, false).unwrap();
    let g2 = GridSpec::for_problem(&p2, 6, 3).unwrap();
    for scheme in [Scheme::I, Scheme::II] {
        assert!(max_deviation(&p2, &g2, scheme) <= AGREEMENT_TOL);
    }
}
