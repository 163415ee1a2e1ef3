//! Empirical convergence rates of the discrete fractional-derivative
//! formulas, against both the analytic Caputo derivative of t³ and the
//! independent quadrature reference.

use mtfrac::analysis::{operator_convergence_check, OperatorFormula};
use mtfrac::fracops::{
    beta_weights, caputo_quadrature_oracle, gamma_weights, l1_bracket, l2_bracket, mu_beta,
    mu_gamma, IncrementHistory,
};
use mtfrac::special::gamma;

fn cubic(t: f64) -> f64 {
    t * t * t
}

/// D^q t³ = Γ(4)/Γ(4-q) t^{3-q}, valid on both order branches.
fn cubic_caputo(order: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| 6.0 / gamma(4.0 - order) * t.powf(3.0 - order)
}

const TAUS: [f64; 5] = [1.0 / 40.0, 1.0 / 80.0, 1.0 / 160.0, 1.0 / 320.0, 1.0 / 640.0];

#[test]
fn first_order_rate_of_the_level_formula() {
    let caputo = cubic_caputo(1.5);
    let report = operator_convergence_check(
        1.5,
        OperatorFormula::L2AtN,
        &cubic,
        &caputo,
        0.0,
        &TAUS,
        1.0,
    )
    .unwrap();
    // expected rate 1 (observed 1.009..1.028 on this ladder)
    let rate = report.final_rate();
    assert!((rate - 1.0).abs() <= 0.1, "rate {rate}, errors {:?}", report.errors);
}

#[test]
fn half_level_reading_gains_three_minus_gamma() {
    let caputo = cubic_caputo(1.5);
    let report = operator_convergence_check(
        1.5,
        OperatorFormula::L2AtHalf,
        &cubic,
        &caputo,
        0.0,
        &TAUS,
        1.0,
    )
    .unwrap();
    let rate = report.final_rate();
    assert!((rate - 1.5).abs() <= 0.1, "rate {rate}, errors {:?}", report.errors);
}

#[test]
fn l1_formula_rate_is_two_minus_beta() {
    let caputo = cubic_caputo(0.6);
    let report = operator_convergence_check(
        0.6,
        OperatorFormula::L1,
        &cubic,
        &caputo,
        0.0,
        &TAUS,
        1.0,
    )
    .unwrap();
    let rate = report.final_rate();
    assert!((rate - 1.4).abs() <= 0.1, "rate {rate}, errors {:?}", report.errors);
}

fn l2_value(order: f64, n: usize) -> f64 {
    let tau = 1.0 / n as f64;
    let levels: Vec<Vec<f64>> = (0..=n).map(|k| vec![cubic(k as f64 * tau)]).collect();
    let hist = IncrementHistory::from_levels(&levels, tau).unwrap();
    let w = gamma_weights(order, n).unwrap();
    mu_gamma(order, tau) * l2_bracket(&w, &hist, &[0.0]).unwrap()[0]
}

fn l1_value(order: f64, n: usize) -> f64 {
    let tau = 1.0 / n as f64;
    let levels: Vec<Vec<f64>> = (0..=n).map(|k| vec![cubic(k as f64 * tau)]).collect();
    let hist = IncrementHistory::from_levels(&levels, tau).unwrap();
    let w = beta_weights(order, n).unwrap();
    mu_beta(order, tau) * l1_bracket(&w, &hist).unwrap()[0]
}

#[test]
fn bracket_converges_to_quadrature_reference_at_first_order() {
    // reference carries its own O(panels^{-1/2}) bias at γ=1.5; the coarse τ
    // ladder keeps the formula error two orders above it
    let reference = caputo_quadrature_oracle(cubic, 1.5, 1.0, 1 << 20).unwrap();
    let errors: Vec<f64> = [8, 16, 32, 64]
        .iter()
        .map(|&n| (l2_value(1.5, n) - reference).abs())
        .collect();
    for pair in errors.windows(2) {
        let rate = (pair[0] / pair[1]).log2();
        assert!(rate >= 0.9, "rate {rate}, errors {errors:?}");
    }
}

#[test]
fn l1_converges_to_quadrature_reference_at_two_minus_beta() {
    // β = 0.3 keeps the kernel mildly singular: 2^24 panels leave the
    // reference bias near 4e-6, two orders below the finest formula error
    let beta = 0.3;
    let reference = caputo_quadrature_oracle(cubic, beta, 1.0, 1 << 24).unwrap();
    let errors: Vec<f64> = [16, 32, 64, 128]
        .iter()
        .map(|&n| (l1_value(beta, n) - reference).abs())
        .collect();
    for pair in errors.windows(2) {
        let rate = (pair[0] / pair[1]).log2();
        assert!(rate >= 1.9 - beta, "rate {rate}, errors {errors:?}");
    }
}

#[test]
fn caputo_oracle_matches_linear_closed_form_across_orders() {
    // D^β t = t^{1-β}/Γ(2-β); moderate orders keep the midpoint error small
    for beta in [0.2, 0.4, 0.6] {
        let got = caputo_quadrature_oracle(|t| t, beta, 1.0, 1 << 20).unwrap();
        let exact = 1.0 / gamma(2.0 - beta);
        assert!(
            (got - exact).abs() < 2e-3 * exact,
            "β={beta}: {got} vs {exact}"
        );
    }
}
