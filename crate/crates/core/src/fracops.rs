//! Discrete fractional-derivative operators.
//!
//! Two weight families drive everything:
//!
//! * `a_k = (k+1)^{2-γ} - k^{2-γ}` for Caputo orders γ in (1,2),
//! * `d_k = (k+1)^{1-β} - k^{1-β}` for Caputo orders β in (0,1),
//!
//! together with the history "brackets" that combine them with stored
//! time-increment vectors. The brackets return the raw weighted sums; the
//! caller supplies the `τ^{1-order}/Γ(..)` scale factor.

use crate::error::{Error, Result};
use crate::special::gamma;

/// Weight sequence for orders in (1, 2). `weights[k] = (k+1)^{2-γ} - k^{2-γ}`.
#[derive(Clone, Debug)]
pub struct WeightSeqGamma {
    order: f64,
    weights: Vec<f64>,
}

/// Weight sequence for orders in (0, 1). `weights[k] = (k+1)^{1-β} - k^{1-β}`.
#[derive(Clone, Debug)]
pub struct WeightSeqBeta {
    order: f64,
    weights: Vec<f64>,
}

impl WeightSeqGamma {
    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl WeightSeqBeta {
    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// `(k+1)^s - k^s` for k = 0..count-1, with s in (0, 1).
///
/// Written as `k^s * expm1(s * ln1p(1/k))` so the difference carries relative
/// (not absolute) rounding error; the naive form loses all accuracy for
/// large k, which matters for the convexity margins checked at n = 10^4.
fn power_difference_weights(s: f64, count: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(count);
    w.push(1.0);
    for k in 1..count {
        let kf = k as f64;
        w.push(kf.powf(s) * (s * (1.0 / kf).ln_1p()).exp_m1());
    }
    w
}

fn require_open_interval(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if !(value > lo && value < hi) {
        return Err(Error::Domain {
            param: name,
            message: format!("{value} is outside the open interval ({lo}, {hi})"),
        });
    }
    Ok(())
}

fn require_positive_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::Domain {
            param: "count",
            message: "weight count must be at least 1".into(),
        });
    }
    Ok(())
}

/// Weights for a Caputo order in (1, 2).
pub fn gamma_weights(order: f64, count: usize) -> Result<WeightSeqGamma> {
    require_open_interval("order", order, 1.0, 2.0)?;
    require_positive_count(count)?;
    Ok(WeightSeqGamma {
        order,
        weights: power_difference_weights(2.0 - order, count),
    })
}

/// Weights for a Caputo order in (0, 1).
pub fn beta_weights(order: f64, count: usize) -> Result<WeightSeqBeta> {
    require_open_interval("order", order, 0.0, 1.0)?;
    require_positive_count(count)?;
    Ok(WeightSeqBeta {
        order,
        weights: power_difference_weights(1.0 - order, count),
    })
}

/// History of per-step time differences `(U^k - U^{k-1})/τ`, k = 1..n.
///
/// Every stored vector must have the same spatial length; the marcher stores
/// full levels (boundary entries included) so the coupled β-operator can
/// form second differences of history without special boundary handling.
#[derive(Clone, Debug)]
pub struct IncrementHistory {
    values: Vec<Vec<f64>>,
    tau: f64,
}

impl IncrementHistory {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::Domain {
                param: "tau",
                message: format!("time step must be positive, got {tau}"),
            });
        }
        Ok(IncrementHistory {
            values: Vec::new(),
            tau,
        })
    }

    /// Build the history from stored levels 0..n.
    pub fn from_levels(levels: &[Vec<f64>], tau: f64) -> Result<Self> {
        let mut hist = IncrementHistory::new(tau)?;
        for pair in levels.windows(2) {
            let inc: Vec<f64> = pair[1]
                .iter()
                .zip(&pair[0])
                .map(|(a, b)| (a - b) / tau)
                .collect();
            hist.push(inc)?;
        }
        Ok(hist)
    }

    pub fn push(&mut self, increment: Vec<f64>) -> Result<()> {
        if let Some(first) = self.values.first() {
            if first.len() != increment.len() {
                return Err(Error::Shape(format!(
                    "increment length {} differs from history length {}",
                    increment.len(),
                    first.len()
                )));
            }
        }
        self.values.push(increment);
        Ok(())
    }

    /// Number of stored levels n (increments are indexed 1..n).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Increment at time level k (1-based).
    pub fn level(&self, k: usize) -> &[f64] {
        &self.values[k - 1]
    }

    fn spatial_len(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }
}

/// Scale factor `τ^{1-γ}/Γ(3-γ)` multiplying the (1,2)-order bracket.
pub fn mu_gamma(order: f64, tau: f64) -> f64 {
    tau.powf(1.0 - order) / gamma(3.0 - order)
}

/// Scale factor `τ^{1-α}/Γ(2-α)` multiplying the (0,1)-order sums.
pub fn mu_beta(order: f64, tau: f64) -> f64 {
    tau.powf(1.0 - order) / gamma(2.0 - order)
}

fn check_bracket_shapes(
    weights_len: usize,
    history: &IncrementHistory,
    slope: Option<&[f64]>,
) -> Result<usize> {
    let n = history.len();
    if n == 0 {
        return Err(Error::Shape("history holds no levels".into()));
    }
    if weights_len < n {
        return Err(Error::Shape(format!(
            "weight sequence of length {weights_len} cannot cover {n} history levels"
        )));
    }
    let m = history.spatial_len();
    for (k, v) in history.values.iter().enumerate() {
        if v.len() != m {
            return Err(Error::Shape(format!(
                "history level {} has length {}, expected {m}",
                k + 1,
                v.len()
            )));
        }
    }
    if let Some(s) = slope {
        if s.len() != m {
            return Err(Error::Shape(format!(
                "initial slope length {} does not match history length {m}",
                s.len()
            )));
        }
    }
    Ok(m)
}

/// Pointwise bracket of the (1,2)-order formula at level n:
///
/// `a_0 ∇U^n - Σ_{k=1}^{n-1} (a_{n-k-1} - a_{n-k}) ∇U^k - a_{n-1} φ₂`
///
/// The ghost level `U^{-1} = U^0 - τ φ₂` never appears explicitly; its effect
/// is exactly the trailing `a_{n-1} φ₂` term.
pub fn l2_bracket(
    weights: &WeightSeqGamma,
    history: &IncrementHistory,
    initial_slope: &[f64],
) -> Result<Vec<f64>> {
    let m = check_bracket_shapes(weights.weights.len(), history, Some(initial_slope))?;
    let n = history.len();
    let a = &weights.weights;
    let mut out = vec![0.0; m];
    let newest = history.level(n);
    for i in 0..m {
        out[i] = a[0] * newest[i];
    }
    for k in 1..n {
        let w = a[n - k - 1] - a[n - k];
        let inc = history.level(k);
        for i in 0..m {
            out[i] -= w * inc[i];
        }
    }
    let tail = a[n - 1];
    for i in 0..m {
        out[i] -= tail * initial_slope[i];
    }
    Ok(out)
}

/// Pointwise sum of the (0,1)-order formula at level n:
/// `Σ_{k=1}^{n} d_{n-k} ∇U^k`.
pub fn l1_bracket(weights: &WeightSeqBeta, history: &IncrementHistory) -> Result<Vec<f64>> {
    let m = check_bracket_shapes(weights.weights.len(), history, None)?;
    let n = history.len();
    let d = &weights.weights;
    let mut out = vec![0.0; m];
    for k in 1..=n {
        let w = d[n - k];
        let inc = history.level(k);
        for i in 0..m {
            out[i] += w * inc[i];
        }
    }
    Ok(out)
}

/// Pointwise two-level average of the (0,1)-order formula, centering the
/// approximation at the half level:
/// `(1/2) [Σ_{k=1}^{n} d_{n-k} ∇U^k + Σ_{k=1}^{n-1} d_{n-1-k} ∇U^k]`.
pub fn averaged_l1_bracket(
    weights: &WeightSeqBeta,
    history: &IncrementHistory,
) -> Result<Vec<f64>> {
    let m = check_bracket_shapes(weights.weights.len(), history, None)?;
    let n = history.len();
    let d = &weights.weights;
    let mut out = vec![0.0; m];
    for k in 1..=n {
        let mut w = d[n - k];
        if k < n {
            w += d[n - 1 - k];
        }
        let inc = history.level(k);
        for i in 0..m {
            out[i] += w * inc[i];
        }
    }
    for v in &mut out {
        *v *= 0.5;
    }
    Ok(out)
}

/// Structural report on a (0,1)-order weight sequence.
///
/// The slack fields quantify margins: `min_weight` over all entries,
/// `min_decrease` = min of `d_k - d_{k+1}`, `telescoping_residual` =
/// `|Σ_{k=0}^{n-1}(d_k - d_{k+1}) + d_n - 1|`, and `min_convexity` =
/// min of `d_{k+1} - 2 d_k + d_{k-1}` over k >= 1.
#[derive(Clone, Copy, Debug)]
pub struct WeightPropertyReport {
    pub positivity: bool,
    pub monotonicity: bool,
    pub telescoping: bool,
    pub convexity: bool,
    pub min_weight: f64,
    pub min_decrease: f64,
    pub telescoping_residual: f64,
    pub min_convexity: f64,
}

impl WeightPropertyReport {
    pub fn all_hold(&self) -> bool {
        self.positivity && self.monotonicity && self.telescoping && self.convexity
    }
}

pub const TELESCOPING_TOL: f64 = 1e-12;
pub const CONVEXITY_TOL: f64 = -1e-15;

/// Evaluate the four structural properties on an arbitrary weight slice.
/// Split out from [`check_weight_properties`] so corrupted sequences can be
/// fed in directly as a negative control.
pub fn weight_properties_of(weights: &[f64]) -> WeightPropertyReport {
    let n = weights.len() - 1; // weights = d_0..d_n
    let min_weight = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let mut min_decrease = f64::INFINITY;
    for k in 0..n {
        min_decrease = min_decrease.min(weights[k] - weights[k + 1]);
    }
    let mut residual = weights[n];
    for k in (0..n).rev() {
        residual += weights[k] - weights[k + 1];
    }
    let telescoping_residual = (residual - 1.0).abs();
    let mut min_convexity = f64::INFINITY;
    for k in 1..n {
        min_convexity = min_convexity.min(weights[k + 1] - 2.0 * weights[k] + weights[k - 1]);
    }
    WeightPropertyReport {
        positivity: min_weight > 0.0 && weights[0] == 1.0,
        monotonicity: min_decrease > 0.0,
        telescoping: telescoping_residual < TELESCOPING_TOL,
        convexity: min_convexity >= CONVEXITY_TOL,
        min_weight,
        min_decrease,
        telescoping_residual,
        min_convexity,
    }
}

/// Check positivity, strict decrease, telescoping and convexity of the
/// (0,1)-order weights `d_0..d_n`.
pub fn check_weight_properties(order: f64, n: usize) -> Result<WeightPropertyReport> {
    if n < 2 {
        return Err(Error::Domain {
            param: "n",
            message: format!("need n >= 2 to check weight properties, got {n}"),
        });
    }
    let seq = beta_weights(order, n + 1)?;
    Ok(weight_properties_of(seq.weights()))
}

/// Slow independent reference for the continuous Caputo derivative, used
/// only by tests.
///
/// Composite midpoint rule on `panels` uniform subintervals of [0, t]; the
/// midpoints never touch the integrable kernel singularity at s = t. The
/// derivative of `g` is formed by central differences with step
/// `max(panel width, 1e-4)`; the floor keeps the second-difference rounding
/// noise (~ε/δ²) far below the quadrature error. `g` must be smooth on a
/// neighbourhood of [0, t] since stencils may step slightly outside.
///
/// Accuracy is limited by the kernel singularity to O(panels^{-(1-β)}) for
/// orders β in (0,1) and O(panels^{-(2-γ)}) for γ in (1,2): fine for
/// moderate orders, very slow near the upper end of each interval.
pub fn caputo_quadrature_oracle<F: Fn(f64) -> f64>(
    g: F,
    order: f64,
    t: f64,
    panels: usize,
) -> Result<f64> {
    if order == 1.0 {
        return Err(Error::Domain {
            param: "order",
            message: "order 1 is ambiguous: neither the (0,1) nor the (1,2) branch applies".into(),
        });
    }
    if !(order > 0.0 && order < 2.0) {
        return Err(Error::Domain {
            param: "order",
            message: format!("{order} is outside (0,1) ∪ (1,2)"),
        });
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain {
            param: "t",
            message: format!("evaluation time must be positive, got {t}"),
        });
    }
    if panels == 0 {
        return Err(Error::Domain {
            param: "panels",
            message: "need at least one quadrature panel".into(),
        });
    }
    let h = t / panels as f64;
    let delta = h.max(1e-4);
    let mut sum = 0.0;
    if order < 1.0 {
        for j in 0..panels {
            let s = (j as f64 + 0.5) * h;
            let dg = (g(s + delta) - g(s - delta)) / (2.0 * delta);
            sum += (t - s).powf(-order) * dg;
        }
        Ok(sum * h / gamma(1.0 - order))
    } else {
        for j in 0..panels {
            let s = (j as f64 + 0.5) * h;
            let d2g = (g(s + delta) - 2.0 * g(s) + g(s - delta)) / (delta * delta);
            sum += (t - s).powf(1.0 - order) * d2g;
        }
        Ok(sum * h / gamma(2.0 - order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    fn scalar_history<F: Fn(f64) -> f64>(g: F, n: usize, tau: f64) -> IncrementHistory {
        let levels: Vec<Vec<f64>> = (0..=n).map(|k| vec![g(k as f64 * tau)]).collect();
        IncrementHistory::from_levels(&levels, tau).unwrap()
    }

    #[test]
    fn gamma_weights_single_entry_is_one() {
        let w = gamma_weights(1.5, 1).unwrap();
        assert_eq!(w.weights(), &[1.0]);
    }

    #[test]
    fn gamma_weights_closed_form() {
        let w = gamma_weights(1.5, 3).unwrap();
        let expect = [
            1.0,
            2f64.powf(0.5) - 1.0,
            3f64.powf(0.5) - 2f64.powf(0.5),
        ];
        for (got, want) in w.weights().iter().zip(expect) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        assert!((w.weights()[1] - 0.414_213_562_373_095_1).abs() < 1e-12);
        assert!((w.weights()[2] - 0.317_837_245_195_782_3).abs() < 1e-12);
    }

    #[test]
    fn gamma_weights_near_upper_endpoint_stay_monotone() {
        let w = gamma_weights(1.999, 50).unwrap();
        assert_eq!(w.weights()[0], 1.0);
        for k in 1..50 {
            assert!(w.weights()[k] > 0.0);
            assert!(w.weights()[k] < w.weights()[k - 1]);
            // tail entries collapse toward zero as the order approaches 2
            assert!(w.weights()[k] < 0.01);
        }
    }

    #[test]
    fn gamma_weights_rejects_endpoints() {
        for bad in [1.0, 2.0, 0.5, 2.3] {
            let err = gamma_weights(bad, 4).unwrap_err();
            match err {
                Error::Domain { param, .. } => assert_eq!(param, "order"),
                other => panic!("unexpected error {other:?}"),
            }
        }
        assert!(gamma_weights(1.5, 0).is_err());
    }

    #[test]
    fn beta_weights_basics() {
        assert_eq!(beta_weights(0.6, 1).unwrap().weights(), &[1.0]);
        // same closed form as gamma weights when 1-β = 2-γ
        let b = beta_weights(0.5, 3).unwrap();
        let g = gamma_weights(1.5, 3).unwrap();
        for (x, y) in b.weights().iter().zip(g.weights()) {
            assert_eq!(x, y);
        }
        assert!(beta_weights(0.0, 3).is_err());
        assert!(beta_weights(1.0, 3).is_err());
    }

    #[test]
    fn beta_weights_telescoping_identity() {
        let w = beta_weights(0.3, 4).unwrap();
        let d = w.weights();
        let sum: f64 = (0..3).map(|k| d[k] - d[k + 1]).sum::<f64>() + d[3];
        assert!((sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn property_report_holds_for_valid_orders() {
        for (beta, n) in [(0.6, 100), (0.01, 1000), (0.99, 1000)] {
            let rep = check_weight_properties(beta, n).unwrap();
            assert!(rep.all_hold(), "β={beta} n={n}: {rep:?}");
        }
        let rep = check_weight_properties(0.99, 1000).unwrap();
        assert!(rep.telescoping_residual < 1e-12);
    }

    #[test]
    fn property_report_requires_n_at_least_two() {
        assert!(check_weight_properties(0.5, 1).is_err());
    }

    #[test]
    fn corrupted_weights_fail_the_property_report() {
        // negative controls: a mis-normalized sequence breaks telescoping
        // (the telescoped sum always equals d_0, so the check pins d_0 = 1);
        // a locally bumped entry breaks monotonicity/convexity
        let good = beta_weights(0.4, 11).unwrap().weights().to_vec();
        let scaled: Vec<f64> = good.iter().map(|w| w * 1.0001).collect();
        let rep = weight_properties_of(&scaled);
        assert!(!rep.telescoping);
        assert!(!rep.all_hold());

        let mut bumped = good;
        bumped[5] *= 1.05;
        let rep = weight_properties_of(&bumped);
        assert!(!rep.monotonicity || !rep.convexity);
        assert!(!rep.all_hold());
    }

    #[test]
    fn l2_bracket_first_level_reduces_to_increment_minus_slope() {
        let w = gamma_weights(1.3, 4).unwrap();
        let mut hist = IncrementHistory::new(0.5).unwrap();
        hist.push(vec![2.0, -1.0]).unwrap();
        let out = l2_bracket(&w, &hist, &[0.25, 0.5]).unwrap();
        assert!((out[0] - (2.0 - 0.25)).abs() < 1e-15);
        assert!((out[1] - (-1.0 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn l2_bracket_constant_field_is_zero() {
        let w = gamma_weights(1.7, 8).unwrap();
        let hist = scalar_history(|_| 3.0, 6, 0.125);
        let out = l2_bracket(&w, &hist, &[0.0]).unwrap();
        assert_eq!(out, vec![0.0]);
    }

    #[test]
    fn l2_bracket_approximates_caputo_of_cubic() {
        // D^γ t³ = Γ(4)/Γ(4-γ) t^{3-γ}; at γ=1.5, t=1 this is 6/Γ(2.5).
        let order = 1.5;
        let n = 320;
        let tau = 1.0 / n as f64;
        let w = gamma_weights(order, n).unwrap();
        let hist = scalar_history(|t| t * t * t, n, tau);
        let bracket = l2_bracket(&w, &hist, &[0.0]).unwrap();
        let approx = mu_gamma(order, tau) * bracket[0];
        let exact = 6.0 / gamma(2.5);
        assert!((exact - 4.513_516_668_382_049).abs() < 1e-12);
        // first-order formula: observed error ~1.1e-2 at τ=1/320
        assert!((approx - exact).abs() < 1.5e-2, "approx {approx}");
    }

    #[test]
    fn l1_bracket_first_level_and_zero_field() {
        let w = beta_weights(0.4, 8).unwrap();
        let mut hist = IncrementHistory::new(1.0).unwrap();
        hist.push(vec![5.0]).unwrap();
        assert_eq!(l1_bracket(&w, &hist).unwrap(), vec![5.0]);

        let zeros = scalar_history(|_| 1.0, 5, 0.2);
        assert_eq!(l1_bracket(&w, &zeros).unwrap(), vec![0.0]);
    }

    #[test]
    fn l1_bracket_approximates_caputo_of_cubic() {
        // D^β t³ at β=0.6, t=1 equals 6/Γ(3.4).
        let order = 0.6;
        let n = 320;
        let tau = 1.0 / n as f64;
        let w = beta_weights(order, n).unwrap();
        let hist = scalar_history(|t| t * t * t, n, tau);
        let approx = mu_beta(order, tau) * l1_bracket(&w, &hist).unwrap()[0];
        let exact = 6.0 / gamma(3.4);
        assert!((exact - 2.012_608_032_117_907).abs() < 1e-12);
        // O(τ^{1.4}) formula: observed error ~5.1e-4 at τ=1/320
        assert!((approx - exact).abs() < 1e-3, "approx {approx}");
    }

    #[test]
    fn averaged_l1_bracket_edge_cases() {
        let w = beta_weights(0.3, 4).unwrap();
        let mut hist = IncrementHistory::new(1.0).unwrap();
        hist.push(vec![4.0]).unwrap();
        // n = 1: second sum empty, result is d_0 ∇U¹ / 2
        assert_eq!(averaged_l1_bracket(&w, &hist).unwrap(), vec![2.0]);

        let zeros = scalar_history(|_| -2.5, 3, 0.25);
        assert_eq!(averaged_l1_bracket(&w, &zeros).unwrap(), vec![0.0]);
    }

    #[test]
    fn averaged_l1_bracket_telescopes_for_linear_field() {
        // U = t gives unit increments, so the sums telescope to
        // (n^{1-β} + (n-1)^{1-β})/2.
        let beta = 0.3;
        let n = 5;
        let w = beta_weights(beta, n).unwrap();
        let hist = scalar_history(|t| t, n, 0.2);
        let got = averaged_l1_bracket(&w, &hist).unwrap()[0];
        let expect = 0.5 * ((n as f64).powf(1.0 - beta) + (n as f64 - 1.0).powf(1.0 - beta));
        assert!((got - expect).abs() < 1e-13, "{got} vs {expect}");
    }

    #[test]
    fn bracket_shape_errors() {
        let w = gamma_weights(1.5, 2).unwrap();
        let mut hist = IncrementHistory::new(1.0).unwrap();
        hist.push(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            l2_bracket(&w, &hist, &[1.0]).unwrap_err(),
            Error::Shape(_)
        ));
        // too few weights for the history depth
        let short = gamma_weights(1.5, 1).unwrap();
        let deep = scalar_history(|t| t, 3, 0.5);
        assert!(l2_bracket(&short, &deep, &[0.0]).is_err());
        // mismatched push is rejected up front
        let mut bad = IncrementHistory::new(1.0).unwrap();
        bad.push(vec![1.0, 2.0]).unwrap();
        assert!(bad.push(vec![1.0]).is_err());
    }

    #[test]
    fn oracle_rejects_bad_domains() {
        assert!(caputo_quadrature_oracle(|t| t, 1.0, 1.0, 100).is_err());
        assert!(caputo_quadrature_oracle(|t| t, 2.5, 1.0, 100).is_err());
        assert!(caputo_quadrature_oracle(|t| t, 0.5, 0.0, 100).is_err());
        assert!(caputo_quadrature_oracle(|t| t, 0.5, 1.0, 0).is_err());
    }

    #[test]
    fn oracle_constant_function_is_zero() {
        let v = caputo_quadrature_oracle(|_| 7.5, 0.5, 1.0, 10_000).unwrap();
        assert!(v.abs() < 1e-10, "got {v}");
        let v = caputo_quadrature_oracle(|_| 7.5, 1.5, 1.0, 10_000).unwrap();
        assert!(v.abs() < 1e-6, "got {v}");
    }

    #[test]
    fn oracle_linear_function_matches_closed_form() {
        // D^β t = t^{1-β}/Γ(2-β)
        let beta = 0.5;
        let v = caputo_quadrature_oracle(|t| t, beta, 1.0, 1 << 20).unwrap();
        let exact = 1.0 / gamma(2.0 - beta);
        assert!((v - exact).abs() < 1e-3, "{v} vs {exact}");
    }

    #[test]
    fn oracle_cubic_gamma_order() {
        let v = caputo_quadrature_oracle(|t| t * t * t, 1.5, 1.0, 1 << 20).unwrap();
        let exact = 4.513_516_668_382_049;
        assert!((v - exact).abs() < 5e-3, "{v} vs {exact}");
    }
}
