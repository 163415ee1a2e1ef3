//! Verification apparatus: discrete norms, error measurement, convergence
//! order estimation, stability-bound audits and the Toeplitz positivity
//! study behind the averaged-sum quadratic form.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fracops::{
    beta_weights, gamma_weights, l1_bracket, l2_bracket, mu_beta, mu_gamma, IncrementHistory,
};
use crate::model::{ModelCoefficients, ProblemSpec};
use crate::rng::Lcg64;
use crate::solver::{march, GridSpec, Scheme, SolutionHistory};
use crate::special::gamma;

/// Discrete error norms of a final-time field: `l2 = sqrt(h Σ v_i²)` and the
/// grid maximum.
#[derive(Clone, Copy, Debug)]
pub struct ErrorPair {
    pub l2: f64,
    pub linf: f64,
}

/// Final-time error against the problem's exact solution, over all grid
/// points including boundaries (boundary error is zero whenever the data
/// come from the exact solution).
pub fn error_at_final(sol: &SolutionHistory, problem: &ProblemSpec) -> Result<ErrorPair> {
    let exact = problem
        .exact
        .as_ref()
        .ok_or_else(|| Error::Usage("problem provides no exact solution".into()))?;
    let grid = sol.grid();
    let t_final = grid.t(grid.n());
    let last = sol.final_level();
    let mut sumsq = 0.0;
    let mut linf: f64 = 0.0;
    for (i, v) in last.iter().enumerate() {
        let diff = v - exact(grid.x(i), t_final);
        sumsq += diff * diff;
        linf = linf.max(diff.abs());
    }
    Ok(ErrorPair {
        l2: (grid.h() * sumsq).sqrt(),
        linf,
    })
}

/// Discrete energy norm `sqrt(a2 ‖v‖₀² + a3 |v|₁²)` with
/// `‖v‖₀² = h Σ_{i=1}^{M-1} v_i²` and `|v|₁² = h Σ_{i=1}^{M} (∇_x v_i)²`.
/// `seminorm_only` flags the a2 = 0 degeneration.
#[derive(Clone, Copy, Debug)]
pub struct H1Norm {
    pub value: f64,
    pub seminorm_only: bool,
}

pub fn discrete_h1_norm(v: &[f64], coeffs: &ModelCoefficients, h: f64) -> H1Norm {
    let m = v.len() - 1;
    let mut zero_sq = 0.0;
    for vi in &v[1..m] {
        zero_sq += vi * vi;
    }
    zero_sq *= h;
    let mut semi_sq = 0.0;
    for i in 1..=m {
        let grad = (v[i] - v[i - 1]) / h;
        semi_sq += grad * grad;
    }
    semi_sq *= h;
    H1Norm {
        value: (coeffs.a2 * zero_sq + coeffs.a3 * semi_sq).sqrt(),
        seminorm_only: coeffs.a2 == 0.0,
    }
}

fn l0_norm_sq(v: &[f64], h: f64) -> f64 {
    let m = v.len() - 1;
    let mut s = 0.0;
    for vi in &v[1..m] {
        s += vi * vi;
    }
    h * s
}

/// One row of a temporal-convergence table.
#[derive(Clone, Copy, Debug)]
pub struct ConvergenceRow {
    pub tau: f64,
    pub errors: ErrorPair,
    pub order_l2: Option<f64>,
    pub order_linf: Option<f64>,
}

/// Temporal-convergence report at fixed spatial resolution. Orders are
/// consecutive-row log₂ ratios (the step list must halve); they are withheld
/// on the first row and whenever an error sits at the rounding floor, where
/// the ratio stops measuring the scheme.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub fixed_h: f64,
    pub scheme: Scheme,
    pub label: String,
}

/// Errors below this are treated as rounding floor; order estimates are
/// meaningless there and get flagged as absent.
pub const ERROR_FLOOR: f64 = 1e-13;

fn order_between(prev: f64, cur: f64) -> Option<f64> {
    if prev <= ERROR_FLOOR || cur <= ERROR_FLOOR {
        None
    } else {
        Some((prev / cur).log2())
    }
}

/// Run the scheme once per τ and tabulate final-time errors and orders.
/// The τ list must strictly halve; per-τ marches run in parallel.
pub fn convergence_table(
    problem: &ProblemSpec,
    scheme: Scheme,
    tau_list: &[f64],
    h: f64,
    label: &str,
) -> Result<ConvergenceReport> {
    if problem.exact.is_none() {
        return Err(Error::Usage(
            "convergence table needs a problem with an exact solution".into(),
        ));
    }
    if tau_list.is_empty() {
        return Err(Error::Usage("empty tau list".into()));
    }
    for pair in tau_list.windows(2) {
        if (pair[1] - pair[0] / 2.0).abs() > 1e-12 * pair[0] {
            return Err(Error::Usage(format!(
                "tau list must halve row to row: {} does not follow {}",
                pair[1], pair[0]
            )));
        }
    }
    let m = (problem.domain_length / h).round() as usize;
    let errors: Vec<ErrorPair> = tau_list
        .par_iter()
        .map(|&tau| -> Result<ErrorPair> {
            let n = (problem.final_time / tau).round() as usize;
            let grid = GridSpec::for_problem(problem, m, n)?;
            let sol = march(problem, &grid, scheme)?;
            error_at_final(&sol, problem)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(tau_list.len());
    for (idx, (&tau, err)) in tau_list.iter().zip(&errors).enumerate() {
        let (order_l2, order_linf) = if idx == 0 {
            (None, None)
        } else {
            (
                order_between(errors[idx - 1].l2, err.l2),
                order_between(errors[idx - 1].linf, err.linf),
            )
        };
        rows.push(ConvergenceRow {
            tau,
            errors: *err,
            order_l2,
            order_linf,
        });
    }
    Ok(ConvergenceReport {
        rows,
        fixed_h: h,
        scheme,
        label: label.to_string(),
    })
}

/// Both sides of the energy stability bound, evaluated on a computed run.
#[derive(Clone, Copy, Debug)]
pub struct StabilityAudit {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

pub const STABILITY_SLACK: f64 = 1e-10;

/// Audit the scheme's a-priori energy bound
///
/// `‖U^N‖₁² <= ‖U^0‖₁² + Σ_j b_j T^{2-γ_j}/Γ(3-γ_j) ‖φ₂‖₀²
///            + T/(2 ε₀) max_n ‖f‖₀²`
///
/// with `ε₀ = Σ_j b_j T^{1-γ_j}/(2Γ(2-γ_j)) + a1`; the source maximum runs
/// over `f^n` for Scheme I and over the two-level averages `f^{n-1/2}` for
/// Scheme II. The bound is proven for homogeneous boundaries only, so
/// nonhomogeneous problems are refused.
pub fn stability_audit(sol: &SolutionHistory, problem: &ProblemSpec) -> Result<StabilityAudit> {
    let grid = sol.grid();
    let times: Vec<f64> = (0..=grid.n()).map(|n| grid.t(n)).collect();
    if !problem.has_homogeneous_boundaries(times) {
        return Err(Error::Usage(
            "stability bound is proven for homogeneous boundaries only; \
             refusing to audit a nonhomogeneous run"
                .into(),
        ));
    }
    let coeffs = &problem.coeffs;
    let t_total = problem.final_time;
    let h = grid.h();
    let m = grid.m();

    let lhs = discrete_h1_norm(sol.final_level(), coeffs, h).value.powi(2);

    let mut rhs = discrete_h1_norm(sol.level(0), coeffs, h).value.powi(2);
    let phi2: Vec<f64> = (0..=m).map(|i| (problem.initial_slope)(grid.x(i))).collect();
    let phi2_sq = l0_norm_sq(&phi2, h);
    for t in &coeffs.gamma_terms {
        rhs += t.coeff * t_total.powf(2.0 - t.order) / gamma(3.0 - t.order) * phi2_sq;
    }
    let mut eps0 = coeffs.a1;
    for t in &coeffs.gamma_terms {
        eps0 += t.coeff * t_total.powf(1.0 - t.order) / (2.0 * gamma(2.0 - t.order));
    }
    let mut f_max_sq: f64 = 0.0;
    let f_level = |t: f64| -> f64 {
        let v: Vec<f64> = (0..=m).map(|i| (problem.source)(grid.x(i), t)).collect();
        l0_norm_sq(&v, h)
    };
    match sol.scheme() {
        Scheme::I => {
            for n in 1..=grid.n() {
                f_max_sq = f_max_sq.max(f_level(grid.t(n)));
            }
        }
        Scheme::II => {
            // ‖(f^n + f^{n-1})/2‖₀² at each level
            let mut prev: Vec<f64> = (0..=m).map(|i| (problem.source)(grid.x(i), 0.0)).collect();
            for n in 1..=grid.n() {
                let cur: Vec<f64> = (0..=m)
                    .map(|i| (problem.source)(grid.x(i), grid.t(n)))
                    .collect();
                let avg: Vec<f64> = cur.iter().zip(&prev).map(|(a, b)| 0.5 * (a + b)).collect();
                f_max_sq = f_max_sq.max(l0_norm_sq(&avg, h));
                prev = cur;
            }
        }
    }
    rhs += t_total / (2.0 * eps0) * f_max_sq;

    Ok(StabilityAudit {
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + STABILITY_SLACK),
    })
}

/// Result of the symmetric-Toeplitz positivity study for one β.
#[derive(Clone, Debug)]
pub struct ToeplitzReport {
    pub beta: f64,
    pub sizes: Vec<usize>,
    /// `det(H_N) / det(H_{N+1})` per requested size.
    pub det_ratios: Vec<f64>,
    /// log det(H_N) per requested size (pivot products in the log domain).
    pub log_dets: Vec<f64>,
    pub positive_definite: Vec<bool>,
    /// Minimum over sampled random vectors of Q(v)/‖v‖², where Q is the
    /// averaged two-sum quadratic form.
    pub min_quadform: f64,
}

pub const TOEPLITZ_SIZE_LIMIT: usize = 2000;

/// Build `H_N = (A + Aᵀ)/2`: unit diagonal, `(d_{|i-j|-1} + d_{|i-j|})/2`
/// off the diagonal.
fn toeplitz_matrix(d: &[f64], n: usize) -> Vec<f64> {
    let mut h = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            h[i * n + j] = if i == j {
                d[0]
            } else {
                let k = i.abs_diff(j);
                0.5 * (d[k - 1] + d[k])
            };
        }
    }
    h
}

/// Unpivoted LDLᵀ factorization; returns the log-determinant when every
/// pivot is positive (the positive-definiteness certificate), None otherwise.
fn ldlt_logdet(mat: &[f64], n: usize) -> Option<f64> {
    let mut l = vec![0.0; n * n];
    let mut d = vec![0.0; n];
    let mut logdet = 0.0;
    for j in 0..n {
        let mut dj = mat[j * n + j];
        for k in 0..j {
            dj -= l[j * n + k] * l[j * n + k] * d[k];
        }
        if !dj.is_finite() || dj <= 0.0 {
            return None;
        }
        d[j] = dj;
        logdet += dj.ln();
        for i in j + 1..n {
            let mut v = mat[i * n + j];
            for k in 0..j {
                v -= l[i * n + k] * l[j * n + k] * d[k];
            }
            l[i * n + j] = v / dj;
        }
    }
    Some(logdet)
}

/// Averaged two-sum quadratic form
/// `Σ_n Σ_{k<=n} d_{n-k} v_k v_n + Σ_n Σ_{k<=n-1} d_{n-1-k} v_k v_n`.
pub fn averaged_quadratic_form(d: &[f64], v: &[f64]) -> f64 {
    let n = v.len();
    let mut q = 0.0;
    for nn in 1..=n {
        let mut inner = 0.0;
        for k in 1..=nn {
            inner += d[nn - k] * v[k - 1];
        }
        for k in 1..nn {
            inner += d[nn - 1 - k] * v[k - 1];
        }
        q += inner * v[nn - 1];
    }
    q
}

/// Single-sum quadratic form `Σ_n Σ_{k<=n} d_{n-k} v_k v_n`.
pub fn single_quadratic_form(d: &[f64], v: &[f64]) -> f64 {
    let n = v.len();
    let mut q = 0.0;
    for nn in 1..=n {
        let mut inner = 0.0;
        for k in 1..=nn {
            inner += d[nn - k] * v[k - 1];
        }
        q += inner * v[nn - 1];
    }
    q
}

/// Factorize `H_N` for every requested size, certify positive definiteness,
/// form determinant ratios in the log domain, and sample the averaged
/// quadratic form with seeded random vectors.
pub fn toeplitz_study(beta: f64, sizes: &[usize], seed: u64) -> Result<ToeplitzReport> {
    if sizes.is_empty() {
        return Err(Error::Usage("empty size list".into()));
    }
    let max_n = *sizes.iter().max().unwrap();
    for &s in sizes {
        if s == 0 || s > TOEPLITZ_SIZE_LIMIT {
            return Err(Error::Domain {
                param: "sizes",
                message: format!("size {s} outside 1..={TOEPLITZ_SIZE_LIMIT}"),
            });
        }
    }
    let d = beta_weights(beta, max_n + 2)?;
    let dw = d.weights();

    let results: Vec<(Option<f64>, Option<f64>)> = sizes
        .par_iter()
        .map(|&n| {
            let log_n = ldlt_logdet(&toeplitz_matrix(dw, n), n);
            let log_n1 = ldlt_logdet(&toeplitz_matrix(dw, n + 1), n + 1);
            (log_n, log_n1)
        })
        .collect();

    let mut det_ratios = Vec::with_capacity(sizes.len());
    let mut log_dets = Vec::with_capacity(sizes.len());
    let mut positive_definite = Vec::with_capacity(sizes.len());
    for (log_n, log_n1) in results {
        positive_definite.push(log_n.is_some());
        log_dets.push(log_n.unwrap_or(f64::NAN));
        det_ratios.push(match (log_n, log_n1) {
            (Some(a), Some(b)) => (a - b).exp(),
            _ => f64::NAN,
        });
    }

    let mut rng = Lcg64::new(seed);
    let mut min_quadform = f64::INFINITY;
    for _ in 0..50 {
        let len = rng.next_usize(1, max_n);
        let v: Vec<f64> = (0..len).map(|_| rng.next_in(-1.0, 1.0)).collect();
        let norm_sq: f64 = v.iter().map(|x| x * x).sum();
        if norm_sq == 0.0 {
            continue;
        }
        min_quadform = min_quadform.min(averaged_quadratic_form(dw, &v) / norm_sq);
    }

    Ok(ToeplitzReport {
        beta,
        sizes: sizes.to_vec(),
        det_ratios,
        log_dets,
        positive_definite,
        min_quadform,
    })
}

/// Which discrete fractional-derivative formula to rate-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorFormula {
    /// (1,2)-order bracket read as an approximation at `t_n` (first order).
    L2AtN,
    /// Same bracket read at `t_{n-1/2}` (order `3-γ`).
    L2AtHalf,
    /// (0,1)-order sum at `t_n` (order `2-β`).
    L1,
}

/// Observed errors and consecutive log₂ rates of a discrete formula against
/// a supplied analytic Caputo derivative.
#[derive(Clone, Debug)]
pub struct OperatorRateReport {
    pub taus: Vec<f64>,
    pub errors: Vec<f64>,
    pub rates: Vec<f64>,
}

impl OperatorRateReport {
    /// Rate from the two finest step sizes.
    pub fn final_rate(&self) -> f64 {
        *self.rates.last().expect("at least two taus")
    }
}

/// Measure the error of a discrete fractional-derivative formula applied to
/// samples of `g` against the analytic derivative `caputo(t)` at the final
/// time, for every τ in a halving list.
pub fn operator_convergence_check(
    order: f64,
    formula: OperatorFormula,
    g: &dyn Fn(f64) -> f64,
    caputo: &dyn Fn(f64) -> f64,
    initial_slope: f64,
    tau_list: &[f64],
    t_final: f64,
) -> Result<OperatorRateReport> {
    if tau_list.len() < 2 {
        return Err(Error::Usage("need at least two step sizes".into()));
    }
    for pair in tau_list.windows(2) {
        if (pair[1] - pair[0] / 2.0).abs() > 1e-12 * pair[0] {
            return Err(Error::Usage("tau list must halve".into()));
        }
    }
    let mut errors = Vec::with_capacity(tau_list.len());
    for &tau in tau_list {
        let n = (t_final / tau).round() as usize;
        let levels: Vec<Vec<f64>> = (0..=n).map(|k| vec![g(k as f64 * tau)]).collect();
        let hist = IncrementHistory::from_levels(&levels, tau)?;
        let approx = match formula {
            OperatorFormula::L2AtN | OperatorFormula::L2AtHalf => {
                let w = gamma_weights(order, n)?;
                mu_gamma(order, tau) * l2_bracket(&w, &hist, &[initial_slope])?[0]
            }
            OperatorFormula::L1 => {
                let w = beta_weights(order, n)?;
                mu_beta(order, tau) * l1_bracket(&w, &hist)?[0]
            }
        };
        let reference = match formula {
            OperatorFormula::L2AtHalf => caputo(t_final - tau / 2.0),
            _ => caputo(t_final),
        };
        errors.push((approx - reference).abs());
    }
    let rates = errors
        .windows(2)
        .map(|w| (w[0] / w[1]).log2())
        .collect();
    Ok(OperatorRateReport {
        taus: tau_list.to_vec(),
        errors,
        rates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::example1_problem;
    use std::sync::Arc;

    #[test]
    fn error_at_final_vanishes_when_scheme_reproduces_exact() {
        // u = (1+t) x(1-x) with no fractional terms and a4 = 0 is linear in
        // time and quadratic in space, so Scheme I reproduces it to rounding.
        let coeffs = ModelCoefficients::new(1.0, 1.0, 1.0, 0.0, vec![], vec![], 0.5).unwrap();
        let source: crate::model::SpaceTimeFn = Arc::new(|x: f64, t: f64| {
            let u = (1.0 + t) * x * (1.0 - x);
            x * (1.0 - x) + u + 2.0 * (1.0 + t)
        });
        let problem = ProblemSpec::new(
            coeffs,
            1.0,
            1.0,
            Arc::new(|x: f64| x * (1.0 - x)),
            Arc::new(|x: f64| x * (1.0 - x)),
            Arc::new(|_| 0.0),
            Arc::new(|_| 0.0),
            source,
        )
        .unwrap()
        .with_exact(Arc::new(|x: f64, t: f64| (1.0 + t) * x * (1.0 - x)));
        let grid = GridSpec::new(1.0, 1.0, 8, 4).unwrap();
        let sol = march(&problem, &grid, Scheme::I).unwrap();
        let err = error_at_final(&sol, &problem).unwrap();
        assert!(err.l2 < 1e-13, "l2 {}", err.l2);
        assert!(err.linf < 1e-13, "linf {}", err.linf);
        // norm comparison invariant on [0, L]
        assert!(err.linf >= err.l2 / problem.domain_length.sqrt() - 1e-16);

        // missing exact solution is a usage error
        let mut no_exact = problem.clone();
        no_exact.exact = None;
        assert!(matches!(
            error_at_final(&sol, &no_exact).unwrap_err(),
            Error::Usage(_)
        ));
    }

    #[test]
    fn h1_norm_hand_values() {
        let v = [0.0, 1.0, 0.0];
        let c_mass = ModelCoefficients::new(1.0, 1.0, 1e-300, 0.0, vec![], vec![], 0.5).unwrap();
        // a2 = 1, a3 ~ 0: sqrt(h * 1) = sqrt(1/2)
        let got = discrete_h1_norm(&v, &c_mass, 0.5);
        assert!((got.value - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(!got.seminorm_only);

        let c_semi = ModelCoefficients::new(1.0, 0.0, 1.0, 0.0, vec![], vec![], 0.5).unwrap();
        // a2 = 0, a3 = 1: sqrt(0.5 * (4 + 4)) = 2, flagged as seminorm
        let got = discrete_h1_norm(&v, &c_semi, 0.5);
        assert!((got.value - 2.0).abs() < 1e-12);
        assert!(got.seminorm_only);

        let zeros = [0.0; 5];
        assert_eq!(discrete_h1_norm(&zeros, &c_semi, 0.25).value, 0.0);
    }

    #[test]
    fn convergence_table_rejects_bad_input() {
        let p = example1_problem(0.7, 0.6, 1.5).unwrap();
        // non-halving list
        assert!(convergence_table(&p, Scheme::I, &[0.1, 0.06], 0.25, "x").is_err());
        // no exact solution
        let params = crate::model::OldroydBParams {
            lambda_relax: 3.0,
            theta_retard: 4.0,
            alpha: 0.5,
            beta: 0.6,
            nu: 1.0,
            magnetic: 2.0,
        };
        let couette = crate::model::example2_problem(1.0, &params, false).unwrap();
        assert!(convergence_table(&couette, Scheme::I, &[0.1, 0.05], 0.25, "x").is_err());
    }

    #[test]
    fn convergence_table_flags_rounding_floor_orders() {
        // u = (1+t) x(1-x) with no fractional terms and a4 = 0 is reproduced
        // exactly by Scheme I: orders must come back flagged (absent).
        let coeffs = ModelCoefficients::new(1.0, 1.0, 1.0, 0.0, vec![], vec![], 0.5).unwrap();
        let source: crate::model::SpaceTimeFn = Arc::new(|x: f64, t: f64| {
            let u = (1.0 + t) * x * (1.0 - x);
            let u_t = x * (1.0 - x);
            let u_xx = -2.0 * (1.0 + t);
            u_t + u - u_xx
        });
        let problem = ProblemSpec::new(
            coeffs,
            1.0,
            1.0,
            Arc::new(|x: f64| x * (1.0 - x)),
            Arc::new(|x: f64| x * (1.0 - x)),
            Arc::new(|_| 0.0),
            Arc::new(|_| 0.0),
            source,
        )
        .unwrap()
        .with_exact(Arc::new(|x: f64, t: f64| (1.0 + t) * x * (1.0 - x)));
        let report =
            convergence_table(&problem, Scheme::I, &[0.25, 0.125, 0.0625], 0.125, "exact").unwrap();
        for row in &report.rows {
            assert!(row.errors.l2 < 1e-13, "error {} not at floor", row.errors.l2);
            assert!(row.order_l2.is_none());
            assert!(row.order_linf.is_none());
        }
    }

    #[test]
    fn stability_audit_zero_problem_passes_with_zero_sides() {
        let coeffs = ModelCoefficients::new(1.0, 1.0, 1.0, 1.0, vec![], vec![], 0.5).unwrap();
        let zero = Arc::new(|_: f64| 0.0);
        let p = ProblemSpec::new(
            coeffs,
            1.0,
            1.0,
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero,
            Arc::new(|_, _| 0.0),
        )
        .unwrap();
        let grid = GridSpec::new(1.0, 1.0, 6, 3).unwrap();
        let sol = march(&p, &grid, Scheme::I).unwrap();
        let audit = stability_audit(&sol, &p).unwrap();
        assert_eq!(audit.lhs, 0.0);
        assert_eq!(audit.rhs, 0.0);
        assert!(audit.pass);
    }

    #[test]
    fn stability_audit_example1_passes_both_schemes() {
        let p = example1_problem(0.7, 0.6, 1.5).unwrap();
        let grid = GridSpec::new(1.0, 1.0, 50, 20).unwrap();
        for scheme in [Scheme::I, Scheme::II] {
            let sol = march(&p, &grid, scheme).unwrap();
            let audit = stability_audit(&sol, &p).unwrap();
            assert!(audit.pass, "scheme {scheme}: {audit:?}");
            assert!(audit.lhs <= audit.rhs);
        }
    }

    #[test]
    fn stability_audit_refuses_nonhomogeneous_boundaries() {
        let params = crate::model::OldroydBParams {
            lambda_relax: 3.0,
            theta_retard: 4.0,
            alpha: 0.5,
            beta: 0.6,
            nu: 1.0,
            magnetic: 2.0,
        };
        let p = crate::model::example2_problem(1.0, &params, false).unwrap();
        let grid = GridSpec::for_problem(&p, 6, 3).unwrap();
        let sol = march(&p, &grid, Scheme::II).unwrap();
        assert!(matches!(
            stability_audit(&sol, &p).unwrap_err(),
            Error::Usage(_)
        ));
    }

    #[test]
    fn toeplitz_small_sizes_match_closed_forms() {
        let beta = 0.4;
        let rep = toeplitz_study(beta, &[1, 2], 1).unwrap();
        assert!(rep.positive_definite.iter().all(|&b| b));
        // det H_1 = d_0 = 1
        assert!((rep.log_dets[0].exp() - 1.0).abs() < 1e-12);
        // det H_2 = d_0² - (d_0 + d_1)²/4
        let d1 = 2f64.powf(1.0 - beta) - 1.0;
        let expect = 1.0 - (1.0 + d1) * (1.0 + d1) / 4.0;
        assert!((rep.log_dets[1].exp() - expect).abs() < 1e-12);
        assert!(rep.min_quadform > -1e-10);
    }

    #[test]
    fn toeplitz_rejects_oversized_request() {
        assert!(toeplitz_study(0.5, &[3000], 1).is_err());
        assert!(toeplitz_study(0.5, &[], 1).is_err());
    }

    #[test]
    fn indefinite_matrix_reports_not_positive_definite() {
        // LDLᵀ must fail gracefully, not crash
        let mat = vec![1.0, 2.0, 2.0, 1.0]; // eigenvalues 3, -1
        assert!(ldlt_logdet(&mat, 2).is_none());
    }

    #[test]
    fn operator_check_requires_halving() {
        let g = |t: f64| t;
        let c = |_: f64| 1.0;
        assert!(operator_convergence_check(
            0.5,
            OperatorFormula::L1,
            &g,
            &c,
            0.0,
            &[0.1, 0.07],
            1.0
        )
        .is_err());
    }
}
