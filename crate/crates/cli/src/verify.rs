//! The consolidated verification suite: ten checks covering table
//! reproduction, rate bounds, oracle equivalence, stability audits, weight
//! and Toeplitz properties, operator rates, Couette trends and timing
//! scaling. `verify` drives it from the command line; the acceptance test
//! target drives it from `cargo test`.

use rayon::prelude::*;

use mtfrac::analysis::{
    error_at_final, operator_convergence_check, stability_audit, toeplitz_study, OperatorFormula,
};
use mtfrac::fracops::check_weight_properties;
use mtfrac::model::{example1_problem, example2_problem, OldroydBParams};
use mtfrac::rng::Lcg64;
use mtfrac::solver::{dense_oracle_solve, march, GridSpec, Scheme};
use mtfrac::special::gamma;
use mtfrac::Result;

use crate::commands::bench::{bench_rows, BenchRow};
use crate::expected::{table1, table2, ExpectedBlock};
use crate::sampler::random_problem;

/// Outcome of one verification check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
}

impl CheckResult {
    fn new(id: usize, name: &'static str, pass: bool, details: String) -> Self {
        CheckResult {
            id,
            name,
            pass,
            details,
        }
    }
}

/// Tolerances of the suite, fixed here and nowhere else.
pub mod tolerances {
    /// Relative tolerance on reproduced table errors.
    pub const TABLE_ERROR_REL: f64 = 0.005;
    /// Absolute tolerance on reproduced convergence orders.
    pub const TABLE_ORDER_ABS: f64 = 0.03;
    /// Scheme I observed order lower bound.
    pub const SCHEME1_ORDER_MIN: f64 = 0.97;
    /// Slack under the predicted Scheme II order.
    pub const SCHEME2_ORDER_SLACK: f64 = 0.05;
    /// March vs dense oracle max-norm agreement.
    pub const ORACLE_AGREEMENT: f64 = 1e-10;
    /// Telescoping residual bound for the weight suite.
    pub const TELESCOPING: f64 = 1e-12;
    /// Closed-form determinant agreement for sizes 1 and 2.
    pub const DET_CLOSED_FORM: f64 = 1e-12;
    /// Relative variation of the determinant-ratio plateau on [250, 300].
    pub const PLATEAU_REL_VAR: f64 = 0.01;
    /// Absolute tolerance on observed operator rates.
    pub const OPERATOR_RATE_ABS: f64 = 0.1;
    /// Strict-monotonicity margin for the Couette trends.
    pub const TREND_MARGIN: f64 = 1e-8;
    /// Wall-time growth factor band when τ halves (N >= 160).
    pub const TIME_RATIO_LO: f64 = 2.5;
    pub const TIME_RATIO_HI: f64 = 6.0;
}

/// The three (α, β, γ) parameter blocks shared by both tables.
pub const BLOCKS: [(f64, f64, f64); 3] = [(0.7, 0.6, 1.5), (0.7, 0.8, 1.6), (0.5, 0.3, 1.6)];

/// Table grids: h = 1/1000, τ = 1/40 .. 1/640.
pub const TABLE_M: usize = 1000;
pub const TABLE_TAU_DENOMS: [u32; 5] = [40, 80, 160, 320, 640];

/// One computed table row: errors, orders and its stability audit.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub tau_denom: u32,
    pub l2: f64,
    pub linf: f64,
    pub order_l2: Option<f64>,
    pub order_linf: Option<f64>,
    pub audit_pass: bool,
    pub audit_lhs: f64,
    pub audit_rhs: f64,
}

/// One computed (scheme, block) table.
#[derive(Clone, Debug)]
pub struct TableBlock {
    pub scheme: Scheme,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub rows: Vec<TableRow>,
}

/// Run every (scheme, block, τ) march of the two tables, measuring errors
/// and auditing the energy bound on each run. Marches execute in parallel;
/// row order is fixed by construction.
pub fn run_table_experiments() -> Result<Vec<TableBlock>> {
    let mut jobs = Vec::new();
    for scheme in [Scheme::I, Scheme::II] {
        for &(alpha, beta, gamma_order) in &BLOCKS {
            for &denom in &TABLE_TAU_DENOMS {
                jobs.push((scheme, alpha, beta, gamma_order, denom));
            }
        }
    }
    let results: Vec<(f64, f64, bool, f64, f64)> = jobs
        .par_iter()
        .map(|&(scheme, alpha, beta, gamma_order, denom)| -> Result<_> {
            let problem = example1_problem(alpha, beta, gamma_order)?;
            let grid = GridSpec::for_problem(&problem, TABLE_M, denom as usize)?;
            let sol = march(&problem, &grid, scheme)?;
            let err = error_at_final(&sol, &problem)?;
            let audit = stability_audit(&sol, &problem)?;
            Ok((err.l2, err.linf, audit.pass, audit.lhs, audit.rhs))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut blocks = Vec::new();
    let mut it = results.into_iter();
    for scheme in [Scheme::I, Scheme::II] {
        for &(alpha, beta, gamma_order) in &BLOCKS {
            let mut rows: Vec<TableRow> = Vec::with_capacity(TABLE_TAU_DENOMS.len());
            for &denom in &TABLE_TAU_DENOMS {
                let (l2, linf, audit_pass, audit_lhs, audit_rhs) =
                    it.next().expect("job count matches");
                let (order_l2, order_linf) = match rows.last() {
                    None => (None, None),
                    Some(prev) => (
                        Some((prev.l2 / l2).log2()),
                        Some((prev.linf / linf).log2()),
                    ),
                };
                rows.push(TableRow {
                    tau_denom: denom,
                    l2,
                    linf,
                    order_l2,
                    order_linf,
                    audit_pass,
                    audit_lhs,
                    audit_rhs,
                });
            }
            blocks.push(TableBlock {
                scheme,
                alpha,
                beta,
                gamma: gamma_order,
                rows,
            });
        }
    }
    Ok(blocks)
}

fn compare_against_expected(
    id: usize,
    name: &'static str,
    computed: &[TableBlock],
    expected: &[ExpectedBlock],
    scheme: Scheme,
) -> CheckResult {
    let mut worst_rel = 0.0f64;
    let mut worst_order = 0.0f64;
    let mut failures = Vec::new();
    for exp in expected {
        let Some(block) = computed.iter().find(|b| {
            b.scheme == scheme && b.alpha == exp.alpha && b.beta == exp.beta && b.gamma == exp.gamma
        }) else {
            failures.push(format!(
                "missing block ({}, {}, {})",
                exp.alpha, exp.beta, exp.gamma
            ));
            continue;
        };
        for (er, cr) in exp.rows.iter().zip(&block.rows) {
            let rel_l2 = (cr.l2 - er.l2).abs() / er.l2;
            let rel_linf = (cr.linf - er.linf).abs() / er.linf;
            worst_rel = worst_rel.max(rel_l2).max(rel_linf);
            if rel_l2 > tolerances::TABLE_ERROR_REL || rel_linf > tolerances::TABLE_ERROR_REL {
                failures.push(format!(
                    "block ({},{},{}) τ=1/{}: errors off by {:.2e}/{:.2e}",
                    exp.alpha, exp.beta, exp.gamma, er.tau_denom, rel_l2, rel_linf
                ));
            }
            for (want, got) in [(er.order_l2, cr.order_l2), (er.order_linf, cr.order_linf)] {
                if let (Some(want), Some(got)) = (want, got) {
                    let dev = (want - got).abs();
                    worst_order = worst_order.max(dev);
                    if dev > tolerances::TABLE_ORDER_ABS {
                        failures.push(format!(
                            "block ({},{},{}) τ=1/{}: order {got:.3} vs {want}",
                            exp.alpha, exp.beta, exp.gamma, er.tau_denom
                        ));
                    }
                }
            }
        }
    }
    let pass = failures.is_empty();
    let details = if pass {
        format!(
            "worst error deviation {worst_rel:.2e} (tol {:.1e}), worst order deviation \
             {worst_order:.3} (tol {})",
            tolerances::TABLE_ERROR_REL,
            tolerances::TABLE_ORDER_ABS
        )
    } else {
        failures.join("; ")
    };
    CheckResult::new(id, name, pass, details)
}

fn check_rate_bounds(id: usize, computed: &[TableBlock]) -> CheckResult {
    let mut failures = Vec::new();
    let mut min_s1 = f64::INFINITY;
    let mut min_s2_margin = f64::INFINITY;
    for block in computed {
        let predicted =
            (3.0 - block.gamma).min(2.0 - block.alpha).min(2.0 - block.beta);
        for row in &block.rows {
            for order in [row.order_l2, row.order_linf].into_iter().flatten() {
                match block.scheme {
                    Scheme::I => {
                        min_s1 = min_s1.min(order);
                        if order < tolerances::SCHEME1_ORDER_MIN {
                            failures.push(format!(
                                "Scheme I block ({},{},{}): order {order:.3} < {}",
                                block.alpha,
                                block.beta,
                                block.gamma,
                                tolerances::SCHEME1_ORDER_MIN
                            ));
                        }
                    }
                    Scheme::II => {
                        let bound = predicted - tolerances::SCHEME2_ORDER_SLACK;
                        min_s2_margin = min_s2_margin.min(order - bound);
                        if order < bound {
                            failures.push(format!(
                                "Scheme II block ({},{},{}): order {order:.3} < {bound:.3}",
                                block.alpha, block.beta, block.gamma
                            ));
                        }
                    }
                }
            }
        }
    }
    let pass = failures.is_empty();
    let details = if pass {
        format!(
            "min Scheme I order {min_s1:.3} (bound {}), min Scheme II margin over \
             predicted-minus-slack {min_s2_margin:.3}",
            tolerances::SCHEME1_ORDER_MIN
        )
    } else {
        failures.join("; ")
    };
    CheckResult::new(id, "temporal-rate-bounds", pass, details)
}

fn check_stability_audits(id: usize, computed: &[TableBlock]) -> CheckResult {
    let mut worst_margin = f64::INFINITY;
    let mut failures = Vec::new();
    for block in computed {
        for row in &block.rows {
            worst_margin = worst_margin.min(row.audit_rhs - row.audit_lhs);
            if !row.audit_pass {
                failures.push(format!(
                    "scheme {} block ({},{},{}) τ=1/{}: lhs {:.6e} > rhs {:.6e}",
                    block.scheme,
                    block.alpha,
                    block.beta,
                    block.gamma,
                    row.tau_denom,
                    row.audit_lhs,
                    row.audit_rhs
                ));
            }
        }
    }
    let pass = failures.is_empty();
    let details = if pass {
        format!("all 30 runs bounded; smallest rhs-lhs margin {worst_margin:.3e}")
    } else {
        failures.join("; ")
    };
    CheckResult::new(id, "stability-audits", pass, details)
}

/// March vs dense oracle on seeded random small instances, both schemes,
/// at least one nonhomogeneous boundary.
pub fn check_oracle_equivalence(id: usize, seed: u64, instances: usize) -> CheckResult {
    let mut rng = Lcg64::new(seed);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut nonhomogeneous_seen = 0usize;
    for instance in 0..instances {
        let nonhomogeneous = instance % 3 == 2;
        if nonhomogeneous {
            nonhomogeneous_seen += 1;
        }
        let problem = random_problem(&mut rng, nonhomogeneous);
        let m = rng.next_usize(4, 8);
        let n = rng.next_usize(2, 5);
        let grid = match GridSpec::for_problem(&problem, m, n) {
            Ok(g) => g,
            Err(e) => {
                failures.push(format!("instance {instance}: {e}"));
                continue;
            }
        };
        for scheme in [Scheme::I, Scheme::II] {
            let result = march(&problem, &grid, scheme).and_then(|a| {
                dense_oracle_solve(&problem, &grid, scheme).map(|b| {
                    let mut dev = 0.0f64;
                    for (la, lb) in a.levels().iter().zip(b.levels()) {
                        for (x, y) in la.iter().zip(lb) {
                            dev = dev.max((x - y).abs());
                        }
                    }
                    dev
                })
            });
            match result {
                Ok(dev) => {
                    worst = worst.max(dev);
                    if dev > tolerances::ORACLE_AGREEMENT {
                        failures.push(format!(
                            "instance {instance} (M={m}, N={n}, scheme {scheme}): {dev:.3e}"
                        ));
                    }
                }
                Err(e) => failures.push(format!("instance {instance} scheme {scheme}: {e}")),
            }
        }
    }
    if nonhomogeneous_seen == 0 {
        failures.push("no nonhomogeneous instance sampled".into());
    }
    let pass = failures.is_empty();
    let details = if pass {
        format!(
            "{instances} instances x 2 schemes ({nonhomogeneous_seen} nonhomogeneous), \
             worst deviation {worst:.3e} (tol {:.0e})",
            tolerances::ORACLE_AGREEMENT
        )
    } else {
        failures.join("; ")
    };
    CheckResult::new(id, "oracle-equivalence", pass, details)
}

fn check_weight_suite(id: usize) -> CheckResult {
    let mut worst_residual = 0.0f64;
    let mut worst_convexity = f64::INFINITY;
    let mut failures = Vec::new();
    for i in 1..=19 {
        let beta = i as f64 / 20.0;
        match check_weight_properties(beta, 10_000) {
            Ok(rep) => {
                worst_residual = worst_residual.max(rep.telescoping_residual);
                worst_convexity = worst_convexity.min(rep.min_convexity);
                if !rep.all_hold() || rep.telescoping_residual >= tolerances::TELESCOPING {
                    failures.push(format!("β={beta:.2}: {rep:?}"));
                }
            }
            Err(e) => failures.push(format!("β={beta:.2}: {e}")),
        }
    }
    let pass = failures.is_empty();
    let details = if pass {
        format!(
            "19 orders at depth 10^4; worst telescoping residual {worst_residual:.2e}, \
             smallest convexity slack {worst_convexity:.2e}"
        )
    } else {
        failures.join("; ")
    };
    CheckResult::new(id, "weight-property-suite", pass, details)
}

fn check_toeplitz_suite(id: usize, seed: u64) -> CheckResult {
    let sizes: Vec<usize> = (1..=300).collect();
    let betas: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let mut failures = Vec::new();
    let mut worst_var = 0.0f64;
    let reports: Vec<_> = betas
        .par_iter()
        .map(|&beta| toeplitz_study(beta, &sizes, seed))
        .collect();
    for (beta, report) in betas.iter().zip(reports) {
        let report = match report {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("β={beta}: {e}"));
                continue;
            }
        };
        if !report.positive_definite.iter().all(|&b| b) {
            failures.push(format!("β={beta}: factorization found a nonpositive pivot"));
        }
        // closed forms at sizes 1 and 2
        let det1 = report.log_dets[0].exp();
        if (det1 - 1.0).abs() > tolerances::DET_CLOSED_FORM {
            failures.push(format!("β={beta}: det(H_1) = {det1}, expected 1"));
        }
        let d1 = 2f64.powf(1.0 - beta) - 1.0;
        let det2_expect = 1.0 - (1.0 + d1) * (1.0 + d1) / 4.0;
        let det2 = report.log_dets[1].exp();
        if (det2 - det2_expect).abs() > tolerances::DET_CLOSED_FORM {
            failures.push(format!("β={beta}: det(H_2) = {det2}, expected {det2_expect}"));
        }
        // plateau of the ratio sequence on [250, 300]
        let window: Vec<f64> = report
            .sizes
            .iter()
            .zip(&report.det_ratios)
            .filter(|(s, _)| **s >= 250 && **s <= 300)
            .map(|(_, r)| *r)
            .collect();
        if window.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            failures.push(format!("β={beta}: nonpositive ratio in the plateau window"));
        } else {
            let max = window.iter().cloned().fold(f64::MIN, f64::max);
            let min = window.iter().cloned().fold(f64::MAX, f64::min);
            let mean = window.iter().sum::<f64>() / window.len() as f64;
            let var = (max - min) / mean;
            worst_var = worst_var.max(var);
            if var >= tolerances::PLATEAU_REL_VAR {
                failures.push(format!(
                    "β={beta}: plateau variation {var:.4} exceeds {}",
                    tolerances::PLATEAU_REL_VAR
                ));
            }
        }
        if report.min_quadform < -1e-10 {
            failures.push(format!(
                "β={beta}: sampled quadratic form dipped to {:.3e}",
                report.min_quadform
            ));
        }
    }
    let pass = failures.is_empty();
    let details = if pass {
        format!(
            "9 orders, sizes 1..300 all positive definite; closed forms match to \
             {:.0e}; worst plateau variation {worst_var:.4}",
            tolerances::DET_CLOSED_FORM
        )
    } else {
        failures.join("; ")
    };
    CheckResult::new(id, "toeplitz-positivity-suite", pass, details)
}

fn check_operator_rates(id: usize) -> CheckResult {
    let taus: Vec<f64> = [40.0, 80.0, 160.0, 320.0, 640.0]
        .iter()
        .map(|d| 1.0 / d)
        .collect();
    let cubic = |t: f64| t * t * t;
    let mut failures = Vec::new();
    let mut detail_parts = Vec::new();
    let cases: [(f64, OperatorFormula, f64, &str); 3] = [
        (1.5, OperatorFormula::L2AtN, 1.0, "level reading"),
        (1.5, OperatorFormula::L2AtHalf, 1.5, "half-level reading"),
        (0.6, OperatorFormula::L1, 1.4, "first-order-branch sum"),
    ];
    for (order, formula, expected, label) in cases {
        let caputo = move |t: f64| 6.0 / gamma(4.0 - order) * t.powf(3.0 - order);
        match operator_convergence_check(order, formula, &cubic, &caputo, 0.0, &taus, 1.0) {
            Ok(report) => {
                let rate = report.final_rate();
                detail_parts.push(format!("{label}: {rate:.3} (expect {expected})"));
                if (rate - expected).abs() > tolerances::OPERATOR_RATE_ABS {
                    failures.push(format!(
                        "{label}: observed {rate:.3}, expected {expected} ± {}",
                        tolerances::OPERATOR_RATE_ABS
                    ));
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    let pass = failures.is_empty();
    let details = if pass {
        detail_parts.join("; ")
    } else {
        failures.join("; ")
    };
    CheckResult::new(id, "operator-rate-checks", pass, details)
}

/// Couette grid used by the trend checks: h = 1/1000, τ = 1/100, T = 2.
pub const COUETTE_M: usize = 1000;
pub const COUETTE_N: usize = 200;

fn couette_base() -> OldroydBParams {
    OldroydBParams {
        lambda_relax: 3.0,
        theta_retard: 4.0,
        alpha: 0.5,
        beta: 0.6,
        nu: 1.0,
        magnetic: 2.0,
    }
}

fn couette_midpoint(p_exp: f64, params: &OldroydBParams, level: usize) -> Result<f64> {
    let problem = example2_problem(p_exp, params, false)?;
    let grid = GridSpec::for_problem(&problem, COUETTE_M, COUETTE_N)?;
    let sol = march(&problem, &grid, Scheme::II)?;
    Ok(sol.level(level)[COUETTE_M / 2])
}

fn assert_trend(
    label: &str,
    values: &[(f64, f64)],
    increasing: bool,
    failures: &mut Vec<String>,
    margins: &mut Vec<f64>,
) {
    for pair in values.windows(2) {
        let (x0, u0) = pair[0];
        let (x1, u1) = pair[1];
        let margin = if increasing { u1 - u0 } else { u0 - u1 };
        margins.push(margin);
        if margin <= tolerances::TREND_MARGIN {
            failures.push(format!(
                "{label}: u({x0}) = {u0:.6e} vs u({x1}) = {u1:.6e} violates the \
                 {} trend (margin {margin:.3e})",
                if increasing { "increasing" } else { "decreasing" }
            ));
        }
    }
}

fn check_couette_trends(id: usize) -> CheckResult {
    let base = couette_base();
    let run = |p_exp: f64, params: OldroydBParams| couette_midpoint(p_exp, &params, COUETTE_N);

    // all parameter sweeps march independently; collect in parallel
    let k_values = [0.0, 2.0, 5.0];
    let p_values = [0.5, 1.0, 2.0];
    let lambda_values = [1.0, 3.0, 5.0];
    let theta_values = [1.0, 4.0, 8.0];

    let jobs: Vec<Box<dyn Fn() -> Result<f64> + Send + Sync>> = {
        let mut jobs: Vec<Box<dyn Fn() -> Result<f64> + Send + Sync>> = Vec::new();
        for &k in &k_values {
            jobs.push(Box::new(move || {
                run(1.0, OldroydBParams { magnetic: k, ..couette_base() })
            }));
        }
        for &p in &p_values {
            jobs.push(Box::new(move || run(p, couette_base())));
        }
        for &l in &lambda_values {
            jobs.push(Box::new(move || {
                run(1.0, OldroydBParams { lambda_relax: l, ..couette_base() })
            }));
        }
        for &th in &theta_values {
            jobs.push(Box::new(move || {
                run(1.0, OldroydBParams { theta_retard: th, ..couette_base() })
            }));
        }
        jobs
    };
    let outputs: Vec<Result<f64>> = jobs.par_iter().map(|job| job()).collect();
    let mut failures = Vec::new();
    let mut values = Vec::with_capacity(outputs.len());
    for out in outputs {
        match out {
            Ok(v) => values.push(v),
            Err(e) => {
                failures.push(format!("march failed: {e}"));
                values.push(f64::NAN);
            }
        }
    }
    let (k_out, rest) = values.split_at(k_values.len());
    let (p_out, rest) = rest.split_at(p_values.len());
    let (l_out, th_out) = rest.split_at(lambda_values.len());

    let mut margins = Vec::new();
    let pair = |xs: &[f64], us: &[f64]| -> Vec<(f64, f64)> {
        xs.iter().cloned().zip(us.iter().cloned()).collect()
    };
    assert_trend("K sweep", &pair(&k_values, k_out), false, &mut failures, &mut margins);
    assert_trend("p sweep", &pair(&p_values, p_out), true, &mut failures, &mut margins);
    assert_trend("λ sweep", &pair(&lambda_values, l_out), false, &mut failures, &mut margins);
    assert_trend("θ sweep", &pair(&theta_values, th_out), true, &mut failures, &mut margins);

    // time trend from one base march
    match example2_problem(1.0, &base, false)
        .and_then(|problem| {
            let grid = GridSpec::for_problem(&problem, COUETTE_M, COUETTE_N)?;
            march(&problem, &grid, Scheme::II)
        }) {
        Ok(sol) => {
            let snapshots: Vec<(f64, f64)> = [50usize, 100, 150, 200]
                .iter()
                .map(|&lvl| (lvl as f64 / 100.0, sol.level(lvl)[COUETTE_M / 2]))
                .collect();
            assert_trend("t snapshots", &snapshots, true, &mut failures, &mut margins);
        }
        Err(e) => failures.push(format!("base march failed: {e}")),
    }

    let pass = failures.is_empty();
    let min_margin = margins.iter().cloned().fold(f64::INFINITY, f64::min);
    let details = if pass {
        format!(
            "K decreasing, p/θ/t increasing, λ decreasing at x = 0.5, t = 2; \
             smallest margin {min_margin:.3e} (needs > {:.0e})",
            tolerances::TREND_MARGIN
        )
    } else {
        failures.join("; ")
    };
    CheckResult::new(id, "couette-trends", pass, details)
}

fn evaluate_timing(rows: &[BenchRow]) -> (Vec<String>, Vec<String>) {
    let mut failures = Vec::new();
    let find = |scheme: Scheme, denom: u32| -> Option<&BenchRow> {
        rows.iter()
            .find(|r| r.scheme == scheme && (1.0 / r.tau).round() as u32 == denom)
    };
    for &denom in &TABLE_TAU_DENOMS {
        let (Some(r1), Some(r2)) = (find(Scheme::I, denom), find(Scheme::II, denom)) else {
            failures.push(format!("missing bench rows at τ=1/{denom}"));
            continue;
        };
        if r2.seconds < r1.seconds {
            failures.push(format!(
                "τ=1/{denom}: Scheme II ({:.4}s) ran faster than Scheme I ({:.4}s)",
                r2.seconds, r1.seconds
            ));
        }
    }
    let mut ratios = Vec::new();
    for scheme in [Scheme::I, Scheme::II] {
        for pair in [(160u32, 320u32), (320, 640)] {
            let (Some(coarse), Some(fine)) = (find(scheme, pair.0), find(scheme, pair.1)) else {
                continue;
            };
            let ratio = fine.seconds / coarse.seconds;
            ratios.push(format!("scheme {scheme} 1/{}→1/{}: {ratio:.2}", pair.0, pair.1));
            if !(tolerances::TIME_RATIO_LO..=tolerances::TIME_RATIO_HI).contains(&ratio) {
                failures.push(format!(
                    "scheme {scheme}: halving τ=1/{} multiplied wall time by {ratio:.2}, \
                     outside [{}, {}]",
                    pair.0,
                    tolerances::TIME_RATIO_LO,
                    tolerances::TIME_RATIO_HI
                ));
            }
        }
    }
    (ratios, failures)
}

fn check_timing(id: usize) -> CheckResult {
    // Wall-clock measurements on shared machines can absorb a scheduler
    // hiccup; one clean re-measurement is allowed before declaring failure.
    // The asserted band itself never changes.
    let taus: Vec<f64> = TABLE_TAU_DENOMS.iter().map(|&d| 1.0 / d as f64).collect();
    let mut last_failures = Vec::new();
    for attempt in 1..=2 {
        let rows = match bench_rows(TABLE_M, &taus, 3) {
            Ok(r) => r,
            Err(e) => return CheckResult::new(id, "timing-properties", false, e.to_string()),
        };
        let (ratios, failures) = evaluate_timing(&rows);
        if failures.is_empty() {
            let details = format!(
                "Scheme II >= Scheme I at every τ; growth ratios {}{}",
                ratios.join(", "),
                if attempt > 1 { " (on re-measurement)" } else { "" }
            );
            return CheckResult::new(id, "timing-properties", true, details);
        }
        last_failures = failures;
    }
    CheckResult::new(id, "timing-properties", false, last_failures.join("; "))
}

/// Verification options; the seed feeds every sampled check.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 1 }
    }
}

/// Run the full ten-check suite in order.
pub fn run_all(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let tables = run_table_experiments()?;
    let mut results = vec![
        compare_against_expected(1, "scheme1-table-reproduction", &tables, &table1(), Scheme::I),
        compare_against_expected(2, "scheme2-table-reproduction", &tables, &table2(), Scheme::II),
        check_rate_bounds(3, &tables),
        check_oracle_equivalence(4, opts.seed, 6),
        check_stability_audits(5, &tables),
        check_weight_suite(6),
        check_toeplitz_suite(7, opts.seed),
        check_operator_rates(8),
        check_couette_trends(9),
        check_timing(10),
    ];
    results.sort_by_key(|r| r.id);
    Ok(results)
}

/// Pretty one-line rendering used by both the command and the test target.
pub fn render_line(result: &CheckResult) -> String {
    format!(
        "[{:>2}/10] {:<28} {}  {}",
        result.id,
        result.name,
        if result.pass { "PASS" } else { "FAIL" },
        result.details
    )
}
