//! Time-marching solvers for the general model.
//!
//! Two schemes share one structure: at each time level a constant-coefficient
//! symmetric tridiagonal system is solved for the interior unknowns, with a
//! right-hand side collecting the fractional history sums, the previous
//! level, the source and the boundary lifting.
//!
//! Scheme I discretises the equation at `t_n` and is first-order in time;
//! Scheme II discretises at `t_{n-1/2}` (averaging the level-(0,1) operators
//! and the zeroth/second-order spatial terms across the two newest levels)
//! and converges at `min{3-γ_s, 2-α_q, 2-β}`.

use crate::error::{Error, Result};
use crate::fracops::{
    beta_weights, gamma_weights, mu_beta, mu_gamma, IncrementHistory, WeightSeqBeta,
    WeightSeqGamma,
};
use crate::model::{ModelCoefficients, ProblemSpec};

/// Scheme selector: `I` = implicit at `t_n`, `II` = mixed scheme at `t_{n-1/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    I,
    II,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scheme::I => write!(f, "I"),
            Scheme::II => write!(f, "II"),
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "i" | "1" => Ok(Scheme::I),
            "II" | "ii" | "2" => Ok(Scheme::II),
            other => Err(Error::Usage(format!(
                "unknown scheme `{other}` (expected I or II)"
            ))),
        }
    }
}

/// Uniform space-time grid: M spatial intervals of width h = L/M and N time
/// steps of length τ = T/N. Interior unknown count is M-1.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    m: usize,
    n: usize,
    h: f64,
    tau: f64,
}

impl GridSpec {
    pub fn new(length: f64, final_time: f64, m: usize, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain {
                param: "m",
                message: format!("need at least 2 spatial intervals, got {m}"),
            });
        }
        if n < 1 {
            return Err(Error::Domain {
                param: "n",
                message: "need at least 1 time step".into(),
            });
        }
        let extents_valid =
            length.is_finite() && length > 0.0 && final_time.is_finite() && final_time > 0.0;
        if !extents_valid {
            return Err(Error::Domain {
                param: "length/final_time",
                message: format!("domain extents must be positive, got {length}, {final_time}"),
            });
        }
        let h = length / m as f64;
        let tau = final_time / n as f64;
        // by construction these hold to one ulp; guard against misuse anyway
        if (h * m as f64 - length).abs() > 1e-12 * length
            || (tau * n as f64 - final_time).abs() > 1e-12 * final_time
        {
            return Err(Error::Domain {
                param: "grid",
                message: "h*M and tau*N must reproduce the domain extents".into(),
            });
        }
        Ok(GridSpec { m, n, h, tau })
    }

    pub fn for_problem(problem: &ProblemSpec, m: usize, n: usize) -> Result<Self> {
        GridSpec::new(problem.domain_length, problem.final_time, m, n)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn interior_count(&self) -> usize {
        self.m - 1
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.tau
    }
}

/// Constant-coefficient symmetric tridiagonal matrix: `diag` on the main
/// diagonal and `-off` on both adjacent diagonals. Strict diagonal dominance
/// (`diag > 2 off`) is required; both schemes produce it for every valid
/// coefficient set since their `d1 >= a1/τ > 0`.
#[derive(Clone, Copy, Debug)]
pub struct Tridiagonal {
    pub diag: f64,
    pub off: f64,
    pub size: usize,
}

impl Tridiagonal {
    pub fn new(diag: f64, off: f64, size: usize) -> Result<Self> {
        if !diag.is_finite() || diag <= 0.0 || off < 0.0 {
            return Err(Error::Solver(format!(
                "invalid tridiagonal coefficients diag={diag}, off={off}"
            )));
        }
        if diag - 2.0 * off <= 0.0 {
            return Err(Error::Solver(format!(
                "diagonal dominance violated: diag={diag} <= 2*off={}",
                2.0 * off
            )));
        }
        Ok(Tridiagonal { diag, off, size })
    }

    /// Dominance margin `diag - 2 off` (equals the scheme's `d1`).
    pub fn dominance_margin(&self) -> f64 {
        self.diag - 2.0 * self.off
    }
}

/// Scale factors and per-term weight sequences for one (coefficients, grid)
/// pair, computed once and reused by every time step.
#[derive(Clone, Debug)]
pub struct SchemeWeights {
    /// (b_j, μ_{1,j}, a^{(γ_j)} weights) per γ-term.
    pub gamma: Vec<(f64, f64, WeightSeqGamma)>,
    /// (c_l, μ_{2,l}, d^{(α_l)} weights) per α-term.
    pub alpha: Vec<(f64, f64, WeightSeqBeta)>,
    /// μ₃ and the d^{(β)} weights of the coupled operator.
    pub mu3: f64,
    pub beta: WeightSeqBeta,
}

impl SchemeWeights {
    pub fn prepare(coeffs: &ModelCoefficients, grid: &GridSpec) -> Result<Self> {
        let tau = grid.tau();
        let count = grid.n().max(1);
        let gamma = coeffs
            .gamma_terms
            .iter()
            .map(|t| Ok((t.coeff, mu_gamma(t.order, tau), gamma_weights(t.order, count)?)))
            .collect::<Result<Vec<_>>>()?;
        let alpha = coeffs
            .alpha_terms
            .iter()
            .map(|t| Ok((t.coeff, mu_beta(t.order, tau), beta_weights(t.order, count)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SchemeWeights {
            gamma,
            alpha,
            mu3: mu_beta(coeffs.beta, tau),
            beta: beta_weights(coeffs.beta, count)?,
        })
    }
}

/// Matrix of Scheme I: `d1 = Σ b_j μ_{1,j}/τ + a1/τ + Σ c_l μ_{2,l}/τ + a2`,
/// `d2 = a3/h² + a4 μ₃/(τ h²)`; diagonal `d1 + 2 d2`, off-diagonal `d2`.
pub fn assemble_scheme1(coeffs: &ModelCoefficients, grid: &GridSpec) -> Tridiagonal {
    let tau = grid.tau();
    let h2 = grid.h() * grid.h();
    let mut d1 = coeffs.a1 / tau + coeffs.a2;
    for t in &coeffs.gamma_terms {
        d1 += t.coeff * mu_gamma(t.order, tau) / tau;
    }
    for t in &coeffs.alpha_terms {
        d1 += t.coeff * mu_beta(t.order, tau) / tau;
    }
    let d2 = coeffs.a3 / h2 + coeffs.a4 * mu_beta(coeffs.beta, tau) / (tau * h2);
    Tridiagonal::new(d1 + 2.0 * d2, d2, grid.interior_count())
        .expect("d1 >= a1/tau > 0 guarantees dominance")
}

/// Matrix of Scheme II: `d1' = Σ b_j μ_{1,j}/τ + a1/τ + Σ c_l μ_{2,l}/(2τ) + a2/2`,
/// `d2' = a3/(2h²) + a4 μ₃/(2τ h²)`.
pub fn assemble_scheme2(coeffs: &ModelCoefficients, grid: &GridSpec) -> Tridiagonal {
    let tau = grid.tau();
    let h2 = grid.h() * grid.h();
    let mut d1 = coeffs.a1 / tau + coeffs.a2 / 2.0;
    for t in &coeffs.gamma_terms {
        d1 += t.coeff * mu_gamma(t.order, tau) / tau;
    }
    for t in &coeffs.alpha_terms {
        d1 += t.coeff * mu_beta(t.order, tau) / (2.0 * tau);
    }
    let d2 = coeffs.a3 / (2.0 * h2) + coeffs.a4 * mu_beta(coeffs.beta, tau) / (2.0 * tau * h2);
    Tridiagonal::new(d1 + 2.0 * d2, d2, grid.interior_count())
        .expect("d1 >= a1/tau > 0 guarantees dominance")
}

pub fn assemble(coeffs: &ModelCoefficients, grid: &GridSpec, scheme: Scheme) -> Tridiagonal {
    match scheme {
        Scheme::I => assemble_scheme1(coeffs, grid),
        Scheme::II => assemble_scheme2(coeffs, grid),
    }
}

const THOMAS_RESIDUAL_TOL: f64 = 1e-10;

/// Direct solve of the constant symmetric tridiagonal system `B x = rhs`.
///
/// No pivoting: strict diagonal dominance makes the plain sweep stable. A
/// residual check (`‖Bx - rhs‖∞ <= 1e-10 (‖rhs‖∞ + 1)`) guards against
/// misuse with matrices that only barely satisfy the invariant.
pub fn thomas_solve(tri: &Tridiagonal, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != tri.size {
        return Err(Error::Shape(format!(
            "rhs length {} does not match system size {}",
            rhs.len(),
            tri.size
        )));
    }
    if tri.dominance_margin() <= 0.0 {
        return Err(Error::Solver(
            "refusing tridiagonal solve without strict diagonal dominance".into(),
        ));
    }
    let n = rhs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (diag, off) = (tri.diag, tri.off);
    // forward sweep with sub/super diagonal both equal to -off
    let mut w = vec![0.0; n];
    let mut g = vec![0.0; n];
    w[0] = -off / diag;
    g[0] = rhs[0] / diag;
    for i in 1..n {
        let denom = diag + off * w[i - 1];
        w[i] = -off / denom;
        g[i] = (rhs[i] + off * g[i - 1]) / denom;
    }
    let mut x = g;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= w[i] * next;
    }
    // residual assertion
    let mut resid: f64 = 0.0;
    let mut rhs_inf: f64 = 0.0;
    for i in 0..n {
        let mut bx = diag * x[i];
        if i > 0 {
            bx -= off * x[i - 1];
        }
        if i + 1 < n {
            bx -= off * x[i + 1];
        }
        resid = resid.max((bx - rhs[i]).abs());
        rhs_inf = rhs_inf.max(rhs[i].abs());
    }
    if resid > THOMAS_RESIDUAL_TOL * (rhs_inf + 1.0) {
        return Err(Error::Solver(format!(
            "tridiagonal residual {resid:.3e} exceeds tolerance"
        )));
    }
    Ok(x)
}

/// Full space-time solution: levels 0..N, each of length M+1 with boundary
/// entries included.
#[derive(Clone, Debug)]
pub struct SolutionHistory {
    levels: Vec<Vec<f64>>,
    grid: GridSpec,
    scheme: Scheme,
}

impl SolutionHistory {
    pub fn level(&self, n: usize) -> &[f64] {
        &self.levels[n]
    }

    pub fn final_level(&self) -> &[f64] {
        self.levels.last().expect("history holds level 0")
    }

    pub fn levels(&self) -> &[Vec<f64>] {
        &self.levels
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
}

/// Second difference `(v_{i-1} - 2 v_i + v_{i+1})/h²` on interior points of a
/// full-length vector; boundary slots of the output are zero.
fn second_difference(v: &[f64], h: f64) -> Vec<f64> {
    let m = v.len() - 1;
    let h2 = h * h;
    let mut out = vec![0.0; v.len()];
    for i in 1..m {
        out[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) / h2;
    }
    out
}

fn check_rhs_inputs(
    n: usize,
    levels: &[Vec<f64>],
    increments: &IncrementHistory,
    grid: &GridSpec,
) -> Result<()> {
    if n == 0 || n > grid.n() {
        return Err(Error::Usage(format!(
            "time index {n} outside 1..={}",
            grid.n()
        )));
    }
    if levels.len() != n {
        return Err(Error::Shape(format!(
            "expected levels 0..{} ({} vectors), got {}",
            n - 1,
            n,
            levels.len()
        )));
    }
    if increments.len() != n - 1 {
        return Err(Error::Shape(format!(
            "expected {} increments, got {}",
            n - 1,
            increments.len()
        )));
    }
    for lvl in levels {
        if lvl.len() != grid.m() + 1 {
            return Err(Error::Shape(format!(
                "level length {} does not match grid ({} points)",
                lvl.len(),
                grid.m() + 1
            )));
        }
    }
    Ok(())
}

/// Right-hand side of Scheme I at time level n: every term of the scheme not
/// multiplying unknown interior values of level n.
///
/// Collected here: the `U^{n-1}/τ` parts of all time differences, the γ-term
/// history and `a_{n-1} φ₂` tails, the known parts of the α- and β-sums
/// (the β parts as second differences of stored full levels, so Dirichlet
/// data enters the history implicitly), the source at `t_n`, and the
/// boundary lifting `off · g(t_n)` on the first and last interior rows.
pub fn rhs_scheme1(
    n: usize,
    levels: &[Vec<f64>],
    increments: &IncrementHistory,
    problem: &ProblemSpec,
    grid: &GridSpec,
    weights: &SchemeWeights,
) -> Result<Vec<f64>> {
    check_rhs_inputs(n, levels, increments, grid)?;
    let coeffs = &problem.coeffs;
    let m = grid.m();
    let tau = grid.tau();
    let t_n = grid.t(n);
    let prev = &levels[n - 1];
    let points = m + 1;

    // History sums, one accumulation pass per sum of the scheme equation
    // (per γ-term, per α-term, and the coupled β sum). `plain` holds the
    // non-δ² parts at interior points; `coupled` is accumulated over the
    // full width so boundary increments feed the δ² stencil afterwards.
    let mut plain = vec![0.0; points];
    let mut coupled = vec![0.0; points];
    for (b, mu1, aw) in &weights.gamma {
        let c = b * mu1;
        let a = aw.weights();
        for k in 1..n {
            let w = c * (a[n - k - 1] - a[n - k]);
            let inc = increments.level(k);
            for i in 1..m {
                plain[i] += w * inc[i];
            }
        }
    }
    for (cl, mu2, dw) in &weights.alpha {
        let c = cl * mu2;
        let d = dw.weights();
        for k in 1..n {
            let w = -c * d[n - k];
            let inc = increments.level(k);
            for i in 1..m {
                plain[i] += w * inc[i];
            }
        }
    }
    {
        let d = weights.beta.weights();
        for k in 1..n {
            let w = d[n - k];
            let inc = increments.level(k);
            for i in 0..points {
                coupled[i] += w * inc[i];
            }
        }
    }

    // coefficient of U^{n-1}/τ from all ∇_t terms
    let mut nabla_coeff = coeffs.a1;
    for (b, mu1, _) in &weights.gamma {
        nabla_coeff += b * mu1;
    }
    for (c, mu2, _) in &weights.alpha {
        nabla_coeff += c * mu2;
    }

    // γ tails: Σ_j b_j μ_{1,j} a^{(γ_j)}_{n-1} φ₂(x_i)
    let mut slope_coeff = 0.0;
    for (b, mu1, aw) in &weights.gamma {
        slope_coeff += b * mu1 * aw.weights()[n - 1];
    }

    let a4mu3 = coeffs.a4 * weights.mu3;
    let d2_prev = second_difference(prev, grid.h());
    let d2_coupled = second_difference(&coupled, grid.h());

    let mut rhs = vec![0.0; grid.interior_count()];
    for i in 1..m {
        let x = grid.x(i);
        rhs[i - 1] = nabla_coeff * prev[i] / tau
            + plain[i]
            + slope_coeff * (problem.initial_slope)(x)
            + a4mu3 * (d2_coupled[i] - d2_prev[i] / tau)
            + (problem.source)(x, t_n);
    }
    let off = assemble_scheme1(coeffs, grid).off;
    rhs[0] += off * (problem.left_boundary)(t_n);
    rhs[m - 2] += off * (problem.right_boundary)(t_n);
    Ok(rhs)
}

/// Right-hand side of Scheme II at time level n.
///
/// Relative to Scheme I: the α- and β-sums are the two-level averaged forms
/// (both sums' known parts appear), the reaction and diffusion terms
/// contribute their explicit halves `-(a2/2) U^{n-1}` and `+(a3/2) δ² U^{n-1}`,
/// and the source enters as the two-level average `(f^n + f^{n-1})/2`.
pub fn rhs_scheme2(
    n: usize,
    levels: &[Vec<f64>],
    increments: &IncrementHistory,
    problem: &ProblemSpec,
    grid: &GridSpec,
    weights: &SchemeWeights,
) -> Result<Vec<f64>> {
    check_rhs_inputs(n, levels, increments, grid)?;
    let coeffs = &problem.coeffs;
    let m = grid.m();
    let tau = grid.tau();
    let t_n = grid.t(n);
    let prev = &levels[n - 1];
    let points = m + 1;

    // One pass per sum: scheme II carries a second (n-1)-deep sum for every
    // α-term and for the coupled operator, which is exactly its extra cost
    // relative to scheme I.
    let mut plain = vec![0.0; points];
    let mut coupled = vec![0.0; points];
    for (b, mu1, aw) in &weights.gamma {
        let c = b * mu1;
        let a = aw.weights();
        for k in 1..n {
            let w = c * (a[n - k - 1] - a[n - k]);
            let inc = increments.level(k);
            for i in 1..m {
                plain[i] += w * inc[i];
            }
        }
    }
    for (cl, mu2, dw) in &weights.alpha {
        let c = cl * mu2 / 2.0;
        let d = dw.weights();
        for k in 1..n {
            let w = -c * d[n - k];
            let inc = increments.level(k);
            for i in 1..m {
                plain[i] += w * inc[i];
            }
        }
        for k in 1..n {
            let w = -c * d[n - 1 - k];
            let inc = increments.level(k);
            for i in 1..m {
                plain[i] += w * inc[i];
            }
        }
    }
    {
        let d = weights.beta.weights();
        for k in 1..n {
            let w = 0.5 * d[n - k];
            let inc = increments.level(k);
            for i in 0..points {
                coupled[i] += w * inc[i];
            }
        }
        for k in 1..n {
            let w = 0.5 * d[n - 1 - k];
            let inc = increments.level(k);
            for i in 0..points {
                coupled[i] += w * inc[i];
            }
        }
    }

    let mut nabla_coeff = coeffs.a1;
    for (b, mu1, _) in &weights.gamma {
        nabla_coeff += b * mu1;
    }
    for (c, mu2, _) in &weights.alpha {
        nabla_coeff += c * mu2 / 2.0;
    }

    let mut slope_coeff = 0.0;
    for (b, mu1, aw) in &weights.gamma {
        slope_coeff += b * mu1 * aw.weights()[n - 1];
    }

    let a4mu3 = coeffs.a4 * weights.mu3;
    let d2_prev = second_difference(prev, grid.h());
    let d2_coupled = second_difference(&coupled, grid.h());

    let mut rhs = vec![0.0; grid.interior_count()];
    for i in 1..m {
        let x = grid.x(i);
        let f_half = 0.5 * ((problem.source)(x, t_n) + (problem.source)(x, t_n - tau));
        rhs[i - 1] = nabla_coeff * prev[i] / tau
            + plain[i]
            + slope_coeff * (problem.initial_slope)(x)
            - coeffs.a2 / 2.0 * prev[i]
            + coeffs.a3 / 2.0 * d2_prev[i]
            + a4mu3 * (d2_coupled[i] - d2_prev[i] / (2.0 * tau))
            + f_half;
    }
    let off = assemble_scheme2(coeffs, grid).off;
    rhs[0] += off * (problem.left_boundary)(t_n);
    rhs[m - 2] += off * (problem.right_boundary)(t_n);
    Ok(rhs)
}

/// March the selected scheme over the full grid.
///
/// Level 0 samples φ₁ everywhere (boundary points included); each later
/// level solves the tridiagonal system and writes its boundary entries from
/// the Dirichlet data. Increments `(U^n - U^{n-1})/τ` are stored as full
/// vectors and shared by all fractional sums. Deterministic: identical
/// inputs produce bit-identical output.
pub fn march(problem: &ProblemSpec, grid: &GridSpec, scheme: Scheme) -> Result<SolutionHistory> {
    let m = grid.m();
    let tau = grid.tau();
    let tri = assemble(&problem.coeffs, grid, scheme);
    let weights = SchemeWeights::prepare(&problem.coeffs, grid)?;

    let level0: Vec<f64> = (0..=m).map(|i| (problem.initial_value)(grid.x(i))).collect();
    let mut levels = Vec::with_capacity(grid.n() + 1);
    levels.push(level0);
    let mut increments = IncrementHistory::new(tau)?;

    for n in 1..=grid.n() {
        let rhs = match scheme {
            Scheme::I => rhs_scheme1(n, &levels, &increments, problem, grid, &weights)?,
            Scheme::II => rhs_scheme2(n, &levels, &increments, problem, grid, &weights)?,
        };
        let interior = thomas_solve(&tri, &rhs)?;
        let t_n = grid.t(n);
        let mut level = Vec::with_capacity(m + 1);
        level.push((problem.left_boundary)(t_n));
        level.extend_from_slice(&interior);
        level.push((problem.right_boundary)(t_n));
        if level.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { level: n });
        }
        let prev = &levels[n - 1];
        let inc: Vec<f64> = level.iter().zip(prev).map(|(a, b)| (a - b) / tau).collect();
        increments.push(inc)?;
        levels.push(level);
    }
    Ok(SolutionHistory {
        levels,
        grid: *grid,
        scheme,
    })
}

/// Hard cap on `(M-1)·N` for the dense space-time oracle.
pub const DENSE_ORACLE_LIMIT: usize = 2000;

/// Independent validation path: assemble the scheme equations over *all*
/// interior unknowns at *all* time levels as one dense linear system,
/// directly from the per-level equations (no marching, no increment reuse,
/// no tridiagonal solver), and solve it by Gaussian elimination with partial
/// pivoting.
#[allow(clippy::needless_range_loop)] // grid-index style throughout
pub fn dense_oracle_solve(
    problem: &ProblemSpec,
    grid: &GridSpec,
    scheme: Scheme,
) -> Result<SolutionHistory> {
    let m = grid.m();
    let n_steps = grid.n();
    let interior = grid.interior_count();
    let unknowns = interior * n_steps;
    if unknowns > DENSE_ORACLE_LIMIT {
        return Err(Error::SizeGuard {
            actual: unknowns,
            limit: DENSE_ORACLE_LIMIT,
        });
    }
    let coeffs = &problem.coeffs;
    let h2 = grid.h() * grid.h();
    let weights = SchemeWeights::prepare(coeffs, grid)?;

    let phi1: Vec<f64> = (0..=m).map(|i| (problem.initial_value)(grid.x(i))).collect();
    let phi2: Vec<f64> = (0..=m).map(|i| (problem.initial_slope)(grid.x(i))).collect();

    // Known values: level 0 everywhere, boundary columns at later levels.
    let mut known = vec![vec![None; m + 1]; n_steps + 1];
    for (i, v) in phi1.iter().enumerate() {
        known[0][i] = Some(*v);
    }
    for (k, row) in known.iter_mut().enumerate().skip(1) {
        row[0] = Some((problem.left_boundary)(grid.t(k)));
        row[m] = Some((problem.right_boundary)(grid.t(k)));
    }

    let mut asm = DenseAssembler {
        a: vec![0.0; unknowns * unknowns],
        b: vec![0.0; unknowns],
        unknowns,
        interior,
        tau: grid.tau(),
        known,
    };

    for n in 1..=n_steps {
        for i in 1..m {
            let row = asm.idx(i, n);

            // γ-terms (identical in both schemes)
            for (bj, mu1, aw) in &weights.gamma {
                let aj = aw.weights();
                let c = bj * mu1;
                asm.add_nabla(row, i, n, c * aj[0]);
                for k in 1..n {
                    asm.add_nabla(row, i, k, -c * (aj[n - k - 1] - aj[n - k]));
                }
                asm.b[row] += c * aj[n - 1] * phi2[i];
            }
            // a1 u_t
            asm.add_nabla(row, i, n, coeffs.a1);

            match scheme {
                Scheme::I => {
                    for (cl, mu2, dw) in &weights.alpha {
                        let d = dw.weights();
                        for k in 1..=n {
                            asm.add_nabla(row, i, k, cl * mu2 * d[n - k]);
                        }
                    }
                    // a2 U^n
                    asm.add(row, i, n, coeffs.a2);
                    // -a3 δ² U^n
                    for (ii, s) in [(i - 1, 1.0), (i, -2.0), (i + 1, 1.0)] {
                        asm.add(row, ii, n, -coeffs.a3 * s / h2);
                    }
                    // -a4 μ₃ Σ d_{n-k} ∇_t δ² U^k
                    let db = weights.beta.weights();
                    for k in 1..=n {
                        let c = -coeffs.a4 * weights.mu3 * db[n - k];
                        for (ii, s) in [(i - 1, 1.0), (i, -2.0), (i + 1, 1.0)] {
                            asm.add_nabla(row, ii, k, c * s / h2);
                        }
                    }
                    asm.b[row] += (problem.source)(grid.x(i), grid.t(n));
                }
                Scheme::II => {
                    for (cl, mu2, dw) in &weights.alpha {
                        let d = dw.weights();
                        for k in 1..=n {
                            asm.add_nabla(row, i, k, cl * mu2 / 2.0 * d[n - k]);
                        }
                        for k in 1..n {
                            asm.add_nabla(row, i, k, cl * mu2 / 2.0 * d[n - 1 - k]);
                        }
                    }
                    // a2 (U^n + U^{n-1})/2
                    asm.add(row, i, n, coeffs.a2 / 2.0);
                    asm.add(row, i, n - 1, coeffs.a2 / 2.0);
                    // -a3 δ² (U^n + U^{n-1})/2
                    for (ii, s) in [(i - 1, 1.0), (i, -2.0), (i + 1, 1.0)] {
                        asm.add(row, ii, n, -coeffs.a3 / 2.0 * s / h2);
                        asm.add(row, ii, n - 1, -coeffs.a3 / 2.0 * s / h2);
                    }
                    let db = weights.beta.weights();
                    for k in 1..=n {
                        let mut w = db[n - k];
                        if k < n {
                            w += db[n - 1 - k];
                        }
                        let c = -coeffs.a4 * weights.mu3 / 2.0 * w;
                        for (ii, s) in [(i - 1, 1.0), (i, -2.0), (i + 1, 1.0)] {
                            asm.add_nabla(row, ii, k, c * s / h2);
                        }
                    }
                    let x = grid.x(i);
                    asm.b[row] += 0.5
                        * ((problem.source)(x, grid.t(n)) + (problem.source)(x, grid.t(n - 1)));
                }
            }
        }
    }

    let DenseAssembler { mut a, mut b, .. } = asm;
    let solution = gaussian_solve(&mut a, &mut b, unknowns)?;

    let mut levels = Vec::with_capacity(n_steps + 1);
    levels.push(phi1);
    for k in 1..=n_steps {
        let t_k = grid.t(k);
        let mut lvl = Vec::with_capacity(m + 1);
        lvl.push((problem.left_boundary)(t_k));
        for i in 1..m {
            lvl.push(solution[(k - 1) * interior + (i - 1)]);
        }
        lvl.push((problem.right_boundary)(t_k));
        levels.push(lvl);
    }
    Ok(SolutionHistory {
        levels,
        grid: *grid,
        scheme,
    })
}

/// Row-major dense system under assembly. `known` maps (level, point) to a
/// Dirichlet/initial value when that grid entry is not an unknown; such
/// contributions move straight to the right-hand side.
struct DenseAssembler {
    a: Vec<f64>,
    b: Vec<f64>,
    unknowns: usize,
    interior: usize,
    tau: f64,
    known: Vec<Vec<Option<f64>>>,
}

impl DenseAssembler {
    fn idx(&self, i: usize, k: usize) -> usize {
        (k - 1) * self.interior + (i - 1)
    }

    /// Add coefficient c on U_i^k to the given row.
    fn add(&mut self, row: usize, i: usize, k: usize, c: f64) {
        match self.known[k][i] {
            Some(v) => self.b[row] -= c * v,
            None => {
                let j = self.idx(i, k);
                self.a[row * self.unknowns + j] += c;
            }
        }
    }

    /// Add coefficient c on the time difference ∇_t U_i^k = (U^k - U^{k-1})/τ.
    fn add_nabla(&mut self, row: usize, i: usize, k: usize, c: f64) {
        self.add(row, i, k, c / self.tau);
        self.add(row, i, k - 1, -c / self.tau);
    }
}

/// In-place Gaussian elimination with partial pivoting on a row-major
/// square matrix.
fn gaussian_solve(a: &mut [f64], b: &mut [f64], n: usize) -> Result<Vec<f64>> {
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = row;
            }
        }
        if pivot_val == 0.0 || !pivot_val.is_finite() {
            return Err(Error::Solver(format!(
                "dense oracle system singular at column {col}"
            )));
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                a[row * n + j] -= factor * a[col * n + j];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for j in row + 1..n {
            acc -= a[row * n + j] * x[j];
        }
        x[row] = acc / a[row * n + row];
    }
    Ok(x)
}
