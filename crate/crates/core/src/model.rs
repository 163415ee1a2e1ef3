//! Problem definitions: the general multi-term model, the named physical
//! models that map into it, and the two built-in benchmark problems.
//!
//! The governing equation on (0,L)×(0,T] is
//!
//! ```text
//! Σ_j b_j D_t^{γ_j} u + a1 u_t + Σ_l c_l D_t^{α_l} u + a2 u
//!     = a3 u_xx + a4 D_t^β u_xx + f(x,t)
//! ```
//!
//! with Caputo derivatives, orders γ_j in (1,2), α_l and β in (0,1),
//! Dirichlet boundary data and initial value/slope data.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::special::gamma;

/// Spatial data function (initial value, initial slope).
pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Time data function (Dirichlet boundary values).
pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Space-time function (source term, exact solution).
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// One fractional term: a nonnegative coefficient and its Caputo order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FracTerm {
    pub coeff: f64,
    pub order: f64,
}

impl FracTerm {
    pub fn new(coeff: f64, order: f64) -> Self {
        FracTerm { coeff, order }
    }
}

/// Coefficients of the general model.
///
/// Sign conventions: `a1 > 0` and `a3 > 0` are required; `a2 >= 0` and
/// `a4 >= 0` are allowed so that the magnetic-free (K = 0) and
/// retardation-free (θ = 0) limits stay runnable. With `a2 = 0` the energy
/// norm degenerates to the seminorm `sqrt(a3) |v|_1`; the norm routine
/// flags that case.
#[derive(Clone, Debug)]
pub struct ModelCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub gamma_terms: Vec<FracTerm>,
    pub alpha_terms: Vec<FracTerm>,
    pub beta: f64,
}

fn check_term_list(
    name: &'static str,
    terms: &[FracTerm],
    lo: f64,
    hi: f64,
) -> Result<()> {
    let mut prev: Option<f64> = None;
    for t in terms {
        if !t.coeff.is_finite() || t.coeff < 0.0 {
            return Err(Error::Domain {
                param: name,
                message: format!("coefficient {} must be finite and >= 0", t.coeff),
            });
        }
        if !(t.order > lo && t.order < hi) {
            return Err(Error::Domain {
                param: name,
                message: format!("order {} is outside the open interval ({lo}, {hi})", t.order),
            });
        }
        if let Some(p) = prev {
            if t.order <= p {
                return Err(Error::Domain {
                    param: name,
                    message: format!("orders must be strictly increasing, got {p} then {}", t.order),
                });
            }
        }
        prev = Some(t.order);
    }
    Ok(())
}

impl ModelCoefficients {
    pub fn new(
        a1: f64,
        a2: f64,
        a3: f64,
        a4: f64,
        gamma_terms: Vec<FracTerm>,
        alpha_terms: Vec<FracTerm>,
        beta: f64,
    ) -> Result<Self> {
        for (name, v) in [("a1", a1), ("a2", a2), ("a3", a3), ("a4", a4)] {
            if !v.is_finite() {
                return Err(Error::Domain {
                    param: name,
                    message: format!("{v} is not finite"),
                });
            }
        }
        if a1 <= 0.0 {
            return Err(Error::Domain {
                param: "a1",
                message: format!("time-derivative coefficient must be positive, got {a1}"),
            });
        }
        if a3 <= 0.0 {
            return Err(Error::Domain {
                param: "a3",
                message: format!("diffusion coefficient must be positive, got {a3}"),
            });
        }
        if a2 < 0.0 || a4 < 0.0 {
            return Err(Error::Domain {
                param: "a2/a4",
                message: format!("reaction and coupled coefficients must be >= 0, got {a2}, {a4}"),
            });
        }
        check_term_list("gamma_terms", &gamma_terms, 1.0, 2.0)?;
        check_term_list("alpha_terms", &alpha_terms, 0.0, 1.0)?;
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::Domain {
                param: "beta",
                message: format!("{beta} is outside the open interval (0, 1)"),
            });
        }
        Ok(ModelCoefficients {
            a1,
            a2,
            a3,
            a4,
            gamma_terms,
            alpha_terms,
            beta,
        })
    }
}

/// Physical parameters of the magnetically damped generalized Oldroyd-B
/// Couette model.
#[derive(Clone, Copy, Debug)]
pub struct OldroydBParams {
    /// Relaxation time λ (enters as λ^α by default).
    pub lambda_relax: f64,
    /// Retardation time θ (enters as θ^β by default).
    pub theta_retard: f64,
    /// Relaxation fractional order α in (0,1).
    pub alpha: f64,
    /// Retardation fractional order β in (0,1).
    pub beta: f64,
    /// Kinematic viscosity ν > 0.
    pub nu: f64,
    /// Magnetic parameter K = σB₀²/ρ >= 0.
    pub magnetic: f64,
}

impl OldroydBParams {
    fn validate(&self) -> Result<()> {
        if !(self.lambda_relax >= 0.0 && self.lambda_relax.is_finite()) {
            return Err(Error::Domain {
                param: "lambda_relax",
                message: format!("relaxation time must be >= 0, got {}", self.lambda_relax),
            });
        }
        if !(self.theta_retard >= 0.0 && self.theta_retard.is_finite()) {
            return Err(Error::Domain {
                param: "theta_retard",
                message: format!("retardation time must be >= 0, got {}", self.theta_retard),
            });
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Domain {
                param: "alpha",
                message: format!("{} is outside the open interval (0, 1)", self.alpha),
            });
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::Domain {
                param: "beta",
                message: format!("{} is outside the open interval (0, 1)", self.beta),
            });
        }
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::Domain {
                param: "nu",
                message: format!("kinematic viscosity must be positive, got {}", self.nu),
            });
        }
        if !(self.magnetic >= 0.0 && self.magnetic.is_finite()) {
            return Err(Error::Domain {
                param: "magnetic",
                message: format!("magnetic parameter must be >= 0, got {}", self.magnetic),
            });
        }
        Ok(())
    }
}

/// Map the MHD Oldroyd-B velocity equation
///
/// `(1 + λ^α D_t^α) u_t = ν (1 + θ^β D_t^β) u_xx - K (1 + λ^α D_t^α) u`
///
/// onto the general coefficients by expanding
/// `(1 + λ^α D_t^α) u_t = u_t + λ^α D_t^{1+α} u`:
/// one γ-term `(λ^α, 1+α)`, one α-term `(K λ^α, α)`, `a1 = 1`, `a2 = K`,
/// `a3 = ν`, `a4 = ν θ^β`. Terms with zero coefficient are retained.
///
/// `raw_times = true` switches to the convention where λ and θ multiply the
/// fractional derivatives unexponentiated (coefficients λ, Kλ and νθ).
pub fn map_oldroyd_mhd(p: &OldroydBParams, raw_times: bool) -> Result<ModelCoefficients> {
    p.validate()?;
    let (lam, theta) = if raw_times {
        (p.lambda_relax, p.theta_retard)
    } else {
        (p.lambda_relax.powf(p.alpha), p.theta_retard.powf(p.beta))
    };
    ModelCoefficients::new(
        1.0,
        p.magnetic,
        p.nu,
        p.nu * theta,
        vec![FracTerm::new(lam, 1.0 + p.alpha)],
        vec![FracTerm::new(p.magnetic * lam, p.alpha)],
        p.beta,
    )
}

/// Problem data: coefficients plus domain extents and data functions.
///
/// Data are supplied as callables rather than samples so one spec serves
/// every grid in a convergence sweep. Corner compatibility
/// `φ₁(0) = g_left(0)`, `φ₁(L) = g_right(0)` is checked to 1e-12 at
/// construction; a mismatch is recorded as a warning, not an error, since
/// the discrete schemes remain well-defined.
#[derive(Clone)]
pub struct ProblemSpec {
    pub coeffs: ModelCoefficients,
    pub domain_length: f64,
    pub final_time: f64,
    pub initial_value: SpaceFn,
    pub initial_slope: SpaceFn,
    pub left_boundary: TimeFn,
    pub right_boundary: TimeFn,
    pub source: SpaceTimeFn,
    pub exact: Option<SpaceTimeFn>,
    warnings: Vec<String>,
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("coeffs", &self.coeffs)
            .field("domain_length", &self.domain_length)
            .field("final_time", &self.final_time)
            .field("has_exact", &self.exact.is_some())
            .field("warnings", &self.warnings)
            .finish()
    }
}

pub const CORNER_TOL: f64 = 1e-12;

#[allow(clippy::too_many_arguments)]
impl ProblemSpec {
    pub fn new(
        coeffs: ModelCoefficients,
        domain_length: f64,
        final_time: f64,
        initial_value: SpaceFn,
        initial_slope: SpaceFn,
        left_boundary: TimeFn,
        right_boundary: TimeFn,
        source: SpaceTimeFn,
    ) -> Result<Self> {
        if !(domain_length > 0.0 && domain_length.is_finite()) {
            return Err(Error::Domain {
                param: "domain_length",
                message: format!("must be positive, got {domain_length}"),
            });
        }
        if !(final_time > 0.0 && final_time.is_finite()) {
            return Err(Error::Domain {
                param: "final_time",
                message: format!("must be positive, got {final_time}"),
            });
        }
        let mut warnings = Vec::new();
        let left_gap = (initial_value(0.0) - left_boundary(0.0)).abs();
        if left_gap > CORNER_TOL {
            warnings.push(format!(
                "corner incompatibility at x=0: |phi1(0) - g_left(0)| = {left_gap:.3e}"
            ));
        }
        let right_gap = (initial_value(domain_length) - right_boundary(0.0)).abs();
        if right_gap > CORNER_TOL {
            warnings.push(format!(
                "corner incompatibility at x=L: |phi1(L) - g_right(0)| = {right_gap:.3e}"
            ));
        }
        Ok(ProblemSpec {
            coeffs,
            domain_length,
            final_time,
            initial_value,
            initial_slope,
            left_boundary,
            right_boundary,
            source,
            exact: None,
            warnings,
        })
    }

    pub fn with_exact(mut self, exact: SpaceTimeFn) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// True when both boundary functions vanish at every sampled time.
    pub fn has_homogeneous_boundaries(&self, times: impl IntoIterator<Item = f64>) -> bool {
        times
            .into_iter()
            .all(|t| (self.left_boundary)(t) == 0.0 && (self.right_boundary)(t) == 0.0)
    }
}

/// Manufactured benchmark: exact solution `u = (t³+1) sin πx` on the unit
/// space-time square, all model coefficients one, single γ/α terms.
pub fn example1_problem(alpha: f64, beta: f64, gamma_order: f64) -> Result<ProblemSpec> {
    let coeffs = ModelCoefficients::new(
        1.0,
        1.0,
        1.0,
        1.0,
        vec![FracTerm::new(1.0, gamma_order)],
        vec![FracTerm::new(1.0, alpha)],
        beta,
    )?;
    let g4 = gamma(4.0); // = 6
    let cg = g4 / gamma(4.0 - gamma_order);
    let ca = g4 / gamma(4.0 - alpha);
    let cb = PI * PI * g4 / gamma(4.0 - beta);
    let source: SpaceTimeFn = Arc::new(move |x: f64, t: f64| {
        (PI * x).sin()
            * (cg * t.powf(3.0 - gamma_order)
                + 3.0 * t * t
                + ca * t.powf(3.0 - alpha)
                + (1.0 + PI * PI) * (t * t * t + 1.0)
                + cb * t.powf(3.0 - beta))
    });
    let problem = ProblemSpec::new(
        coeffs,
        1.0,
        1.0,
        Arc::new(|x: f64| (PI * x).sin()),
        Arc::new(|_| 0.0),
        Arc::new(|_| 0.0),
        Arc::new(|_| 0.0),
        source,
    )?;
    Ok(problem.with_exact(Arc::new(|x: f64, t: f64| (t * t * t + 1.0) * (PI * x).sin())))
}

/// Couette benchmark: quiescent start, upper plate sliding with velocity
/// `2 t^p`, no source, no exact solution. `p = 0` jumps the plate to speed 2
/// instantly; the resulting corner incompatibility is recorded as a warning
/// on the returned spec.
pub fn example2_problem(p_exp: f64, params: &OldroydBParams, raw_times: bool) -> Result<ProblemSpec> {
    if !(p_exp >= 0.0 && p_exp.is_finite()) {
        return Err(Error::Domain {
            param: "p_exp",
            message: format!("boundary power must be >= 0, got {p_exp}"),
        });
    }
    let coeffs = map_oldroyd_mhd(params, raw_times)?;
    ProblemSpec::new(
        coeffs,
        1.0,
        2.0,
        Arc::new(|_| 0.0),
        Arc::new(|_| 0.0),
        Arc::new(|_| 0.0),
        Arc::new(move |t: f64| 2.0 * t.powf(p_exp)),
        Arc::new(|_, _| 0.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_validation() {
        assert!(ModelCoefficients::new(1.0, 0.0, 1.0, 0.0, vec![], vec![], 0.5).is_ok());
        assert!(ModelCoefficients::new(0.0, 0.0, 1.0, 0.0, vec![], vec![], 0.5).is_err());
        assert!(ModelCoefficients::new(1.0, 0.0, 0.0, 0.0, vec![], vec![], 0.5).is_err());
        assert!(ModelCoefficients::new(1.0, -0.1, 1.0, 0.0, vec![], vec![], 0.5).is_err());
        // order outside (1,2)
        assert!(ModelCoefficients::new(
            1.0,
            0.0,
            1.0,
            0.0,
            vec![FracTerm::new(1.0, 2.0)],
            vec![],
            0.5
        )
        .is_err());
        // non-increasing orders
        assert!(ModelCoefficients::new(
            1.0,
            0.0,
            1.0,
            0.0,
            vec![FracTerm::new(1.0, 1.5), FracTerm::new(1.0, 1.5)],
            vec![],
            0.5
        )
        .is_err());
    }

    #[test]
    fn oldroyd_mapping_matches_expansion() {
        let p = OldroydBParams {
            lambda_relax: 3.0,
            theta_retard: 4.0,
            alpha: 0.5,
            beta: 0.6,
            nu: 1.0,
            magnetic: 2.0,
        };
        let c = map_oldroyd_mhd(&p, false).unwrap();
        assert_eq!(c.a1, 1.0);
        assert_eq!(c.a2, 2.0);
        assert_eq!(c.a3, 1.0);
        assert!((c.a4 - 4f64.powf(0.6)).abs() < 1e-15);
        assert_eq!(c.gamma_terms.len(), 1);
        assert!((c.gamma_terms[0].coeff - 3f64.powf(0.5)).abs() < 1e-15);
        assert_eq!(c.gamma_terms[0].order, 1.5);
        assert_eq!(c.alpha_terms.len(), 1);
        assert!((c.alpha_terms[0].coeff - 2.0 * 3f64.powf(0.5)).abs() < 1e-15);
        assert_eq!(c.alpha_terms[0].order, 0.5);
        assert_eq!(c.beta, 0.6);
    }

    #[test]
    fn oldroyd_mapping_degenerate_limits() {
        // λ = 0, K = 0, θ = 0: heat-equation-like coefficients, zero-weight
        // fractional terms retained
        let p = OldroydBParams {
            lambda_relax: 0.0,
            theta_retard: 0.0,
            alpha: 0.5,
            beta: 0.6,
            nu: 1.0,
            magnetic: 0.0,
        };
        let c = map_oldroyd_mhd(&p, false).unwrap();
        assert_eq!((c.a1, c.a2, c.a3, c.a4), (1.0, 0.0, 1.0, 0.0));
        assert_eq!(c.gamma_terms[0].coeff, 0.0);
        assert_eq!(c.alpha_terms[0].coeff, 0.0);

        // λ = θ = 1, K = 0 recovers the magnetic-free model
        let p = OldroydBParams {
            lambda_relax: 1.0,
            theta_retard: 1.0,
            alpha: 0.3,
            beta: 0.7,
            nu: 1.0,
            magnetic: 0.0,
        };
        let c = map_oldroyd_mhd(&p, false).unwrap();
        assert_eq!(c.gamma_terms[0].coeff, 1.0);
        assert_eq!(c.alpha_terms[0].coeff, 0.0);
        assert_eq!(c.a2, 0.0);
        assert_eq!(c.a4, 1.0);
    }

    #[test]
    fn oldroyd_mapping_raw_times_convention() {
        let p = OldroydBParams {
            lambda_relax: 3.0,
            theta_retard: 4.0,
            alpha: 0.5,
            beta: 0.6,
            nu: 2.0,
            magnetic: 1.5,
        };
        let c = map_oldroyd_mhd(&p, true).unwrap();
        assert_eq!(c.gamma_terms[0].coeff, 3.0);
        assert_eq!(c.alpha_terms[0].coeff, 1.5 * 3.0);
        assert_eq!(c.a4, 2.0 * 4.0);
    }

    #[test]
    fn example1_data_consistency() {
        let p = example1_problem(0.7, 0.6, 1.5).unwrap();
        assert!(p.warnings().is_empty());
        // f(x, 0) = (1 + π²) sin πx
        let x = 0.3;
        let got = (p.source)(x, 0.0);
        let expect = (1.0 + PI * PI) * (PI * x).sin();
        assert!((got - expect).abs() < 1e-12, "{got} vs {expect}");
        // exact matches the initial value at t = 0
        let exact = p.exact.as_ref().unwrap();
        assert!((exact(x, 0.0) - (p.initial_value)(x)).abs() < 1e-15);
        assert!((exact(0.5, 1.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn example1_source_balances_analytic_derivatives() {
        // With D^q t³ = 6 t^{3-q}/Γ(4-q) (constants annihilated), the exact
        // solution satisfies the equation pointwise.
        let (alpha, beta, gamma_order) = (0.5, 0.3, 1.6);
        let p = example1_problem(alpha, beta, gamma_order).unwrap();
        for &(x, t) in &[(0.25f64, 0.2f64), (0.5, 1.0), (0.8, 0.7), (0.123, 0.456)] {
            let sin = (PI * x).sin();
            let dt_gamma = 6.0 * t.powf(3.0 - gamma_order) / gamma(4.0 - gamma_order) * sin;
            let u_t = 3.0 * t * t * sin;
            let dt_alpha = 6.0 * t.powf(3.0 - alpha) / gamma(4.0 - alpha) * sin;
            let u = (t * t * t + 1.0) * sin;
            let u_xx = -PI * PI * u;
            let dt_beta_uxx = -PI * PI * 6.0 * t.powf(3.0 - beta) / gamma(4.0 - beta) * sin;
            let residual = dt_gamma + u_t + dt_alpha + u - u_xx - dt_beta_uxx - (p.source)(x, t);
            assert!(residual.abs() < 1e-10, "residual {residual} at ({x},{t})");
        }
    }

    #[test]
    fn example2_boundary_family() {
        let params = OldroydBParams {
            lambda_relax: 3.0,
            theta_retard: 4.0,
            alpha: 0.5,
            beta: 0.6,
            nu: 1.0,
            magnetic: 2.0,
        };
        let p = example2_problem(1.0, &params, false).unwrap();
        assert!(p.warnings().is_empty());
        assert_eq!((p.right_boundary)(0.0), 0.0);
        assert_eq!((p.right_boundary)(2.0), 4.0);
        assert!(p.exact.is_none());

        // p = 0: plate speed jumps to 2; construction succeeds with a warning
        let p0 = example2_problem(0.0, &params, false).unwrap();
        assert_eq!((p0.right_boundary)(1.0), 2.0);
        assert_eq!(p0.warnings().len(), 1);
        assert!(p0.warnings()[0].contains("corner incompatibility"));
    }

    #[test]
    fn construction_is_deterministic() {
        let a = example1_problem(0.7, 0.6, 1.5).unwrap();
        let b = example1_problem(0.7, 0.6, 1.5).unwrap();
        for &(x, t) in &[(0.1, 0.9), (0.7, 0.2)] {
            assert_eq!((a.source)(x, t).to_bits(), (b.source)(x, t).to_bits());
        }
    }
}
