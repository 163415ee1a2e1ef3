//! Couette-flow velocity profiles under single-parameter sweeps.

use std::path::Path;

use rayon::prelude::*;

use mtfrac::model::{example2_problem, OldroydBParams};
use mtfrac::solver::{march, GridSpec, Scheme, SolutionHistory};
use mtfrac::{Error, Result};

use crate::output::{ensure_dir, fmt_sci, write_csv, Manifest};

/// Base configuration of one Couette run.
#[derive(Clone, Copy, Debug)]
pub struct CouetteSetup {
    pub p_exp: f64,
    pub params: OldroydBParams,
    pub raw_times: bool,
    pub m: usize,
    pub n: usize,
    pub scheme: Scheme,
    pub t_snapshot: f64,
}

impl Default for CouetteSetup {
    fn default() -> Self {
        CouetteSetup {
            p_exp: 1.0,
            params: OldroydBParams {
                lambda_relax: 3.0,
                theta_retard: 4.0,
                alpha: 0.5,
                beta: 0.6,
                nu: 1.0,
                magnetic: 2.0,
            },
            raw_times: false,
            m: 1000,
            n: 200,
            scheme: Scheme::II,
            t_snapshot: 2.0,
        }
    }
}

/// Sweepable parameters; exactly one varies per sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    P,
    K,
    Lambda,
    Theta,
    Alpha,
    Beta,
    TSnapshot,
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "p" => Ok(SweepParam::P),
            "k" => Ok(SweepParam::K),
            "lambda" => Ok(SweepParam::Lambda),
            "theta" => Ok(SweepParam::Theta),
            "alpha" => Ok(SweepParam::Alpha),
            "beta" => Ok(SweepParam::Beta),
            "t_snapshot" | "t" => Ok(SweepParam::TSnapshot),
            other => Err(Error::Usage(format!(
                "unknown sweep parameter `{other}` \
                 (expected p, K, lambda, theta, alpha, beta or t_snapshot)"
            ))),
        }
    }
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SweepParam::P => "p",
            SweepParam::K => "K",
            SweepParam::Lambda => "lambda",
            SweepParam::Theta => "theta",
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::TSnapshot => "t_snapshot",
        };
        write!(f, "{name}")
    }
}

fn apply(setup: &CouetteSetup, param: SweepParam, value: f64) -> CouetteSetup {
    let mut s = *setup;
    match param {
        SweepParam::P => s.p_exp = value,
        SweepParam::K => s.params.magnetic = value,
        SweepParam::Lambda => s.params.lambda_relax = value,
        SweepParam::Theta => s.params.theta_retard = value,
        SweepParam::Alpha => s.params.alpha = value,
        SweepParam::Beta => s.params.beta = value,
        SweepParam::TSnapshot => s.t_snapshot = value,
    }
    s
}

fn march_setup(setup: &CouetteSetup) -> Result<SolutionHistory> {
    let problem = example2_problem(setup.p_exp, &setup.params, setup.raw_times)?;
    for w in problem.warnings() {
        eprintln!("warning: {w}");
    }
    let grid = GridSpec::for_problem(&problem, setup.m, setup.n)?;
    march(&problem, &grid, setup.scheme)
}

fn snapshot_level(setup: &CouetteSetup, t: f64) -> Result<usize> {
    let tau = 2.0 / setup.n as f64;
    let level = (t / tau).round() as usize;
    if level > setup.n || (level as f64 * tau - t).abs() > 1e-9 {
        return Err(Error::Usage(format!(
            "snapshot time {t} does not land on the time grid (τ = {tau})"
        )));
    }
    Ok(level)
}

fn profile_rows(sol: &SolutionHistory, level: usize) -> Vec<Vec<String>> {
    let grid = sol.grid();
    sol.level(level)
        .iter()
        .enumerate()
        .map(|(i, u)| vec![fmt_sci(grid.x(i)), fmt_sci(*u)])
        .collect()
}

fn value_tag(v: f64) -> String {
    // filesystem-friendly numeric tag: 0.5 -> "0p5"
    format!("{v}").replace('.', "p").replace('-', "m")
}

pub fn run(
    out_dir: &Path,
    setup: &CouetteSetup,
    sweep: Option<(SweepParam, Vec<f64>)>,
) -> Result<i32> {
    ensure_dir(out_dir)?;
    let mut manifest = Manifest::new(out_dir, "couette");
    manifest.parameter("p_exp", setup.p_exp);
    manifest.parameter("lambda", setup.params.lambda_relax);
    manifest.parameter("theta", setup.params.theta_retard);
    manifest.parameter("alpha", setup.params.alpha);
    manifest.parameter("beta", setup.params.beta);
    manifest.parameter("nu", setup.params.nu);
    manifest.parameter("K", setup.params.magnetic);
    manifest.parameter("raw_times", setup.raw_times);
    manifest.parameter("M", setup.m);
    manifest.parameter("N", setup.n);
    manifest.parameter("scheme", setup.scheme.to_string());

    match sweep {
        None => {
            let sol = march_setup(setup)?;
            let level = snapshot_level(setup, setup.t_snapshot)?;
            let filename = format!("couette_t_{}.csv", value_tag(setup.t_snapshot));
            write_csv(&out_dir.join(&filename), &["x", "u"], &profile_rows(&sol, level))?;
            manifest.file(&filename, serde_json::json!({"t": setup.t_snapshot}));
            println!("{filename}: velocity profile at t = {}", setup.t_snapshot);
        }
        Some((SweepParam::TSnapshot, values)) => {
            // one march, one profile per snapshot time
            let sol = march_setup(setup)?;
            for &t in &values {
                let level = snapshot_level(setup, t)?;
                let filename = format!("couette_t_{}.csv", value_tag(t));
                write_csv(&out_dir.join(&filename), &["x", "u"], &profile_rows(&sol, level))?;
                manifest.file(&filename, serde_json::json!({"t_snapshot": t}));
                println!("{filename}: velocity profile at t = {t}");
            }
            manifest.parameter("sweep", "t_snapshot");
        }
        Some((param, values)) => {
            let setups: Vec<(f64, CouetteSetup)> = values
                .iter()
                .map(|&v| (v, apply(setup, param, v)))
                .collect();
            let solutions: Vec<Result<SolutionHistory>> = setups
                .par_iter()
                .map(|(_, s)| march_setup(s))
                .collect();
            for ((value, s), sol) in setups.iter().zip(solutions) {
                let sol = sol?;
                let level = snapshot_level(s, s.t_snapshot)?;
                let filename = format!("couette_{param}_{}.csv", value_tag(*value));
                write_csv(&out_dir.join(&filename), &["x", "u"], &profile_rows(&sol, level))?;
                manifest.file(
                    &filename,
                    serde_json::json!({param.to_string(): value, "t": s.t_snapshot}),
                );
                println!("{filename}: velocity profile with {param} = {value}");
            }
            manifest.parameter("sweep", param.to_string());
        }
    }
    manifest.write()?;
    Ok(0)
}
