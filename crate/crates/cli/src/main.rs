//! Command-line front end: experiment dispatch with flag/config merging.
//!
//! Exit codes: 0 = pass, 1 = check failure, 2 = usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mtfrac::solver::Scheme;
use mtfrac::{Error, Result};
use mtfrac_cli::commands;
use mtfrac_cli::commands::couette::{CouetteSetup, SweepParam};
use mtfrac_cli::config::{oldroyd_params_from, parse_number_list, parse_size_list, Config};
use mtfrac_cli::with_workers;

#[derive(Parser)]
#[command(
    name = "mtfrac",
    version,
    about = "Finite-difference experiments for multi-term time-fractional viscoelastic flow"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Flat key-value configuration file with [section] headers
    #[arg(long, global = false)]
    config: Option<PathBuf>,
    /// Output directory for CSV files and the manifest
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent runs (0 = library default)
    #[arg(long)]
    workers: Option<usize>,
    /// Seed for sampled property checks
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the temporal-convergence tables of both schemes
    Converge {
        #[command(flatten)]
        common: CommonArgs,
        /// Scheme selection: I, II or both
        #[arg(long, default_value = "both")]
        scheme: String,
        /// Spatial intervals M (h = 1/M)
        #[arg(long = "M")]
        m: Option<usize>,
        /// Comma-separated halving τ list (fractions allowed, e.g. 1/40,1/80)
        #[arg(long = "tau-list")]
        tau_list: Option<String>,
        /// Parameter blocks as alpha,beta,gamma triples separated by `;`
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Couette-flow velocity profiles with single-parameter sweeps
    Couette {
        #[command(flatten)]
        common: CommonArgs,
        /// Sweep spec `param=v1,v2,...` over p, K, lambda, theta, alpha,
        /// beta or t_snapshot
        #[arg(long)]
        sweep: Option<String>,
        /// Boundary power p in the plate velocity 2 t^p
        #[arg(long = "p-exp")]
        p_exp: Option<f64>,
        /// Relaxation time λ
        #[arg(long)]
        lambda: Option<f64>,
        /// Retardation time θ
        #[arg(long)]
        theta: Option<f64>,
        /// Relaxation order α
        #[arg(long)]
        alpha: Option<f64>,
        /// Retardation order β
        #[arg(long)]
        beta: Option<f64>,
        /// Magnetic parameter K
        #[arg(long = "K")]
        magnetic: Option<f64>,
        /// Kinematic viscosity ν
        #[arg(long)]
        nu: Option<f64>,
        /// Spatial intervals M
        #[arg(long = "M")]
        m: Option<usize>,
        /// Time steps N over the interval [0, 2]
        #[arg(long = "N")]
        n: Option<usize>,
        /// Snapshot time of the emitted profile
        #[arg(long = "t-snapshot")]
        t_snapshot: Option<f64>,
        /// Scheme: I or II
        #[arg(long)]
        scheme: Option<String>,
        /// Use λ and θ unexponentiated instead of λ^α, θ^β
        #[arg(long = "raw-times")]
        raw_times: bool,
    },
    /// Toeplitz positive-definiteness study of the averaged quadratic form
    Lemma5 {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated β list
        #[arg(long = "beta-list")]
        beta_list: Option<String>,
        /// Matrix sizes: inclusive range `1..300` or a comma list
        #[arg(long)]
        sizes: Option<String>,
    },
    /// Run the consolidated verification suite
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Wall-time scaling of both schemes across a τ ladder
    Bench {
        #[command(flatten)]
        common: CommonArgs,
        /// Spatial intervals M
        #[arg(long = "M")]
        m: Option<usize>,
        /// Comma-separated τ list
        #[arg(long = "tau-list")]
        tau_list: Option<String>,
        /// Repeats for short runs (minimum is reported)
        #[arg(long)]
        repeats: Option<usize>,
        /// Exit nonzero when a timing property fails
        #[arg(long)]
        check: bool,
    },
    /// March vs dense space-time oracle on random small instances
    OracleCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of random instances
        #[arg(long)]
        instances: Option<usize>,
    },
}

fn load_config(common: &CommonArgs) -> Result<Config> {
    match &common.config {
        Some(path) => Config::load(path),
        None => Ok(Config::default()),
    }
}

fn parse_schemes(raw: &str) -> Result<Vec<Scheme>> {
    match raw.trim().to_lowercase().as_str() {
        "both" => Ok(vec![Scheme::I, Scheme::II]),
        other => Ok(vec![other.parse()?]),
    }
}

fn parse_blocks(raw: &str) -> Result<Vec<(f64, f64, f64)>> {
    raw.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|triple| {
            let parts = parse_number_list(triple)?;
            if parts.len() != 3 {
                return Err(Error::Usage(format!(
                    "block `{triple}` must be alpha,beta,gamma"
                )));
            }
            Ok((parts[0], parts[1], parts[2]))
        })
        .collect()
}

fn out_dir(common: &CommonArgs, config: &Config, section: &str, default: &str) -> PathBuf {
    common
        .out
        .clone()
        .or_else(|| config.get(section, "out").map(PathBuf::from))
        .unwrap_or_else(|| Path::new("out").join(default))
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Converge {
            common,
            scheme,
            m,
            tau_list,
            blocks,
        } => {
            let config = load_config(&common)?;
            let schemes = parse_schemes(
                &common
                    .config
                    .as_ref()
                    .and_then(|_| config.get("converge", "scheme").map(str::to_string))
                    .filter(|_| scheme == "both")
                    .unwrap_or(scheme),
            )?;
            let m = match m {
                Some(v) => v,
                None => config.get_usize("converge", "m")?.unwrap_or(1000),
            };
            let taus = match tau_list
                .or_else(|| config.get("converge", "tau_list").map(str::to_string))
            {
                Some(raw) => parse_number_list(&raw)?,
                None => commands::converge::DEFAULT_TAU_DENOMS
                    .iter()
                    .map(|d| 1.0 / *d as f64)
                    .collect(),
            };
            let blocks = match blocks
                .or_else(|| config.get("converge", "blocks").map(str::to_string))
            {
                Some(raw) => parse_blocks(&raw)?,
                None => commands::converge::DEFAULT_BLOCKS.to_vec(),
            };
            let out = out_dir(&common, &config, "converge", "converge");
            let workers = common.workers.unwrap_or(0);
            with_workers(workers, || {
                commands::converge::run(&out, &schemes, &blocks, &taus, m)
            })
        }
        Command::Couette {
            common,
            sweep,
            p_exp,
            lambda,
            theta,
            alpha,
            beta,
            magnetic,
            nu,
            m,
            n,
            t_snapshot,
            scheme,
            raw_times,
        } => {
            let config = load_config(&common)?;
            let mut setup = CouetteSetup {
                params: oldroyd_params_from(&config)?,
                ..CouetteSetup::default()
            };
            if let Some(v) = config.get_f64("problem", "p_exp")? {
                setup.p_exp = v;
            }
            if let Some(v) = config.get_bool("problem", "raw_times")? {
                setup.raw_times = v;
            }
            if let Some(v) = config.get_usize("couette", "m")? {
                setup.m = v;
            }
            if let Some(v) = config.get_usize("couette", "n")? {
                setup.n = v;
            }
            if let Some(v) = config.get_f64("couette", "t_snapshot")? {
                setup.t_snapshot = v;
            }
            if let Some(raw) = config.get("couette", "scheme") {
                setup.scheme = raw.parse()?;
            }
            // flags override config
            if let Some(v) = p_exp {
                setup.p_exp = v;
            }
            if let Some(v) = lambda {
                setup.params.lambda_relax = v;
            }
            if let Some(v) = theta {
                setup.params.theta_retard = v;
            }
            if let Some(v) = alpha {
                setup.params.alpha = v;
            }
            if let Some(v) = beta {
                setup.params.beta = v;
            }
            if let Some(v) = magnetic {
                setup.params.magnetic = v;
            }
            if let Some(v) = nu {
                setup.params.nu = v;
            }
            if let Some(v) = m {
                setup.m = v;
            }
            if let Some(v) = n {
                setup.n = v;
            }
            if let Some(v) = t_snapshot {
                setup.t_snapshot = v;
            }
            if let Some(raw) = scheme {
                setup.scheme = raw.parse()?;
            }
            if raw_times {
                setup.raw_times = true;
            }
            let sweep = match sweep.or_else(|| config.get("couette", "sweep").map(str::to_string)) {
                None => None,
                Some(raw) => {
                    let (param, values) = raw.split_once('=').ok_or_else(|| {
                        Error::Usage(format!("sweep `{raw}` must be param=v1,v2,..."))
                    })?;
                    let values = parse_number_list(values)?;
                    if values.is_empty() {
                        return Err(Error::Usage("sweep needs at least one value".into()));
                    }
                    if values.iter().any(|v| !v.is_finite()) {
                        return Err(Error::Usage("sweep values must be finite".into()));
                    }
                    Some((param.parse::<SweepParam>()?, values))
                }
            };
            let out = out_dir(&common, &config, "couette", "couette");
            let workers = common.workers.unwrap_or(0);
            with_workers(workers, || commands::couette::run(&out, &setup, sweep))
        }
        Command::Lemma5 {
            common,
            beta_list,
            sizes,
        } => {
            let config = load_config(&common)?;
            let betas = match beta_list
                .or_else(|| config.get("lemma5", "beta_list").map(str::to_string))
            {
                Some(raw) => parse_number_list(&raw)?,
                None => (1..=9).map(|i| i as f64 / 10.0).collect(),
            };
            let sizes = match sizes.or_else(|| config.get("lemma5", "sizes").map(str::to_string)) {
                Some(raw) => parse_size_list(&raw)?,
                None => (1..=300).collect(),
            };
            let seed = common
                .seed
                .or(config.get_usize("lemma5", "seed")?.map(|s| s as u64))
                .unwrap_or(1);
            let out = out_dir(&common, &config, "lemma5", "lemma5");
            let workers = common.workers.unwrap_or(0);
            with_workers(workers, || commands::lemma5::run(&out, &betas, &sizes, seed))
        }
        Command::Verify { common } => {
            let config = load_config(&common)?;
            let seed = common
                .seed
                .or(config.get_usize("verify", "seed")?.map(|s| s as u64))
                .unwrap_or(1);
            let out = out_dir(&common, &config, "verify", "verify");
            let workers = common.workers.unwrap_or(0);
            with_workers(workers, || commands::verify_cmd::run(&out, seed))
        }
        Command::Bench {
            common,
            m,
            tau_list,
            repeats,
            check,
        } => {
            let config = load_config(&common)?;
            let m = match m {
                Some(v) => v,
                None => config.get_usize("bench", "m")?.unwrap_or(1000),
            };
            let taus = match tau_list.or_else(|| config.get("bench", "tau_list").map(str::to_string))
            {
                Some(raw) => parse_number_list(&raw)?,
                None => commands::converge::DEFAULT_TAU_DENOMS
                    .iter()
                    .map(|d| 1.0 / *d as f64)
                    .collect(),
            };
            let repeats = repeats.unwrap_or(3);
            let out = out_dir(&common, &config, "bench", "bench");
            // timing fidelity: no worker pool, strictly serial
            commands::bench::run(&out, m, &taus, repeats, check)
        }
        Command::OracleCheck { common, instances } => {
            let config = load_config(&common)?;
            let instances = match instances {
                Some(v) => v,
                None => config.get_usize("oracle-check", "instances")?.unwrap_or(6),
            };
            let seed = common.seed.unwrap_or(1);
            let out = out_dir(&common, &config, "oracle-check", "oracle-check");
            commands::oracle_check::run(&out, instances, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err @ (Error::Usage(_) | Error::Domain { .. })) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_and_block_parsing() {
        assert_eq!(parse_schemes("both").unwrap(), vec![Scheme::I, Scheme::II]);
        assert_eq!(parse_schemes("I").unwrap(), vec![Scheme::I]);
        assert_eq!(parse_schemes("ii").unwrap(), vec![Scheme::II]);
        assert!(parse_schemes("x").is_err());
        let blocks = parse_blocks("0.7,0.6,1.5;0.5,0.3,1.6").unwrap();
        assert_eq!(blocks, vec![(0.7, 0.6, 1.5), (0.5, 0.3, 1.6)]);
        assert!(parse_blocks("0.7,0.6").is_err());
    }
}
