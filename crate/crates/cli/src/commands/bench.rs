//! Wall-time measurement of both schemes across a τ ladder.
//!
//! Absolute seconds are hardware-bound; only ordering and growth-ratio
//! properties are ever asserted. Runs are strictly serial for timing
//! fidelity; short runs (N < 160) report the minimum over `repeats`
//! executions and long runs the minimum of two, which shaves scheduler
//! noise off the ratio checks.

use std::path::Path;
use std::time::Instant;

use mtfrac::model::example1_problem;
use mtfrac::solver::{march, GridSpec, Scheme};
use mtfrac::Result;

use crate::output::{ensure_dir, fmt_sci, write_csv, Manifest};
use crate::verify::tolerances;

/// One timed run.
#[derive(Clone, Copy, Debug)]
pub struct BenchRow {
    pub scheme: Scheme,
    pub tau: f64,
    pub n: usize,
    pub seconds: f64,
}

/// Time each (scheme, τ) pair on the first table block's parameters.
pub fn bench_rows(m: usize, taus: &[f64], repeats_small: usize) -> Result<Vec<BenchRow>> {
    let problem = example1_problem(0.7, 0.6, 1.5)?;
    let mut rows = Vec::new();
    for scheme in [Scheme::I, Scheme::II] {
        for &tau in taus {
            let n = (problem.final_time / tau).round() as usize;
            let grid = GridSpec::for_problem(&problem, m, n)?;
            let repeats = if n < 160 {
                repeats_small.max(1)
            } else {
                repeats_small.clamp(1, 2)
            };
            let mut best = f64::INFINITY;
            for _ in 0..repeats {
                let start = Instant::now();
                let sol = march(&problem, &grid, scheme)?;
                let elapsed = start.elapsed().as_secs_f64();
                // keep the result alive through the measurement
                std::hint::black_box(sol.final_level()[m / 2]);
                best = best.min(elapsed);
            }
            rows.push(BenchRow {
                scheme,
                tau,
                n,
                seconds: best,
            });
        }
    }
    Ok(rows)
}

/// Evaluate the two asserted properties on a set of rows: Scheme II never
/// beats Scheme I at the same τ, and halving τ from N >= 160 multiplies the
/// wall time by a factor inside the configured band.
pub fn ratio_findings(rows: &[BenchRow]) -> (Vec<String>, Vec<String>) {
    let mut notes = Vec::new();
    let mut violations = Vec::new();
    let mut taus: Vec<f64> = rows.iter().map(|r| r.tau).collect();
    taus.sort_by(|a, b| b.partial_cmp(a).unwrap());
    taus.dedup();
    let pick = |scheme: Scheme, tau: f64| rows.iter().find(|r| r.scheme == scheme && r.tau == tau);
    for &tau in &taus {
        if let (Some(r1), Some(r2)) = (pick(Scheme::I, tau), pick(Scheme::II, tau)) {
            if r2.seconds < r1.seconds {
                violations.push(format!(
                    "τ={tau:.6}: Scheme II {:.4}s < Scheme I {:.4}s",
                    r2.seconds, r1.seconds
                ));
            }
        }
    }
    for scheme in [Scheme::I, Scheme::II] {
        for pair in taus.windows(2) {
            let (Some(coarse), Some(fine)) = (pick(scheme, pair[0]), pick(scheme, pair[1])) else {
                continue;
            };
            if fine.n < 160 {
                continue;
            }
            let ratio = fine.seconds / coarse.seconds;
            notes.push(format!(
                "scheme {scheme} N={}→{}: factor {ratio:.2}",
                coarse.n, fine.n
            ));
            if !(tolerances::TIME_RATIO_LO..=tolerances::TIME_RATIO_HI).contains(&ratio) {
                violations.push(format!(
                    "scheme {scheme} N={}→{}: factor {ratio:.2} outside [{}, {}]",
                    coarse.n,
                    fine.n,
                    tolerances::TIME_RATIO_LO,
                    tolerances::TIME_RATIO_HI
                ));
            }
        }
    }
    (notes, violations)
}

pub fn run(
    out_dir: &Path,
    m: usize,
    taus: &[f64],
    repeats: usize,
    check: bool,
) -> Result<i32> {
    ensure_dir(out_dir)?;
    let rows = bench_rows(m, taus, repeats)?;
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.scheme.to_string(),
                fmt_sci(r.tau),
                fmt_sci(r.seconds),
            ]
        })
        .collect();
    let path = out_dir.join("bench.csv");
    write_csv(&path, &["scheme", "tau", "wall_seconds"], &csv_rows)?;

    let mut manifest = Manifest::new(out_dir, "bench");
    manifest.parameter("M", m);
    manifest.parameter(
        "tau_list",
        taus.iter().map(|t| fmt_sci(*t)).collect::<Vec<_>>(),
    );
    manifest.parameter("repeats_small", repeats);
    manifest.file("bench.csv", serde_json::json!({"columns": "scheme,tau,wall_seconds"}));
    manifest.write()?;

    for r in &rows {
        println!("scheme {:<3} τ={:<12} {:.4}s", r.scheme.to_string(), fmt_sci(r.tau), r.seconds);
    }
    let (notes, violations) = ratio_findings(&rows);
    for n in &notes {
        println!("  {n}");
    }
    if violations.is_empty() {
        println!("timing properties hold");
        Ok(0)
    } else {
        for v in &violations {
            println!("  violation: {v}");
        }
        Ok(if check { 1 } else { 0 })
    }
}
