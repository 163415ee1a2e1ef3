//! Temporal-convergence tables for the manufactured benchmark problem.

use std::path::Path;

use mtfrac::analysis::{convergence_table, ConvergenceReport};
use mtfrac::model::example1_problem;
use mtfrac::solver::Scheme;
use mtfrac::Result;

use crate::expected::{table1, table2, ExpectedBlock};
use crate::output::{ensure_dir, fmt_opt, fmt_sci, write_csv, Manifest};
use crate::verify::tolerances;

pub const DEFAULT_TAU_DENOMS: [u32; 5] = [40, 80, 160, 320, 640];
pub const DEFAULT_BLOCKS: [(f64, f64, f64); 3] = [(0.7, 0.6, 1.5), (0.7, 0.8, 1.6), (0.5, 0.3, 1.6)];

fn csv_rows(report: &ConvergenceReport) -> Vec<Vec<String>> {
    report
        .rows
        .iter()
        .map(|row| {
            vec![
                fmt_sci(row.tau),
                fmt_sci(row.errors.l2),
                fmt_opt(row.order_l2),
                fmt_sci(row.errors.linf),
                fmt_opt(row.order_linf),
            ]
        })
        .collect()
}

/// Compare one computed report against the matching fixture block, returning
/// human-readable violations (empty = within tolerance).
fn compare(report: &ConvergenceReport, expected: &ExpectedBlock) -> Vec<String> {
    let mut violations = Vec::new();
    for (row, exp) in report.rows.iter().zip(&expected.rows) {
        let rel_l2 = (row.errors.l2 - exp.l2).abs() / exp.l2;
        let rel_linf = (row.errors.linf - exp.linf).abs() / exp.linf;
        if rel_l2 > tolerances::TABLE_ERROR_REL || rel_linf > tolerances::TABLE_ERROR_REL {
            violations.push(format!(
                "τ=1/{}: error deviation {rel_l2:.2e} / {rel_linf:.2e}",
                exp.tau_denom
            ));
        }
        for (got, want) in [(row.order_l2, exp.order_l2), (row.order_linf, exp.order_linf)] {
            if let (Some(got), Some(want)) = (got, want) {
                if (got - want).abs() > tolerances::TABLE_ORDER_ABS {
                    violations.push(format!(
                        "τ=1/{}: order {got:.3} vs reference {want}",
                        exp.tau_denom
                    ));
                }
            }
        }
    }
    violations
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    out_dir: &Path,
    schemes: &[Scheme],
    blocks: &[(f64, f64, f64)],
    taus: &[f64],
    m: usize,
) -> Result<i32> {
    ensure_dir(out_dir)?;
    let h = 1.0 / m as f64;
    let mut manifest = Manifest::new(out_dir, "converge");
    manifest.parameter("M", m);
    manifest.parameter(
        "tau_list",
        taus.iter().map(|t| fmt_sci(*t)).collect::<Vec<_>>(),
    );
    manifest.parameter(
        "schemes",
        schemes.iter().map(Scheme::to_string).collect::<Vec<_>>(),
    );

    let default_run = blocks == DEFAULT_BLOCKS
        && taus.len() == DEFAULT_TAU_DENOMS.len()
        && taus
            .iter()
            .zip(&DEFAULT_TAU_DENOMS)
            .all(|(t, d)| (t - 1.0 / *d as f64).abs() < 1e-15)
        && m == 1000;

    let mut all_ok = true;
    let mut summary_blocks = Vec::new();
    for &scheme in schemes {
        let table_tag = match scheme {
            Scheme::I => "table1",
            Scheme::II => "table2",
        };
        let expected_blocks = match scheme {
            Scheme::I => table1(),
            Scheme::II => table2(),
        };
        for (bi, &(alpha, beta, gamma)) in blocks.iter().enumerate() {
            let problem = example1_problem(alpha, beta, gamma)?;
            let label = format!("alpha={alpha}, beta={beta}, gamma={gamma}");
            let report = convergence_table(&problem, scheme, taus, h, &label)?;
            let filename = format!("{table_tag}_block{}.csv", bi + 1);
            write_csv(
                &out_dir.join(&filename),
                &["tau", "l2_error", "l2_order", "linf_error", "linf_order"],
                &csv_rows(&report),
            )?;
            manifest.file(
                &filename,
                serde_json::json!({
                    "scheme": scheme.to_string(),
                    "alpha": alpha,
                    "beta": beta,
                    "gamma": gamma,
                    "h": h,
                }),
            );
            summary_blocks.push(serde_json::json!({
                "scheme": scheme.to_string(),
                "alpha": alpha,
                "beta": beta,
                "gamma": gamma,
                "h": h,
                "rows": report
                    .rows
                    .iter()
                    .map(|row| {
                        serde_json::json!({
                            "tau": row.tau,
                            "l2_error": row.errors.l2,
                            "l2_order": row.order_l2,
                            "linf_error": row.errors.linf,
                            "linf_order": row.order_linf,
                        })
                    })
                    .collect::<Vec<_>>(),
            }));
            if default_run {
                let expected = expected_blocks
                    .iter()
                    .find(|b| b.alpha == alpha && b.beta == beta && b.gamma == gamma)
                    .expect("default blocks have fixtures");
                let violations = compare(&report, expected);
                if violations.is_empty() {
                    println!("{filename}: matches reference values");
                } else {
                    all_ok = false;
                    for v in violations {
                        println!("{filename}: {v}");
                    }
                }
            } else {
                println!("{filename}: written ({label})");
            }
        }
    }
    let summary_path = out_dir.join("tables_summary.json");
    std::fs::write(
        &summary_path,
        serde_json::to_string_pretty(&serde_json::json!({ "tables": summary_blocks }))
            .expect("summary serializes"),
    )
    .map_err(|e| mtfrac::Error::Usage(format!("cannot write {}: {e}", summary_path.display())))?;
    manifest.file("tables_summary.json", serde_json::json!({"kind": "structured-summary"}));
    manifest.write()?;
    Ok(if all_ok { 0 } else { 1 })
}
