//! The `verify` command: run the full check suite and emit a machine-
//! readable report.

use std::path::Path;

use mtfrac::Result;

use crate::output::ensure_dir;
use crate::verify::{render_line, run_all, VerifyOptions};

pub fn run(out_dir: &Path, seed: u64) -> Result<i32> {
    ensure_dir(out_dir)?;
    let results = run_all(&VerifyOptions { seed })?;
    let mut all_pass = true;
    for result in &results {
        println!("{}", render_line(result));
        all_pass &= result.pass;
    }
    let report = serde_json::json!({
        "seed": seed,
        "pass": all_pass,
        "checks": results
            .iter()
            .map(|r| {
                serde_json::json!({
                    "id": r.id,
                    "name": r.name,
                    "pass": r.pass,
                    "details": r.details,
                })
            })
            .collect::<Vec<_>>(),
    });
    let path = out_dir.join("verify_report.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report).expect("serializes"))
        .map_err(|e| mtfrac::Error::Usage(format!("cannot write {}: {e}", path.display())))?;
    println!(
        "{} — report at {}",
        if all_pass { "ALL CHECKS PASS" } else { "CHECK FAILURES" },
        path.display()
    );
    Ok(if all_pass { 0 } else { 1 })
}
