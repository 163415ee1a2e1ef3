//! March vs dense space-time oracle on seeded random small instances.

use std::path::Path;

use mtfrac::Result;

use crate::output::{ensure_dir, Manifest};
use crate::verify::check_oracle_equivalence;

pub fn run(out_dir: &Path, instances: usize, seed: u64) -> Result<i32> {
    ensure_dir(out_dir)?;
    let result = check_oracle_equivalence(4, seed, instances);
    println!(
        "oracle-check ({instances} instances, seed {seed}): {} — {}",
        if result.pass { "PASS" } else { "FAIL" },
        result.details
    );
    let mut manifest = Manifest::new(out_dir, "oracle-check");
    manifest.parameter("instances", instances);
    manifest.parameter("seed", seed);
    manifest.parameter("pass", result.pass);
    manifest.parameter("details", result.details.clone());
    manifest.write()?;
    Ok(if result.pass { 0 } else { 1 })
}
