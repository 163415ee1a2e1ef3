//! Acceptance suite: every release-gating check, one pass/fail line each.
//!
//! Run with `cargo test -p mtfrac-cli --test acceptance -- --nocapture` to
//! see the per-check lines; the same suite backs `mtfrac verify`.
//!
//! The whole suite runs inside a single test so the wall-time measurements
//! of the timing check are not polluted by sibling test threads.

use mtfrac_cli::verify::{render_line, run_all, VerifyOptions};

#[test]
fn acceptance_suite() {
    let results = run_all(&VerifyOptions { seed: 1 }).expect("suite executes");
    assert_eq!(results.len(), 10, "expected ten checks");
    let mut failed = Vec::new();
    for result in &results {
        println!("{}", render_line(result));
        if !result.pass {
            failed.push(format!("{} ({}): {}", result.id, result.name, result.details));
        }
    }
    assert!(
        failed.is_empty(),
        "acceptance criteria failed:\n{}",
        failed.join("\n")
    );
}

/// Seed variation must not flip any sampled property check.
#[test]
fn sampled_checks_are_seed_robust() {
    for seed in [2, 99] {
        let oracle = mtfrac_cli::verify::check_oracle_equivalence(4, seed, 6);
        assert!(oracle.pass, "seed {seed}: {}", oracle.details);
    }
}
