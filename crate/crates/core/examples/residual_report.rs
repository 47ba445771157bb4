//! Identity residuals on the fundamental grid, then the full suite.
//!
//! ```bash
//! cargo run --release --example residual_report
//! ```

use quarter_elliptic::mock::{identity_residuals, GridSpec};
use quarter_elliptic::verify::run_verification_suite;
use quarter_elliptic::ModulusContext;

fn main() -> quarter_elliptic::Result<()> {
    let ctx = ModulusContext::from_kappa(0.3)?;
    let grid = GridSpec::fundamental(&ctx);
    let report = identity_residuals(&ctx, &grid)?;
    println!(
        "kappa = {}: {} points, {} skipped near poles",
        report.kappa, report.points_evaluated, report.points_skipped
    );
    for (label, r) in &report.residuals {
        println!("  {label:<30} {r:.2e}");
    }

    let tol = 1e-8;
    let suite = run_verification_suite(&[0.1, 0.3, 0.5, 0.7, 0.9], None, tol);
    for k in &suite.results {
        let worst = k.report.as_ref().map_or(f64::NAN, |r| r.max_residual());
        println!(
            "kappa = {}: passed = {}, worst residual = {worst:.2e}",
            k.kappa, k.passed
        );
    }
    println!(
        "suite at tol {tol:e}: {}",
        if suite.passed { "PASS" } else { "FAIL" }
    );
    Ok(())
}
