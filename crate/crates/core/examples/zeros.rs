//! Zeros of d, the pole at i omega', and the simple zero of s^2 where d = -1.

use quarter_elliptic::mock;
use quarter_elliptic::ModulusContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = ModulusContext::from_kappa(0.6)?;

    let report = mock::zero_report(&ctx);
    println!("{}", serde_json::to_string_pretty(&report)?);

    let est = mock::pole_coefficient_estimates(&ctx);
    println!(
        "h^2 d(i omega' + h) for h = {:?}: {est:?}",
        mock::POLE_STEPS
    );
    println!(
        "extrapolated pole coefficient: {:.10}",
        mock::pole_coefficient(&ctx)?
    );

    let w = mock::s2_simple_zero(&ctx);
    println!("d = -1 at z = {:.12}", w.z);
    println!(
        "  s^2 = {:.2e}, |d(s^2)/dx| = {:.6}",
        w.s2.norm(),
        w.s2_derivative.norm()
    );
    println!(
        "  wp'^2 = {:.12}, kappa^6/16 = {:.12}",
        w.wp_prime_squared.re, w.kappa6_over_16
    );
    Ok(())
}
