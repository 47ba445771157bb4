//! wp through sn against the Laurent-series / duplication oracle, which only
//! sees g2 and g3.

use quarter_elliptic::verify::oracle_sample_points;
use quarter_elliptic::weierstrass::{cubic, wp, wp_oracle, wp_prime};
use quarter_elliptic::{Complex64, ModulusContext};

fn main() -> quarter_elliptic::Result<()> {
    let ctx = ModulusContext::from_kappa(0.6)?;
    println!("g2 = {:.6}, g3 = {:.6}", ctx.g2(), ctx.g3());

    for z in oracle_sample_points(&ctx, 8) {
        let a = wp(&ctx, z)?;
        let b = wp_oracle(ctx.g2(), ctx.g3(), z)?;
        let p = wp_prime(&ctx, z)?;
        let ode = (p * p - cubic(ctx.g2(), ctx.g3(), a)).norm();
        println!(
            "z = {z:>22.4}  wp = {a:>30.12}  gap = {:.1e}  ode = {ode:.1e}",
            (a - b).norm()
        );
    }

    let (w, wi) = (ctx.omega(), ctx.omega_prime());
    for (name, z, e) in [
        ("omega", Complex64::new(w, 0.0), ctx.e1()),
        ("omega + i omega'", Complex64::new(w, wi), ctx.e3()),
        ("i omega'", Complex64::new(0.0, wi), ctx.e2()),
    ] {
        println!("wp({name}) = {:.15}  (e = {e:.15})", wp(&ctx, z)?.re);
    }

    // Arguments on the lattice are refused.
    println!(
        "wp(0): {:?}",
        wp(&ctx, Complex64::new(0.0, 0.0)).unwrap_err()
    );
    Ok(())
}
