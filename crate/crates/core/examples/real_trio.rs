//! The amplitude phi(u) on the real line and the trio s, c, d built from it.

use quarter_elliptic::amplitude::Amplitude;
use quarter_elliptic::ModulusContext;

fn main() -> quarter_elliptic::Result<()> {
    let ctx = ModulusContext::from_kappa(0.6)?;
    let amp = Amplitude::new(&ctx)?;
    println!(
        "u(pi/2) = {:.15}   omega = {:.15}",
        amp.quarter_integral(),
        ctx.omega()
    );

    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10} {:>11}",
        "u", "phi", "s", "c", "d", "d'"
    );
    let omega = ctx.omega();
    for j in 0..=8 {
        let u = -2.0 * omega + 4.0 * omega * j as f64 / 8.0;
        let p = amp.point(u)?;
        let t = amp.trio(u)?;
        let der = amp.derivatives(u)?;
        println!(
            "{u:>8.4} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>11.6}",
            p.phi, t.s, t.c, t.d, der.d_prime
        );
    }

    // d satisfies (d')^2 = 2 (1 - d)(d^2 - lambda^2).
    let (u, l2) = (0.7, ctx.lambda() * ctx.lambda());
    let d = amp.trio(u)?.d;
    let dp = amp.derivatives(u)?.d_prime;
    println!(
        "ode residual at u = {u}: {:.2e}",
        dp * dp - 2.0 * (1.0 - d) * (d * d - l2)
    );
    Ok(())
}
