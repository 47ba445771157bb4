//! Classical sn, cn, dn of modulus kappa two ways: by inverting the
//! first-kind integral, and by descending Landen / AGM.

use quarter_elliptic::jacobi::{ClassicalAmplitude, JacobiModulus};

fn main() -> quarter_elliptic::Result<()> {
    let kappa = 0.6;
    let quad = ClassicalAmplitude::new(kappa)?;
    let agm = JacobiModulus::new(kappa)?;
    let big_k = agm.quarter_period();
    println!("K({kappa}) = {big_k:.16}");

    let mut worst: f64 = 0.0;
    for j in 0..=12 {
        let x = -2.0 * big_k + 4.0 * big_k * j as f64 / 12.0;
        let (s, c, d) = quad.sn_cn_dn(x)?;
        let (rs, rc, rd) = agm.real(x);
        let gap = (s - rs).abs().max((c - rc).abs()).max((d - rd).abs());
        worst = worst.max(gap);
        println!("x = {x:>8.4}  sn = {s:>10.7}  cn = {c:>10.7}  dn = {d:>9.7}  gap = {gap:.1e}");
    }
    println!("largest gap: {worst:.2e}");

    let x = 0.8;
    println!(
        "dn({x}) as d(am)/dx: {:.12}, as sqrt(1 - k^2 sn^2): {:.12}",
        quad.dn_from_derivative(x)?,
        quad.dn_from_amplitude(x)?
    );
    Ok(())
}
