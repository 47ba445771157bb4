//! Derived constants for one modulus, printed as JSON.
//!
//! ```bash
//! cargo run --example context -- 0.6
//! ```

use quarter_elliptic::ModulusContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kappa: f64 = std::env::args().nth(1).map_or(Ok(0.6), |s| s.parse())?;
    let ctx = ModulusContext::from_kappa(kappa)?;
    println!("{}", serde_json::to_string_pretty(&ctx)?);

    // The same lattice, reached from the Jacobi side.
    let back = ModulusContext::from_jacobi_k(ctx.k())?;
    println!("kappa recovered from k: {:.16}", back.kappa());
    println!("discriminant g2^3 - 27 g3^2 = {:.3e}", ctx.discriminant());
    Ok(())
}
