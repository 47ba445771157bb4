//! The generating series F(1/4, 3/4; 1/2; z) against its closed form.

use quarter_elliptic::hypergeometric::{f_classical, f_quarter, gauss_series};
use quarter_elliptic::Tolerance;

fn main() -> quarter_elliptic::Result<()> {
    println!(
        "{:>6} {:>22} {:>22} {:>10}",
        "z", "series", "closed form", "gap"
    );
    for z in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9] {
        let series = gauss_series(0.25, 0.75, 0.5, z, Tolerance::default())?;
        let closed = f_quarter(z)?;
        println!(
            "{z:>6.2} {series:>22.16} {closed:>22.16} {:>10.2e}",
            (series - closed).abs()
        );
    }
    // For comparison, the integrand of the classical first-kind integral.
    println!("F(1/2, 1/2; 1; 0.5) = {:.16}", f_classical(0.5)?);
    Ok(())
}
