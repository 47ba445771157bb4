//! Gauss hypergeometric function `F(a, b; c; z)` for real arguments: the general
//! power series, plus the two closed forms this crate is built on.

use crate::error::{Error, Result};
use crate::numerics::Tolerance;

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// `F(a, b; c; z)` summed term by term until `|term| <= tol.rel * |sum|` (or
/// `tol.abs`), for `|z| < 1`.
pub fn gauss_series(a: f64, b: f64, c: f64, z: f64, tol: Tolerance) -> Result<f64> {
    tol.validate()?;
    if !(z.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "hypergeometric series requires |z| < 1, got z = {z}"
        )));
    }
    if c <= 0.0 && c == c.round() {
        return Err(Error::Domain(format!("c = {c} is a non-positive integer")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_SERIES_TERMS {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        // Once the term ratio has settled below one the tail is bounded by a
        // geometric series; stop when that bound is negligible.
        let ratio = ((a + n + 1.0) * (b + n + 1.0) / ((c + n + 1.0) * (n + 2.0)) * z).abs();
        if ratio < 1.0 {
            let tail = term.abs() * ratio / (1.0 - ratio);
            if tail <= tol.abs.max(tol.rel * sum.abs()) {
                return Ok(sum);
            }
        }
    }
    Err(Error::Convergence {
        terms: MAX_SERIES_TERMS,
    })
}

/// `F(1/4, 3/4; 1/2; z)` in closed form, for real `z < 1`.
///
/// With `z = sin^2 psi` this is `cos(psi/2) / cos(psi)`; written without the
/// angle it is `sqrt((1 + sqrt(1 - z)) / 2) / sqrt(1 - z)`, which also covers
/// negative `z`.
pub fn f_quarter(z: f64) -> Result<f64> {
    if !(z < 1.0) {
        return Err(Error::Domain(format!(
            "F(1/4, 3/4; 1/2; z) closed form requires z < 1, got {z}"
        )));
    }
    let root = (1.0 - z).sqrt();
    Ok((0.5 * (1.0 + root)).sqrt() / root)
}

/// `F(1/2, 1/2; 1/2; z) = (1 - z)^(-1/2)`, the integrand of the classical
/// incomplete integral of the first kind.
pub fn f_classical(z: f64) -> Result<f64> {
    if !(z < 1.0) {
        return Err(Error::Domain(format!(
            "F(1/2, 1/2; 1/2; z) requires z < 1, got {z}"
        )));
    }
    Ok(1.0 / (1.0 - z).sqrt())
}
