//! The coperiodic Weierstrass function.
//!
//! The primary route writes `wp(z) = e2 + (e1 - e2) / sn^2(scale * z)`, so `wp`
//! shares its lattice with the Jacobi layer by construction. [`wp_oracle`] is an
//! independent evaluation from the invariants alone (Laurent series near the
//! origin followed by repeated duplication).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jacobi::{lattice_distance, JacobiQuotients};
use crate::modulus::ModulusContext;

/// Halve the argument until it is at most this large before summing the series.
pub const SERIES_RADIUS: f64 = 0.5;

const LAURENT_TERMS: usize = 18;

fn check_lattice(ctx: &ModulusContext, z: Complex64, radius: f64) -> Result<()> {
    if lattice_distance(z, 2.0 * ctx.omega(), 2.0 * ctx.omega_prime()) < radius {
        return Err(Error::PoleProximity {
            re: z.re,
            im: z.im,
            radius,
        });
    }
    Ok(())
}

fn quotients(ctx: &ModulusContext, z: Complex64) -> JacobiQuotients {
    ctx.jacobi().quotients(z * ctx.scale())
}

/// `wp(z)` without a pole check; infinite or NaN on the lattice.
pub(crate) fn wp_unchecked(ctx: &ModulusContext, z: Complex64) -> Complex64 {
    let q = quotients(ctx, z);
    let ns = q.den / q.sn_num;
    ctx.e2() + (ctx.e1() - ctx.e2()) * ns * ns
}

/// `wp'(z) = -2 (e1 - e2)^(3/2) cn dn / sn^3` without a pole check.
pub(crate) fn wp_prime_unchecked(ctx: &ModulusContext, z: Complex64) -> Complex64 {
    let q = quotients(ctx, z);
    let s = ctx.scale();
    -2.0 * s * s * s * q.cn_num * q.dn_num * q.den / (q.sn_num * q.sn_num * q.sn_num)
}

/// `wp(z)`, refusing arguments within `ctx.pole_exclusion()` of a lattice point.
pub fn wp(ctx: &ModulusContext, z: Complex64) -> Result<Complex64> {
    check_lattice(ctx, z, ctx.pole_exclusion())?;
    Ok(wp_unchecked(ctx, z))
}

/// `wp'(z)`, with the same pole exclusion as [`wp`].
pub fn wp_prime(ctx: &ModulusContext, z: Complex64) -> Result<Complex64> {
    check_lattice(ctx, z, ctx.pole_exclusion())?;
    Ok(wp_prime_unchecked(ctx, z))
}

/// `4 w^3 - g2 w - g3`, the right-hand side of `(wp')^2 = 4 wp^3 - g2 wp - g3`.
pub fn cubic(g2: f64, g3: f64, w: Complex64) -> Complex64 {
    4.0 * w * w * w - g2 * w - g3
}

/// Coefficients `c_k` (k = 2, 3, ...) of `wp(z) = 1/z^2 + sum c_k z^(2k - 2)`.
pub fn laurent_coefficients(g2: f64, g3: f64, terms: usize) -> Vec<f64> {
    // Index j holds c_{j + 2}.
    let mut c: Vec<f64> = Vec::with_capacity(terms);
    for k in 2..terms + 2 {
        let next = match k {
            2 => g2 / 20.0,
            3 => g3 / 28.0,
            _ => {
                let sum: f64 = (2..=k - 2).map(|m| c[m - 2] * c[k - m - 2]).sum();
                3.0 * sum / (((2 * k + 1) * (k - 3)) as f64)
            }
        };
        c.push(next);
    }
    c
}

fn laurent(coeffs: &[f64], z: Complex64) -> Complex64 {
    let z2 = z * z;
    // Horner in z^2 for sum c_k z^(2k - 4), then scale by z^2.
    let tail = coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z2 + c);
    z2.inv() + tail * z2
}

/// Denominator threshold below which a duplication step is considered ill conditioned.
pub const DUPLICATION_FLOOR: f64 = 1e-12;

fn duplicate(g2: f64, g3: f64, w: Complex64) -> Option<Complex64> {
    let den = 4.0 * cubic(g2, g3, w);
    if den.norm() < DUPLICATION_FLOOR {
        return None;
    }
    let num = 6.0 * w * w - 0.5 * g2;
    Some(-2.0 * w + num * num / den)
}

fn oracle_with_depth(
    coeffs: &[f64],
    g2: f64,
    g3: f64,
    z: Complex64,
    depth: u32,
) -> Option<Complex64> {
    let small = z / 2f64.powi(depth as i32);
    let mut w = laurent(coeffs, small);
    for _ in 0..depth {
        w = duplicate(g2, g3, w)?;
    }
    Some(w)
}

/// `wp(z; g2, g3)` from the invariants alone: halve `z` until `|z| <= 0.5`, sum
/// the Laurent series there, and double back with
/// `wp(2u) = -2 wp(u) + (6 wp(u)^2 - g2/2)^2 / (4 (4 wp(u)^3 - g2 wp(u) - g3))`.
///
/// If a duplication denominator falls below [`DUPLICATION_FLOOR`], one extra
/// halving is tried before giving up with a conditioning error.
pub fn wp_oracle(g2: f64, g3: f64, z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!(
            "oracle requires a finite non-zero argument, got {z}"
        )));
    }
    let coeffs = laurent_coefficients(g2, g3, LAURENT_TERMS);
    let mut depth = 0u32;
    while z.norm() / 2f64.powi(depth as i32) > SERIES_RADIUS {
        depth += 1;
    }
    oracle_with_depth(&coeffs, g2, g3, z, depth)
        .or_else(|| oracle_with_depth(&coeffs, g2, g3, z, depth + 1))
        .ok_or_else(|| {
            Error::Conditioning(format!(
                "duplication denominator below {DUPLICATION_FLOOR} at {z}; argument is too close to a lattice point"
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx(kappa: f64) -> ModulusContext {
        ModulusContext::from_kappa(kappa).unwrap()
    }

    #[test]
    fn midpoint_values() {
        let m = ctx(0.6);
        let (w, wp_) = (m.omega(), m.omega_prime());
        assert!((wp(&m, c(w, 0.0)).unwrap() - 17.0 / 30.0).norm() < 1e-12);
        assert!((wp(&m, c(0.0, wp_)).unwrap() + 1.0 / 3.0).norm() < 1e-12);
        assert!((wp(&m, c(w, wp_)).unwrap() + 7.0 / 30.0).norm() < 1e-12);
    }

    #[test]
    fn leading_laurent_term() {
        let m = ctx(0.6);
        let z = c(0.01, 0.0);
        assert!((wp(&m, z).unwrap() * z * z - 1.0).norm() < 1e-3);
    }

    #[test]
    fn pole_exclusion() {
        let m = ctx(0.6);
        let near = c(2.0 * m.omega() + 1e-6, 2.0 * m.omega_prime());
        assert!(matches!(wp(&m, near), Err(Error::PoleProximity { .. })));
        assert!(matches!(
            wp_prime(&m, c(0.0, 0.0)),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn derivative_values() {
        let m = ctx(0.6);
        let (w, wp_) = (m.omega(), m.omega_prime());
        for z in [c(w, 0.0), c(0.0, wp_), c(w, wp_)] {
            assert!(wp_prime(&m, z).unwrap().norm() <= 1e-8, "{z}");
        }
        let z = c(0.4, 0.2);
        assert!((wp_prime(&m, -z).unwrap() + wp_prime(&m, z).unwrap()).norm() <= 1e-10);
    }

    #[test]
    fn laurent_coefficients_low_order() {
        let (g2, g3) = (0.9, 0.2);
        let cs = laurent_coefficients(g2, g3, 6);
        assert_eq!(cs[0], g2 / 20.0);
        assert_eq!(cs[1], g3 / 28.0);
        assert!((cs[2] - g2 * g2 / 1200.0).abs() < 1e-18);
        assert!((cs[3] - 3.0 * g2 * g3 / 6160.0).abs() < 1e-18);
    }

    #[test]
    fn oracle_reproduces_midpoint() {
        let m = ctx(0.6);
        let v = wp_oracle(m.g2(), m.g3(), c(m.omega(), 0.0)).unwrap();
        assert!((v - 17.0 / 30.0).norm() < 1e-10, "{v}");
    }

    #[test]
    fn oracle_agrees_with_sn_route() {
        let m = ctx(0.6);
        let z = c(0.5, 0.3);
        let a = wp(&m, z).unwrap();
        let b = wp_oracle(m.g2(), m.g3(), z).unwrap();
        assert!((a - b).norm() <= 1e-9);
    }

    #[test]
    fn oracle_errors() {
        assert!(matches!(
            wp_oracle(1.0, 0.1, c(0.0, 0.0)),
            Err(Error::Domain(_))
        ));
        let m = ctx(0.6);
        let at_pole = c(2.0 * m.omega(), 0.0);
        assert!(matches!(
            wp_oracle(m.g2(), m.g3(), at_pole),
            Err(Error::Conditioning(_))
        ));
    }

    proptest! {
        #[test]
        fn structure(kappa in 0.05f64..0.95, x in -4.0f64..4.0, y in -5.0f64..5.0) {
            let m = ctx(kappa);
            let z = c(x, y);
            let lat = |z: Complex64| lattice_distance(z, 2.0 * m.omega(), 2.0 * m.omega_prime());
            prop_assume!(lat(z) > 0.1);
            let v = wp(&m, z).unwrap();
            let vp = wp_prime(&m, z).unwrap();
            let rhs = cubic(m.g2(), m.g3(), v);
            prop_assert!((vp * vp - rhs).norm() <= 1e-9 * (1.0 + v.norm().powi(3)));
            prop_assert!((wp(&m, -z).unwrap() - v).norm() <= 1e-10 * (1.0 + v.norm()));
            let conj = wp(&m, z.conj()).unwrap();
            prop_assert!((conj - v.conj()).norm() <= 1e-14 * (1.0 + v.norm()));
            let shifted = wp(&m, z + 2.0 * m.omega()).unwrap();
            prop_assert!((shifted - v).norm() <= 1e-9 * (1.0 + v.norm()));
            let shifted = wp(&m, z + c(0.0, 2.0 * m.omega_prime())).unwrap();
            prop_assert!((shifted - v).norm() <= 1e-9 * (1.0 + v.norm()));
        }
    }
}
