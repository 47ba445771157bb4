//! Elliptic extensions of the trio to the complex plane.
//!
//! With `v = scale * u` and the Jacobi functions of modulus `k`:
//!
//! ```text
//! d(u)   = 1 - (1 - lambda) sn^2(v)
//! c(u)   = cn(v) dn(v)
//! s^2(u) = sn^2(v) (k^2 + dn^2(v))
//! ```
//!
//! `d` and `c` are elliptic; `s^2` is elliptic but has simple zeros (where
//! `d = -1`), so `s` itself has no meromorphic extension. This module evaluates
//! the three functions, locates the zeros of `d` and the pole of `d` at `i omega'`,
//! and measures how well every identity linking them to `wp` holds on a grid.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::amplitude::Amplitude;
use crate::error::{Error, Result};
use crate::jacobi::{lattice_distance, JacobiQuotients};
use crate::modulus::ModulusContext;
use crate::weierstrass::{wp_prime_unchecked, wp_unchecked};

const THIRD: f64 = 1.0 / 3.0;

fn i_omega_prime(ctx: &ModulusContext) -> Complex64 {
    Complex64::new(0.0, ctx.omega_prime())
}

/// Distance from `z` to the nearest pole of `d` (and of `c`, `s^2`):
/// the points `i omega' + 2m omega + 2n i omega'`.
pub fn pole_distance(ctx: &ModulusContext, z: Complex64) -> f64 {
    lattice_distance(
        z - i_omega_prime(ctx),
        2.0 * ctx.omega(),
        2.0 * ctx.omega_prime(),
    )
}

fn check_poles(ctx: &ModulusContext, z: Complex64, radius: f64) -> Result<()> {
    if pole_distance(ctx, z) < radius {
        return Err(Error::PoleProximity {
            re: z.re,
            im: z.im,
            radius,
        });
    }
    Ok(())
}

/// All three functions and their derivatives at one point, from a single Jacobi
/// evaluation.
#[derive(Debug, Clone, Copy)]
struct Values {
    d: Complex64,
    c: Complex64,
    s2: Complex64,
    /// `d'` differentiated through the Jacobi form.
    d_prime: Complex64,
    c_prime: Complex64,
}

fn values(ctx: &ModulusContext, z: Complex64) -> Values {
    let q: JacobiQuotients = ctx.jacobi().quotients(z * ctx.scale());
    let (sn, cn, dn) = (q.sn(), q.cn(), q.dn());
    let k2 = ctx.k() * ctx.k();
    let sn2 = sn * sn;
    let a = ctx.kappa() * ctx.kappa() / (1.0 + ctx.lambda());
    Values {
        d: 1.0 - a * sn2,
        c: cn * dn,
        s2: sn2 * (k2 + dn * dn),
        d_prime: -2.0 * a * ctx.scale() * sn * cn * dn,
        c_prime: -ctx.scale() * sn * (dn * dn + k2 * cn * cn),
    }
}

pub(crate) fn d_unchecked(ctx: &ModulusContext, z: Complex64) -> Complex64 {
    values(ctx, z).d
}

/// `d(z) = 1 - (1 - lambda) sn^2(scale z)`.
pub fn d_complex(ctx: &ModulusContext, z: Complex64) -> Result<Complex64> {
    check_poles(ctx, z, ctx.pole_exclusion())?;
    Ok(values(ctx, z).d)
}

/// `c(z) = cn(scale z) dn(scale z)`.
pub fn c_complex(ctx: &ModulusContext, z: Complex64) -> Result<Complex64> {
    check_poles(ctx, z, ctx.pole_exclusion())?;
    Ok(values(ctx, z).c)
}

/// `s^2(z) = sn^2(scale z) (k^2 + dn^2(scale z))`.
pub fn s_squared(ctx: &ModulusContext, z: Complex64) -> Result<Complex64> {
    check_poles(ctx, z, ctx.pole_exclusion())?;
    Ok(values(ctx, z).s2)
}

/// `d'(z)` through the Weierstrass form: `(kappa^2 / 2) wp'(z) / (wp(z) + 1/3)^2`.
pub fn d_prime(ctx: &ModulusContext, z: Complex64) -> Result<Complex64> {
    check_poles(ctx, z, ctx.pole_exclusion())?;
    let w = wp_unchecked(ctx, z);
    let wp = wp_prime_unchecked(ctx, z);
    let shifted = w + THIRD;
    Ok(0.5 * ctx.kappa() * ctx.kappa() * wp / (shifted * shifted))
}

/// The step sizes used by [`pole_coefficient`].
pub const POLE_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Raw estimates `h^2 d(i omega' + h)` for each `h` in [`POLE_STEPS`].
pub fn pole_coefficient_estimates(ctx: &ModulusContext) -> [f64; 3] {
    POLE_STEPS.map(|h| h * h * d_unchecked(ctx, i_omega_prime(ctx) + h).re)
}

/// Leading coefficient of `d` at its double pole `i omega'`: the limit of
/// `h^2 d(i omega' + h)`, extrapolated from three step sizes.
///
/// `d` is even about the pole, so the estimates are series in `h^2` and two
/// Richardson passes remove the `h^2` and `h^4` terms. Fails if consecutive raw
/// estimates differ by more than 1%, which is what happens for any pole order
/// other than two.
pub fn pole_coefficient(ctx: &ModulusContext) -> Result<f64> {
    let [f0, f1, f2] = pole_coefficient_estimates(ctx);
    for (a, b) in [(f0, f1), (f1, f2)] {
        if !((a - b).abs() <= 0.01 * b.abs()) {
            return Err(Error::Conditioning(format!(
                "pole coefficient estimates {a} and {b} differ by more than 1%"
            )));
        }
    }
    let r0 = (4.0 * f1 - f0) / 3.0;
    let r1 = (4.0 * f2 - f1) / 3.0;
    Ok((16.0 * r1 - r0) / 15.0)
}

/// The conjugate zeros of `d` in the fundamental rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroPair {
    pub z_plus: Complex64,
    pub z_minus: Complex64,
}

/// Bisection for the zero of the real function `t -> d(omega + i t omega')` on
/// `(0, 1)`, where `d` runs from `lambda` down to `-lambda`.
pub fn find_zeros(ctx: &ModulusContext) -> ZeroPair {
    let edge = |t: f64| d_unchecked(ctx, Complex64::new(ctx.omega(), t * ctx.omega_prime())).re;
    let t = bisect(edge, 0.0, 1.0);
    let z_plus = Complex64::new(ctx.omega(), t * ctx.omega_prime());
    ZeroPair {
        z_plus,
        z_minus: z_plus.conj(),
    }
}

/// Bisection with `f(lo) > 0 > f(hi)`, for at most 80 halvings.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The zeros of `d` with the values of `wp` there that characterise them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroReport {
    pub kappa: f64,
    pub zeros: ZeroPair,
    pub d_at_zero: Complex64,
    /// `wp(z+)`; expected `kappa^2 / 2 - 1/3`.
    pub wp_at_zero: Complex64,
    pub wp_at_zero_expected: f64,
    /// `wp(z+ + i omega')`; expected `1/6`.
    pub wp_at_shifted_zero: Complex64,
    pub wp_at_shifted_zero_expected: f64,
    /// `wp'(z+)^2`; expected `kappa^4 (kappa^2 - 1) / 2`.
    pub wp_prime_squared: Complex64,
    pub wp_prime_squared_expected: f64,
}

pub fn zero_report(ctx: &ModulusContext) -> ZeroReport {
    let zeros = find_zeros(ctx);
    let z = zeros.z_plus;
    let kappa2 = ctx.kappa() * ctx.kappa();
    let wp_prime = wp_prime_unchecked(ctx, z);
    ZeroReport {
        kappa: ctx.kappa(),
        zeros,
        d_at_zero: d_unchecked(ctx, z),
        wp_at_zero: wp_unchecked(ctx, z),
        wp_at_zero_expected: 0.5 * kappa2 - THIRD,
        wp_at_shifted_zero: wp_unchecked(ctx, z + i_omega_prime(ctx)),
        wp_at_shifted_zero_expected: 1.0 / 6.0,
        wp_prime_squared: wp_prime * wp_prime,
        wp_prime_squared_expected: 0.5 * kappa2 * kappa2 * (kappa2 - 1.0),
    }
}

/// Evidence that `s^2` has a simple zero: the point on the edge
/// `(i omega', omega + i omega')` where `d = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimpleZeroWitness {
    pub kappa: f64,
    pub z: Complex64,
    pub d: Complex64,
    pub s2: Complex64,
    /// Central difference of `s^2` along the real direction (step `1e-5`).
    pub s2_derivative: Complex64,
    /// `wp'(z)^2` at the witness point.
    pub wp_prime_squared: Complex64,
    pub kappa6_over_16: f64,
    pub k6_over_16: f64,
}

pub fn s2_simple_zero(ctx: &ModulusContext) -> SimpleZeroWitness {
    // d + 1 runs from -infinity at the pole i omega' to 1 - lambda at omega + i omega'.
    let edge =
        |t: f64| -(d_unchecked(ctx, Complex64::new(t * ctx.omega(), ctx.omega_prime())).re + 1.0);
    let t = bisect(edge, 1e-9, 1.0);
    let z = Complex64::new(t * ctx.omega(), ctx.omega_prime());
    let h = 1e-5;
    let s2 = |z: Complex64| values(ctx, z).s2;
    let wp_prime = wp_prime_unchecked(ctx, z);
    SimpleZeroWitness {
        kappa: ctx.kappa(),
        z,
        d: d_unchecked(ctx, z),
        s2: s2(z),
        s2_derivative: (s2(z + h) - s2(z - h)) / (2.0 * h),
        wp_prime_squared: wp_prime * wp_prime,
        kappa6_over_16: ctx.kappa().powi(6) / 16.0,
        k6_over_16: ctx.k().powi(6) / 16.0,
    }
}

/// A rectangular sample of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub lower: Complex64,
    pub upper: Complex64,
    pub points_per_axis: usize,
    pub pole_exclusion: f64,
}

impl GridSpec {
    pub fn new(
        lower: Complex64,
        upper: Complex64,
        points_per_axis: usize,
        pole_exclusion: f64,
    ) -> Result<Self> {
        let grid = Self {
            lower,
            upper,
            points_per_axis,
            pole_exclusion,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// 11 x 11 points on the fundamental rectangle inset by 0.1 from each side,
    /// with the context's default pole exclusion.
    pub fn fundamental(ctx: &ModulusContext) -> Self {
        Self {
            lower: Complex64::new(0.1, 0.1),
            upper: Complex64::new(2.0 * ctx.omega() - 0.1, 2.0 * ctx.omega_prime() - 0.1),
            points_per_axis: 11,
            pole_exclusion: ctx.pole_exclusion(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let extents = self.upper - self.lower;
        if !(extents.re > 0.0 && extents.im > 0.0) {
            return Err(Error::Domain(format!(
                "grid corners {} and {} do not span a rectangle",
                self.lower, self.upper
            )));
        }
        if self.points_per_axis == 0 {
            return Err(Error::Domain(
                "grid needs at least one point per axis".into(),
            ));
        }
        if !(self.pole_exclusion > 0.0) {
            return Err(Error::Domain(format!(
                "pole exclusion must be positive, got {}",
                self.pole_exclusion
            )));
        }
        Ok(())
    }

    fn axis(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        let step = if n > 1 {
            (hi - lo) / (n - 1) as f64
        } else {
            0.0
        };
        (0..n).map(move |j| lo + step * j as f64)
    }

    /// Real parts of the sample, left to right.
    pub fn xs(&self) -> impl Iterator<Item = f64> {
        Self::axis(self.lower.re, self.upper.re, self.points_per_axis)
    }

    /// All sample points, row by row from the bottom.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        Self::axis(self.lower.im, self.upper.im, self.points_per_axis)
            .flat_map(move |y| self.xs().map(move |x| Complex64::new(x, y)))
    }

    /// The mirror image of this grid in the real axis.
    pub fn conjugate(&self) -> Self {
        Self {
            lower: Complex64::new(self.lower.re, -self.upper.im),
            upper: Complex64::new(self.upper.re, -self.lower.im),
            ..*self
        }
    }
}

/// Maximum residual of each identity over a grid.
///
/// Each identity is written as terms summing to zero; its residual at a point is
/// `|sum| / max(1, max |term|)`, i.e. absolute while the terms are of order one
/// and relative near the poles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub kappa: f64,
    pub grid: GridSpec,
    pub points_evaluated: usize,
    pub points_skipped: usize,
    pub residuals: BTreeMap<String, f64>,
}

impl ResidualReport {
    pub fn new(kappa: f64, grid: GridSpec) -> Self {
        Self {
            kappa,
            grid,
            points_evaluated: 0,
            points_skipped: 0,
            residuals: BTreeMap::new(),
        }
    }

    /// Record `value` under `label`, keeping the maximum seen so far.
    pub fn record(&mut self, label: &str, value: f64) {
        let value = if value.is_nan() {
            f64::INFINITY
        } else {
            value.abs()
        };
        let slot = self.residuals.entry(label.to_owned()).or_insert(0.0);
        *slot = slot.max(value);
    }

    /// Record the normalised residual of a zero sum.
    pub fn record_terms(&mut self, label: &str, terms: &[Complex64]) {
        self.record(label, scaled_residual(terms));
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    /// Labels whose residual exceeds `tol`.
    pub fn failures(&self, tol: f64) -> Vec<String> {
        self.residuals
            .iter()
            .filter(|(_, &v)| !(v <= tol))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// `|sum t| / max(1, max |t|)`.
pub fn scaled_residual(terms: &[Complex64]) -> f64 {
    let sum: Complex64 = terms.iter().sum();
    let scale = terms.iter().map(|t| t.norm()).fold(1.0, f64::max);
    sum.norm() / scale
}

/// Evaluate every identity of the theory on `grid`, plus the agreement of the
/// Jacobi-form trio with the quadrature-and-inversion trio on the real segment
/// spanned by the grid's real parts.
pub fn identity_residuals(ctx: &ModulusContext, grid: &GridSpec) -> Result<ResidualReport> {
    grid.validate()?;
    let mut report = ResidualReport::new(ctx.kappa(), *grid);
    let kappa2 = ctx.kappa() * ctx.kappa();
    let lambda2 = ctx.lambda() * ctx.lambda();
    let one = Complex64::new(1.0, 0.0);
    let shift = i_omega_prime(ctx);
    let real_period = Complex64::new(2.0 * ctx.omega(), 0.0);
    let imag_period = Complex64::new(0.0, 2.0 * ctx.omega_prime());

    for z in grid.points() {
        let near_wp_pole =
            lattice_distance(z, real_period.re, imag_period.im) < grid.pole_exclusion;
        if near_wp_pole || pole_distance(ctx, z) < grid.pole_exclusion {
            report.points_skipped += 1;
            continue;
        }
        report.points_evaluated += 1;
        let v = values(ctx, z);
        let (d, c, s2) = (v.d, v.c, v.s2);
        let w = wp_unchecked(ctx, z);
        let w_shifted = wp_unchecked(ctx, z + shift);
        let w_prime = wp_prime_unchecked(ctx, z);
        let d_prime_chain = 0.5 * kappa2 * w_prime / ((w + THIRD) * (w + THIRD));

        report.record_terms(
            "wp_form_of_d",
            &[(d - 1.0) * (w + THIRD), (0.5 * kappa2).into()],
        );
        report.record_terms(
            "alternative_identification",
            &[d, (-THIRD).into(), 2.0 * w_shifted],
        );
        report.record_terms(
            "ode_d",
            &[
                d_prime_chain * d_prime_chain,
                -2.0 * (1.0 - d) * (d * d - lambda2),
            ],
        );
        report.record_terms("derivative_routes", &[d_prime_chain, -v.d_prime]);
        report.record_terms("kappa2_s2_plus_d2", &[kappa2 * s2, d * d, -one]);
        report.record_terms("c2_plus_s2", &[c * c, s2, -one]);
        report.record_terms("kappa2_c2", &[kappa2 * c * c, -d * d, lambda2.into()]);
        report.record_terms(
            "phi_prime_squared",
            &[v.c_prime * v.c_prime * (d + 1.0), -2.0 * d * d * s2],
        );
        report.record_terms(
            "psi_prime_squared",
            &[
                v.d_prime * v.d_prime * (d + 1.0),
                -2.0 * (d * d - lambda2) * kappa2 * s2,
            ],
        );
        report.record_terms(
            "wp_ode",
            &[
                w_prime * w_prime,
                -4.0 * w * w * w,
                ctx.g2() * w,
                ctx.g3().into(),
            ],
        );

        let real_shift = values(ctx, z + real_period);
        let imag_shift = values(ctx, z + imag_period);
        report.record_terms("d_period_real", &[real_shift.d, -d]);
        report.record_terms("d_period_imaginary", &[imag_shift.d, -d]);
        report.record_terms("c2_period_real", &[real_shift.c * real_shift.c, -c * c]);
        report.record_terms(
            "c2_period_imaginary",
            &[imag_shift.c * imag_shift.c, -c * c],
        );
        report.record_terms(
            "c_period_4omega",
            &[values(ctx, z + 2.0 * real_period).c, -c],
        );
        report.record_terms("d_even", &[values(ctx, -z).d, -d]);
        report.record_terms("d_conjugate", &[values(ctx, z.conj()).d, -d.conj()]);
    }

    let amplitude = Amplitude::new(ctx)?;
    for x in grid.xs() {
        let z = Complex64::new(x, 0.0);
        let v = values(ctx, z);
        let trio = amplitude.trio(x)?;
        let der = amplitude.derivatives(x)?;
        let d = trio.d;
        report.record_terms("real_axis_d", &[v.d, (-d).into()]);
        report.record_terms("real_axis_c", &[v.c, (-trio.c).into()]);
        report.record_terms("real_axis_s2", &[v.s2, (-trio.s * trio.s).into()]);
        report.record_terms(
            "real_axis_ode_d",
            &[
                (der.d_prime * der.d_prime).into(),
                (-2.0 * (1.0 - d) * (d * d - lambda2)).into(),
            ],
        );
        report.record_terms(
            "real_axis_phi_prime_squared",
            &[
                (der.phi_prime * der.phi_prime).into(),
                (-2.0 * d * d / (d + 1.0)).into(),
            ],
        );
        report.record_terms(
            "real_axis_psi_prime_squared",
            &[
                (der.psi_prime * der.psi_prime).into(),
                (-2.0 * (d * d - lambda2) / (d + 1.0)).into(),
            ],
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(kappa: f64) -> ModulusContext {
        ModulusContext::from_kappa(kappa).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn d_special_values() {
        let m = ctx(0.6);
        assert_eq!(d_complex(&m, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((d_complex(&m, c(m.omega(), 0.0)).unwrap() - 0.8).norm() < 1e-12);
        assert!((d_complex(&m, c(m.omega(), m.omega_prime())).unwrap() + 0.8).norm() < 1e-12);
    }

    #[test]
    fn d_near_pole() {
        for kappa in [0.2, 0.6, 0.9] {
            let m = ctx(kappa);
            let h = 3e-3;
            let v = h * h * d_complex(&m, c(h, m.omega_prime())).unwrap();
            assert!((v + 2.0).norm() < 1e-4, "kappa = {kappa}: {v}");
        }
        let m = ctx(0.6);
        assert!(matches!(
            d_complex(&m, c(1e-6, m.omega_prime())),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn c_values() {
        let m = ctx(0.6);
        assert_eq!(c_complex(&m, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let z = c(0.4, 0.7);
        let cv = c_complex(&m, z).unwrap();
        let d = d_complex(&m, z).unwrap();
        assert!((0.36 * cv * cv - (d * d - 0.64)).norm() <= 1e-10);
        let shifted = c_complex(&m, z + 4.0 * m.omega()).unwrap();
        assert!((shifted - cv).norm() <= 1e-9);
        // A half-shift of 2 omega flips the sign.
        let half = c_complex(&m, z + 2.0 * m.omega()).unwrap();
        assert!((half + cv).norm() <= 1e-9);
    }

    #[test]
    fn s2_values() {
        let m = ctx(0.6);
        assert_eq!(s_squared(&m, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((s_squared(&m, c(m.omega(), 0.0)).unwrap() - 1.0).norm() < 1e-12);
        let z = c(1.2, -0.9);
        let s2 = s_squared(&m, z).unwrap();
        let d = d_complex(&m, z).unwrap();
        assert!((0.36 * s2 + d * d - 1.0).norm() <= 1e-10);
    }

    #[test]
    fn pole_coefficient_is_minus_two() {
        for kappa in [0.3, 0.6] {
            let m = ctx(kappa);
            let coef = pole_coefficient(&m).unwrap();
            assert!((coef + 2.0).abs() <= 1e-4, "{coef}");
            let est = pole_coefficient_estimates(&m);
            assert!((est[0] - est[1]).abs() <= 0.01 * est[1].abs());
            assert!((est[1] - est[2]).abs() <= 0.01 * est[2].abs());
        }
    }

    #[test]
    fn zeros_kappa_point_six() {
        let m = ctx(0.6);
        let r = zero_report(&m);
        let z = r.zeros.z_plus;
        assert_eq!(z.re, m.omega());
        assert!(z.im > 0.0 && z.im < m.omega_prime());
        assert_eq!(r.zeros.z_minus, z.conj());
        assert!(r.d_at_zero.norm() <= 1e-8);
        assert!((r.wp_at_zero - (0.18 - THIRD)).norm() <= 1e-8);
        assert!((r.wp_at_shifted_zero - 1.0 / 6.0).norm() <= 1e-8);
        assert!((r.wp_prime_squared + 0.041_472).norm() <= 1e-7);
    }

    #[test]
    fn simple_zero_of_s2() {
        let m = ctx(0.6);
        let w = s2_simple_zero(&m);
        assert!((w.d + 1.0).norm() < 1e-10);
        assert!(w.s2.norm() <= 1e-9);
        // Analytically the derivative there has modulus 4 / kappa.
        assert!((w.s2_derivative.norm() - 4.0 / 0.6).abs() < 1e-6);
        assert!((w.wp_prime_squared - w.kappa6_over_16).norm() < 1e-10);
        assert!((w.kappa6_over_16 - 0.002_916).abs() < 1e-15);
    }

    #[test]
    fn grid_validation() {
        let lo = c(0.0, 0.0);
        assert!(GridSpec::new(lo, c(1.0, 1.0), 0, 1e-3).is_err());
        assert!(GridSpec::new(lo, c(-1.0, 1.0), 3, 1e-3).is_err());
        assert!(GridSpec::new(lo, c(1.0, 1.0), 3, 0.0).is_err());
        let g = GridSpec::new(lo, c(1.0, 2.0), 3, 1e-3).unwrap();
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], lo);
        assert_eq!(pts[8], c(1.0, 2.0));
    }

    #[test]
    fn residuals_fundamental_grid() {
        let m = ctx(0.6);
        let report = identity_residuals(&m, &GridSpec::fundamental(&m)).unwrap();
        assert_eq!(report.points_evaluated, 121);
        for (label, &v) in &report.residuals {
            assert!(v <= 1e-9, "{label}: {v}");
        }
        assert!(report.failures(1e-9).is_empty());
    }

    #[test]
    fn residuals_skip_poles() {
        let m = ctx(0.6);
        let grid = GridSpec::new(
            c(0.0, 0.0),
            c(2.0 * m.omega(), 2.0 * m.omega_prime()),
            3,
            1e-3,
        )
        .unwrap();
        let report = identity_residuals(&m, &grid).unwrap();
        // Corners and the two points congruent to i omega' are excluded.
        assert_eq!(report.points_skipped, 6);
        assert_eq!(report.points_evaluated, 3);
    }

    #[test]
    fn residuals_conjugate_grid() {
        let m = ctx(0.6);
        let grid = GridSpec::fundamental(&m);
        let a = identity_residuals(&m, &grid).unwrap();
        let b = identity_residuals(&m, &grid.conjugate()).unwrap();
        for (label, va) in &a.residuals {
            assert!((va - b.residuals[label]).abs() <= 1e-12, "{label}");
        }
    }

    #[test]
    fn report_records_nan_as_failure() {
        let m = ctx(0.5);
        let mut r = ResidualReport::new(0.5, GridSpec::fundamental(&m));
        r.record("x", f64::NAN);
        assert_eq!(r.failures(1.0), vec!["x".to_string()]);
    }
}
