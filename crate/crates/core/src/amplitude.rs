//! The real-line construction.
//!
//! `u(phi)` is the integral of `F(1/4, 3/4; 1/2; kappa^2 sin^2 t)` from 0 to `phi`;
//! inverting it gives the amplitude `phi(u)`. The companion angle `psi` satisfies
//! `sin psi = kappa sin phi`, and the trio is `s = sin phi`, `c = cos phi`,
//! `d = cos psi`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeometric::f_quarter;
use crate::modulus::ModulusContext;
use crate::numerics::{integrate_adaptive, solve_monotone_from, Tolerance};

fn quadrature_tolerance() -> Tolerance {
    Tolerance::default().with_thresholds(1e-14, 1e-14)
}

/// `u(phi) = integral_0^phi f(t) dt` for an even, pi-periodic integrand with
/// `f >= 1`, together with its inverse.
///
/// The integral over a half period is computed once; arguments are reduced to
/// `phi = n pi + r` with `|r| <= pi/2` so every quadrature runs over a short interval.
pub struct PeriodicIntegral<F> {
    integrand: F,
    half_period: f64,
}

impl<F: Fn(f64) -> f64> PeriodicIntegral<F> {
    pub fn new(integrand: F) -> Result<Self> {
        let half_period = integrate_adaptive(&integrand, 0.0, FRAC_PI_2, quadrature_tolerance())?;
        Ok(Self {
            integrand,
            half_period,
        })
    }

    /// `u(pi/2)`.
    pub fn half_period(&self) -> f64 {
        self.half_period
    }

    pub fn integrand(&self, t: f64) -> f64 {
        (self.integrand)(t)
    }

    fn partial(&self, r: f64) -> Result<f64> {
        integrate_adaptive(&self.integrand, 0.0, r, quadrature_tolerance())
    }

    pub fn integral(&self, phi: f64) -> Result<f64> {
        if !phi.is_finite() {
            return Err(Error::Domain(format!(
                "amplitude must be finite, got {phi}"
            )));
        }
        let n = (phi / PI).round();
        let r = phi - n * PI;
        Ok(2.0 * n * self.half_period + self.partial(r)?)
    }

    /// The unique `phi` with `integral(phi) = u`.
    ///
    /// Since `f >= 1`, the reduced root satisfies `|r| <= min(|u_r|, pi/2)`, which
    /// gives a rigorous bracket for the Newton iteration seeded at `u_r`.
    pub fn invert(&self, u: f64) -> Result<f64> {
        if !u.is_finite() {
            return Err(Error::Domain(format!("argument must be finite, got {u}")));
        }
        let n = (u / (2.0 * self.half_period)).round();
        let target = u - 2.0 * n * self.half_period;
        if target == 0.0 {
            return Ok(n * PI);
        }
        let bound = target.abs().min(FRAC_PI_2);
        let bracket = if target > 0.0 {
            (0.0, bound)
        } else {
            (-bound, 0.0)
        };
        // Quadrature failures surface as NaN and then as a bracket/iteration error.
        let residual = |r: f64| self.partial(r).map_or(f64::NAN, |v| v - target);
        let slope = |r: f64| (self.integrand)(r);
        let tol = Tolerance::default().with_thresholds(1e-14, 0.0);
        let r = solve_monotone_from(residual, Some(&slope), bracket, target, tol)?;
        Ok(n * PI + r)
    }
}

type QuarterIntegrand = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A point on the real line with its amplitude and companion angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudePoint {
    pub u: f64,
    pub phi: f64,
    pub psi: f64,
}

/// The values `(s, c, d)` at a real argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Trio {
    pub s: f64,
    pub c: f64,
    pub d: f64,
}

/// Closed-form derivatives `phi'`, `psi'`, `d'` at a real argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Derivatives {
    pub phi_prime: f64,
    pub psi_prime: f64,
    pub d_prime: f64,
}

/// Real-line evaluator for a fixed modulus.
pub struct Amplitude {
    kappa: f64,
    integral: PeriodicIntegral<QuarterIntegrand>,
}

impl Amplitude {
    pub fn new(ctx: &ModulusContext) -> Result<Self> {
        let kappa2 = ctx.kappa() * ctx.kappa();
        let integrand: QuarterIntegrand =
            Box::new(move |t: f64| f_quarter(kappa2 * t.sin().powi(2)).expect("kappa^2 sin^2 < 1"));
        Ok(Self {
            kappa: ctx.kappa(),
            integral: PeriodicIntegral::new(integrand)?,
        })
    }

    /// `u(pi/2)`, the real half period obtained by quadrature.
    pub fn quarter_integral(&self) -> f64 {
        self.integral.half_period()
    }

    pub fn u_of_phi(&self, phi: f64) -> Result<f64> {
        self.integral.integral(phi)
    }

    pub fn phi_of_u(&self, u: f64) -> Result<f64> {
        self.integral.invert(u)
    }

    pub fn point(&self, u: f64) -> Result<AmplitudePoint> {
        let phi = self.phi_of_u(u)?;
        Ok(AmplitudePoint {
            u,
            phi,
            psi: self.psi_of_phi(phi),
        })
    }

    /// Principal arcsine; `|kappa sin phi| < 1` keeps it single valued.
    pub fn psi_of_phi(&self, phi: f64) -> f64 {
        (self.kappa * phi.sin()).asin()
    }

    pub fn trio(&self, u: f64) -> Result<Trio> {
        let p = self.point(u)?;
        Ok(Trio {
            s: p.phi.sin(),
            c: p.phi.cos(),
            d: p.psi.cos(),
        })
    }

    pub fn derivatives(&self, u: f64) -> Result<Derivatives> {
        let p = self.point(u)?;
        let half = (0.5 * p.psi).cos();
        Ok(Derivatives {
            phi_prime: p.psi.cos() / half,
            psi_prime: self.kappa * p.phi.cos() / half,
            d_prime: -2.0 * self.kappa * (0.5 * p.psi).sin() * p.phi.cos(),
        })
    }
}

pub fn u_of_phi(ctx: &ModulusContext, phi: f64) -> Result<f64> {
    Amplitude::new(ctx)?.u_of_phi(phi)
}

pub fn phi_of_u(ctx: &ModulusContext, u: f64) -> Result<f64> {
    Amplitude::new(ctx)?.phi_of_u(u)
}

pub fn trio_real(ctx: &ModulusContext, u: f64) -> Result<Trio> {
    Amplitude::new(ctx)?.trio(u)
}

pub fn derivatives_closed_form(ctx: &ModulusContext, u: f64) -> Result<Derivatives> {
    Amplitude::new(ctx)?.derivatives(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(kappa: f64) -> ModulusContext {
        ModulusContext::from_kappa(kappa).unwrap()
    }

    #[test]
    fn integral_examples() {
        let amp = Amplitude::new(&ctx(0.6)).unwrap();
        assert_eq!(amp.u_of_phi(0.0).unwrap(), 0.0);
        // Oracle: termwise integration of the hypergeometric series, 30 digits.
        assert!((amp.u_of_phi(0.3).unwrap() - 0.301_210_129_610_622_2).abs() < 1e-13);
        assert!((amp.u_of_phi(FRAC_PI_2).unwrap() - 1.704_875_313_972_917_3).abs() < 1e-12);
    }

    #[test]
    fn inversion_examples() {
        let c = ctx(0.6);
        let amp = Amplitude::new(&c).unwrap();
        assert_eq!(amp.phi_of_u(0.0).unwrap(), 0.0);
        assert!((amp.phi_of_u(c.omega()).unwrap() - FRAC_PI_2).abs() < 1e-12);
        assert!((amp.phi_of_u(0.301_210_129_610_622_2).unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn trio_examples() {
        let c = ctx(0.6);
        let amp = Amplitude::new(&c).unwrap();
        assert_eq!(
            amp.trio(0.0).unwrap(),
            Trio {
                s: 0.0,
                c: 1.0,
                d: 1.0
            }
        );
        let t = amp.trio(c.omega()).unwrap();
        assert!((t.s - 1.0).abs() < 1e-12);
        assert!(t.c.abs() < 1e-12);
        assert!((t.d - 0.8).abs() < 1e-12);

        let c3 = ctx(0.3);
        let t = trio_real(&c3, 0.77).unwrap();
        assert!((0.09 * t.s * t.s + t.d * t.d - 1.0).abs() <= 1e-12);
        assert!((t.s * t.s + t.c * t.c - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn derivative_examples() {
        let c = ctx(0.6);
        let amp = Amplitude::new(&c).unwrap();
        let d0 = amp.derivatives(0.0).unwrap();
        assert_eq!((d0.phi_prime, d0.psi_prime, d0.d_prime), (1.0, 0.6, -0.0));

        let h = 1e-5;
        let fd = (amp.trio(0.5 + h).unwrap().d - amp.trio(0.5 - h).unwrap().d) / (2.0 * h);
        assert!((fd - amp.derivatives(0.5).unwrap().d_prime).abs() <= 1e-8);

        let t = amp.trio(0.9).unwrap();
        let dp = amp.derivatives(0.9).unwrap().d_prime;
        let l2 = c.lambda() * c.lambda();
        assert!((dp * dp - 2.0 * (1.0 - t.d) * (t.d * t.d - l2)).abs() <= 1e-10);
    }

    #[test]
    fn large_arguments_reduce() {
        let c = ctx(0.9);
        let amp = Amplitude::new(&c).unwrap();
        let u = 40.0 * c.omega() + 0.3;
        let phi = amp.phi_of_u(u).unwrap();
        assert!((amp.u_of_phi(phi).unwrap() - u).abs() < 1e-11);
        assert!((amp.trio(u).unwrap().d - amp.trio(0.3).unwrap().d).abs() < 1e-10);
    }

    #[test]
    fn period_consistency() {
        let c = ctx(0.7);
        let amp = Amplitude::new(&c).unwrap();
        let full = amp.u_of_phi(PI).unwrap();
        assert!((full - 2.0 * amp.u_of_phi(FRAC_PI_2).unwrap()).abs() < 1e-12);
        for &u in &[-1.0, 0.2, 1.9] {
            let a = amp.trio(u).unwrap().d;
            let b = amp.trio(u + 2.0 * c.omega()).unwrap().d;
            assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn rejects_non_finite() {
        let amp = Amplitude::new(&ctx(0.5)).unwrap();
        assert!(amp.u_of_phi(f64::INFINITY).is_err());
        assert!(amp.phi_of_u(f64::NAN).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn symmetry_and_round_trip(kappa in 0.05f64..0.95, phi in -1.4f64..1.4) {
            let amp = Amplitude::new(&ctx(kappa)).unwrap();
            let u = amp.u_of_phi(phi).unwrap();
            prop_assert!((amp.u_of_phi(-phi).unwrap() + u).abs() <= 1e-14);
            prop_assert!((amp.phi_of_u(u).unwrap() - phi).abs() <= 1e-10);
            let (p, m) = (amp.trio(u).unwrap(), amp.trio(-u).unwrap());
            prop_assert!((p.d - m.d).abs() <= 1e-14);
            prop_assert!((p.s + m.s).abs() <= 1e-14);
            prop_assert!((p.c - m.c).abs() <= 1e-14);
        }

        #[test]
        fn monotone(kappa in 0.05f64..0.95, phi in -3.0f64..3.0, dphi in 1e-4f64..0.5) {
            let amp = Amplitude::new(&ctx(kappa)).unwrap();
            prop_assert!(amp.u_of_phi(phi + dphi).unwrap() > amp.u_of_phi(phi).unwrap());
            let u = phi;
            prop_assert!(amp.phi_of_u(u + dphi).unwrap() > amp.phi_of_u(u).unwrap());
        }
    }
}
