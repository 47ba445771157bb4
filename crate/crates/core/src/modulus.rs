//! Everything that depends on the modulus alone.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::{complementary, JacobiModulus};

/// The scalar data of the theory for one modulus `kappa`: the complementary
/// modulus `lambda`, the Jacobi modulus `k`, the Weierstrass invariants and
/// midpoint values, and the half periods `omega`, `omega'`.
///
/// Midpoint values follow the labelling `e1 > e3 > e2` with
/// `wp(omega) = e1`, `wp(omega + i omega') = e3`, `wp(i omega') = e2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusContext {
    kappa: f64,
    lambda: f64,
    k: f64,
    kprime: f64,
    g2: f64,
    g3: f64,
    e1: f64,
    e3: f64,
    e2: f64,
    omega: f64,
    omega_prime: f64,
    scale: f64,
    #[serde(skip)]
    jacobi: JacobiModulus,
}

impl ModulusContext {
    /// Context for `0 < kappa < 1`.
    pub fn from_kappa(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::Domain(format!(
                "modulus kappa must lie in (0, 1), got {kappa}"
            )));
        }
        let lambda = complementary(kappa);
        // k^2 = (1 - lambda)/(1 + lambda) = kappa^2/(1 + lambda)^2.
        let k = kappa / (1.0 + lambda);
        let kappa2 = kappa * kappa;
        let scale = (0.5 * (1.0 + lambda)).sqrt();
        let jacobi = JacobiModulus::new(k)?;
        Ok(Self {
            kappa,
            lambda,
            k,
            kprime: (2.0 * lambda / (1.0 + lambda)).sqrt(),
            g2: 4.0 / 3.0 - kappa2,
            g3: 8.0 / 27.0 - kappa2 / 3.0,
            e1: 1.0 / 6.0 + 0.5 * lambda,
            e3: 1.0 / 6.0 - 0.5 * lambda,
            e2: -1.0 / 3.0,
            omega: jacobi.quarter_period() / scale,
            omega_prime: jacobi.quarter_period_prime() / scale,
            scale,
            jacobi,
        })
    }

    /// Context for the Jacobi modulus `0 < k < 1`, via `kappa = 2k / (1 + k^2)`.
    pub fn from_jacobi_k(k: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::Domain(format!(
                "Jacobi modulus k must lie in (0, 1), got {k}"
            )));
        }
        Self::from_kappa(2.0 * k / (1.0 + k * k))
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn kprime(&self) -> f64 {
        self.kprime
    }
    pub fn g2(&self) -> f64 {
        self.g2
    }
    pub fn g3(&self) -> f64 {
        self.g3
    }
    pub fn e1(&self) -> f64 {
        self.e1
    }
    pub fn e3(&self) -> f64 {
        self.e3
    }
    pub fn e2(&self) -> f64 {
        self.e2
    }
    /// Half the real period.
    pub fn omega(&self) -> f64 {
        self.omega
    }
    /// Half the imaginary period divided by `i`.
    pub fn omega_prime(&self) -> f64 {
        self.omega_prime
    }
    /// `sqrt(e1 - e2) = (1 + k^2)^(-1/2)`, the factor mapping `u` to the Jacobi argument.
    pub fn scale(&self) -> f64 {
        self.scale
    }
    pub fn jacobi(&self) -> &JacobiModulus {
        &self.jacobi
    }

    /// `g2^3 - 27 g3^2`.
    pub fn discriminant(&self) -> f64 {
        self.g2.powi(3) - 27.0 * self.g3 * self.g3
    }

    /// The same quantity in product form, `kappa^4 (1 - kappa^2)`.
    pub fn discriminant_product_form(&self) -> f64 {
        self.kappa.powi(4) * self.lambda * self.lambda
    }

    /// Residual of the midpoint cubic `4e^3 - g2 e - g3` at `e`.
    pub fn cubic(&self, e: f64) -> f64 {
        4.0 * e * e * e - self.g2 * e - self.g3
    }

    /// Default pole-exclusion radius for complex sweeps: `1e-3 * min(omega, omega')`.
    pub fn pole_exclusion(&self) -> f64 {
        1e-3 * self.omega.min(self.omega_prime)
    }
}

/// Free-function form of [`ModulusContext::from_kappa`].
pub fn context_from_kappa(kappa: f64) -> Result<ModulusContext> {
    ModulusContext::from_kappa(kappa)
}

/// Free-function form of [`ModulusContext::from_jacobi_k`].
pub fn context_from_jacobi_k(k: f64) -> Result<ModulusContext> {
    ModulusContext::from_jacobi_k(k)
}

/// Free-function form of [`ModulusContext::discriminant`].
pub fn discriminant(ctx: &ModulusContext) -> f64 {
    ctx.discriminant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kappa_point_six() {
        let ctx = ModulusContext::from_kappa(0.6).unwrap();
        assert!((ctx.lambda() - 0.8).abs() < 1e-15);
        assert!((ctx.k() - 1.0 / 3.0).abs() < 1e-15);
        assert!((ctx.g2() - 73.0 / 75.0).abs() < 1e-15);
        assert!((ctx.g3() - 119.0 / 675.0).abs() < 1e-15);
        assert!((ctx.e1() - 17.0 / 30.0).abs() < 1e-15);
        assert!((ctx.e3() + 7.0 / 30.0).abs() < 1e-15);
        assert_eq!(ctx.e2(), -1.0 / 3.0);
        // 30-digit values of sqrt(1 + k^2) K(k) and sqrt(1 + k^2) K'(k).
        assert!((ctx.omega() - 1.704_875_313_972_917_3).abs() < 1e-13);
        assert!((ctx.omega_prime() - 2.665_405_343_822_395_7).abs() < 1e-13);
        assert!((ctx.discriminant() - 0.082_944).abs() < 1e-14);
    }

    #[test]
    fn kappa_reciprocal_root_two() {
        let ctx = ModulusContext::from_kappa(0.5f64.sqrt()).unwrap();
        assert!((ctx.lambda() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((ctx.k() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn boundaries_rejected() {
        for bad in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(matches!(
                ModulusContext::from_kappa(bad),
                Err(Error::Domain(_))
            ));
        }
        assert!(ModulusContext::from_jacobi_k(1.0).is_err());
        assert!(ModulusContext::from_jacobi_k(0.0).is_err());
    }

    #[test]
    fn from_jacobi_k_third() {
        let ctx = ModulusContext::from_jacobi_k(1.0 / 3.0).unwrap();
        assert!((ctx.kappa() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn kappa_round_trip() {
        let k = ModulusContext::from_kappa(0.37).unwrap().k();
        let back = ModulusContext::from_jacobi_k(k).unwrap().kappa();
        assert!((back - 0.37).abs() <= 1e-14);
    }

    #[test]
    fn discriminant_two_forms() {
        for i in 1..=9 {
            let ctx = ModulusContext::from_kappa(i as f64 / 10.0).unwrap();
            assert!((ctx.discriminant() - ctx.discriminant_product_form()).abs() <= 1e-12);
            assert!(ctx.discriminant() > 0.0);
        }
    }

    #[test]
    fn serializes_named_fields() {
        let ctx = ModulusContext::from_kappa(0.6).unwrap();
        let json = serde_json::to_value(ctx).unwrap();
        let obj = json.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        for name in [
            "kappa",
            "lambda",
            "k",
            "kprime",
            "g2",
            "g3",
            "e1",
            "e3",
            "e2",
            "omega",
            "omega_prime",
            "scale",
        ] {
            assert!(keys.contains(&name), "missing {name}");
        }
        assert_eq!(obj.len(), 12);
    }

    proptest! {
        #[test]
        fn invariants(kappa in 1e-3f64..0.999) {
            let ctx = ModulusContext::from_kappa(kappa).unwrap();
            let (l, k) = (ctx.lambda(), ctx.k());
            prop_assert!((kappa * kappa + l * l - 1.0).abs() <= 1e-14);
            prop_assert!((k * k * (1.0 + l) - (1.0 - l)).abs() <= 1e-14);
            prop_assert!((kappa * kappa * (1.0 + k * k).powi(2) - 4.0 * k * k).abs() <= 1e-14);
            prop_assert!((ctx.kprime().powi(2) + k * k - 1.0).abs() <= 1e-14);
            prop_assert!(ctx.e1() > ctx.e3() && ctx.e3() > ctx.e2());
            prop_assert!((ctx.e1() + ctx.e2() + ctx.e3()).abs() <= 1e-15);
            for e in [ctx.e1(), ctx.e2(), ctx.e3()] {
                prop_assert!(ctx.cubic(e).abs() <= 1e-12);
            }
            prop_assert!((ctx.scale().powi(2) * (1.0 + k * k) - 1.0).abs() <= 1e-14);
            prop_assert!((ctx.scale().powi(2) - (ctx.e1() - ctx.e2())).abs() <= 1e-15);
            prop_assert!(ctx.omega() > 0.0 && ctx.omega_prime() > 0.0);
        }
    }
}
