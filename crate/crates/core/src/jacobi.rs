//! Classical Jacobi elliptic functions.
//!
//! Real arguments go through the descending Landen (AGM) recursion. Complex
//! arguments are assembled from real-argument values at modulus `k` and at the
//! complementary modulus `k'` with the addition theorem, so every transcendental
//! kernel stays real. Near the row of poles `Im z = K'` the shift `z -> z - iK'`
//! is applied first, which keeps all numerators and denominators bounded.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::amplitude::PeriodicIntegral;
use crate::error::{Error, Result};
use crate::hypergeometric::f_classical;
use crate::numerics::{agm, agm_sequence, Tolerance};

/// Default pole-exclusion radius, as a fraction of `min(K, K')`.
pub const POLE_EXCLUSION_FRACTION: f64 = 1e-3;

fn check_modulus(k: f64) -> Result<()> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!(
            "Jacobi modulus must satisfy 0 <= k < 1, got {k}"
        )));
    }
    Ok(())
}

/// `sqrt(1 - k^2)` without cancellation near `k = 1`.
pub fn complementary(k: f64) -> f64 {
    ((1.0 - k) * (1.0 + k)).sqrt()
}

/// Complete elliptic integral of the first kind, `K(k) = pi / (2 agm(1, k'))`.
pub fn complete_k(k: f64) -> Result<f64> {
    check_modulus(k)?;
    if k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(PI
        / (2.0
            * agm(
                1.0,
                complementary(k),
                Tolerance::default().with_thresholds(1e-16, 0.0),
            )?))
}

/// `(sn, cn, dn)` of a real argument.
pub fn sn_cn_dn_real(x: f64, k: f64) -> Result<(f64, f64, f64)> {
    check_modulus(k)?;
    Ok(landen(x, k, complementary(k)))
}

fn landen(x: f64, k: f64, kprime: f64) -> (f64, f64, f64) {
    if k == 0.0 {
        return (x.sin(), x.cos(), 1.0);
    }
    let sign = x.signum();
    let ax = x.abs();
    let seq = agm_sequence(
        1.0,
        kprime,
        Tolerance::default().with_thresholds(1e-16, 0.0),
    )
    .expect("1 and k' are positive");
    let n = seq.len() - 1;
    let (a_n, _) = seq[n];
    let mut phi = (1u64 << n) as f64 * a_n * ax;
    // Walk back up: c_j / a_j sin(phi_j) = sin(2 phi_{j-1} - phi_j).
    for j in (1..=n).rev() {
        let (a_prev, b_prev) = seq[j - 1];
        let c_j = 0.5 * (a_prev - b_prev);
        let a_j = seq[j].0;
        phi = 0.5 * (phi + (c_j / a_j * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (1.0 - k * k * sn * sn).sqrt();
    (sign * sn, cn, dn)
}

/// Complex Jacobi values stored as `sn = sn_num / den`, `cn = cn_num / den`,
/// `dn = dn_num / den` with every component bounded.
///
/// Poles of the triple are the zeros of `den`; zeros of `sn` are the zeros of
/// `sn_num`. Functions of `sn, cn, dn` can be formed from these without ever
/// dividing by something that vanishes at the evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiQuotients {
    pub sn_num: Complex64,
    pub cn_num: Complex64,
    pub dn_num: Complex64,
    pub den: Complex64,
}

impl JacobiQuotients {
    pub fn sn(&self) -> Complex64 {
        self.sn_num / self.den
    }
    pub fn cn(&self) -> Complex64 {
        self.cn_num / self.den
    }
    pub fn dn(&self) -> Complex64 {
        self.dn_num / self.den
    }
}

/// A Jacobi modulus together with its quarter periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiModulus {
    k: f64,
    kprime: f64,
    quarter: f64,
    quarter_prime: f64,
}

impl JacobiModulus {
    /// Requires `0 < k < 1` so that both quarter periods are finite.
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0) {
            return Err(Error::Domain(format!(
                "complex Jacobi evaluation requires 0 < k < 1, got {k}"
            )));
        }
        let kprime = complementary(k);
        Ok(Self {
            k,
            kprime,
            quarter: complete_k(k)?,
            quarter_prime: complete_k(kprime)?,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn kprime(&self) -> f64 {
        self.kprime
    }
    /// `K(k)`.
    pub fn quarter_period(&self) -> f64 {
        self.quarter
    }
    /// `K'(k) = K(k')`.
    pub fn quarter_period_prime(&self) -> f64 {
        self.quarter_prime
    }

    pub fn default_pole_radius(&self) -> f64 {
        POLE_EXCLUSION_FRACTION * self.quarter.min(self.quarter_prime)
    }

    pub fn real(&self, x: f64) -> (f64, f64, f64) {
        landen(x, self.k, self.kprime)
    }

    fn real_complementary(&self, y: f64) -> (f64, f64, f64) {
        landen(y, self.kprime, self.k)
    }

    /// Addition-theorem quotients for `|Im z|` within `K'/2` of the real axis,
    /// where the denominator `cn^2(y, k') + k^2 sn^2(x) sn^2(y, k')` stays away from 0.
    fn near_axis(&self, x: f64, y: f64) -> JacobiQuotients {
        let (s, c, d) = self.real(x);
        let (s1, c1, d1) = self.real_complementary(y);
        let k2 = self.k * self.k;
        JacobiQuotients {
            sn_num: Complex64::new(s * d1, c * d * s1 * c1),
            cn_num: Complex64::new(c * c1, -s * d * s1 * d1),
            dn_num: Complex64::new(d * c1 * d1, -k2 * s * c * s1),
            den: Complex64::new(c1 * c1 + k2 * s * s * s1 * s1, 0.0),
        }
    }

    /// Bounded quotient representation of `(sn, cn, dn)(z)`; never fails.
    pub fn quotients(&self, z: Complex64) -> JacobiQuotients {
        let kp = self.quarter_prime;
        let n = (z.im / (2.0 * kp)).round();
        let y = z.im - 2.0 * kp * n;
        // z -> z + 2iK' flips the signs of cn and dn.
        let flip = if n.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
        let mut q = if y.abs() <= 0.5 * kp {
            self.near_axis(z.re, y)
        } else {
            // sn(w +- iK') = 1/(k sn w), cn(w +- iK') = -+i dn w/(k sn w),
            // dn(w +- iK') = -+i cn w/sn w.
            let shift = if y > 0.0 { 1.0 } else { -1.0 };
            let base = self.near_axis(z.re, y - shift * kp);
            let minus_i = Complex64::new(0.0, -shift);
            JacobiQuotients {
                sn_num: base.den,
                cn_num: minus_i * base.dn_num,
                dn_num: minus_i * self.k * base.cn_num,
                den: self.k * base.sn_num,
            }
        };
        q.cn_num *= flip;
        q.dn_num *= flip;
        q
    }

    /// Distance from `z` to the nearest pole `iK' + 2mK + 2inK'` of the triple.
    pub fn pole_distance(&self, z: Complex64) -> f64 {
        lattice_distance(
            z - Complex64::new(0.0, self.quarter_prime),
            2.0 * self.quarter,
            2.0 * self.quarter_prime,
        )
    }

    /// `(sn, cn, dn)(z)`, refusing arguments within `radius` of a pole.
    pub fn sn_cn_dn_with_radius(
        &self,
        z: Complex64,
        radius: f64,
    ) -> Result<(Complex64, Complex64, Complex64)> {
        if self.pole_distance(z) < radius {
            return Err(Error::PoleProximity {
                re: z.re,
                im: z.im,
                radius,
            });
        }
        let q = self.quotients(z);
        Ok((q.sn(), q.cn(), q.dn()))
    }

    pub fn sn_cn_dn(&self, z: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
        self.sn_cn_dn_with_radius(z, self.default_pole_radius())
    }
}

/// Distance from `z` to the nearest point of the rectangular lattice generated
/// by the real period `px` and the imaginary period `i py`.
pub fn lattice_distance(z: Complex64, px: f64, py: f64) -> f64 {
    let rx = z.re - px * (z.re / px).round();
    let ry = z.im - py * (z.im / py).round();
    rx.hypot(ry)
}

/// `(sn, cn, dn)` of a complex argument with the default pole exclusion radius
/// `1e-3 * min(K, K')`.
pub fn sn_cn_dn_complex(z: Complex64, k: f64) -> Result<(Complex64, Complex64, Complex64)> {
    JacobiModulus::new(k)?.sn_cn_dn(z)
}

/// The classical amplitude `am(x)`: the inverse of
/// `x = integral_0^phi (1 - kappa^2 sin^2 t)^(-1/2) dt`, computed by quadrature and
/// Newton inversion rather than through the AGM.
pub fn classical_am(x: f64, kappa: f64) -> Result<f64> {
    ClassicalAmplitude::new(kappa)?.am(x)
}

type Integrand = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Quadrature-route amplitude for a fixed modulus, reusable across arguments.
pub struct ClassicalAmplitude {
    kappa: f64,
    integral: Option<PeriodicIntegral<Integrand>>,
}

impl ClassicalAmplitude {
    pub fn new(kappa: f64) -> Result<Self> {
        check_modulus(kappa)?;
        if kappa == 0.0 {
            return Ok(Self {
                kappa,
                integral: None,
            });
        }
        let k2 = kappa * kappa;
        let integrand: Integrand =
            Box::new(move |t: f64| f_classical(k2 * t.sin().powi(2)).expect("k^2 sin^2 < 1"));
        Ok(Self {
            kappa,
            integral: Some(PeriodicIntegral::new(integrand)?),
        })
    }

    pub fn am(&self, x: f64) -> Result<f64> {
        match &self.integral {
            None => Ok(x),
            Some(integral) => integral.invert(x),
        }
    }

    /// `dn` by definition (1): `d am / dx`, by a five-point central difference.
    pub fn dn_from_derivative(&self, x: f64) -> Result<f64> {
        const H: f64 = 1e-3;
        let f = |t: f64| self.am(t);
        Ok((f(x - 2.0 * H)? - 8.0 * f(x - H)? + 8.0 * f(x + H)? - f(x + 2.0 * H)?) / (12.0 * H))
    }

    /// `dn` by definition (2): `sqrt(1 - kappa^2 sin^2 am x)`.
    pub fn dn_from_amplitude(&self, x: f64) -> Result<f64> {
        let s = self.am(x)?.sin();
        Ok((1.0 - self.kappa * self.kappa * s * s).sqrt())
    }

    /// `(sin am, cos am, dn)` with `dn` from definition (2).
    pub fn sn_cn_dn(&self, x: f64) -> Result<(f64, f64, f64)> {
        let phi = self.am(x)?;
        let s = phi.sin();
        Ok((s, phi.cos(), (1.0 - self.kappa * self.kappa * s * s).sqrt()))
    }
}
