//! Scalar kernels shared by every other module: the arithmetic-geometric mean,
//! adaptive Gauss-Kronrod quadrature and a safeguarded Newton/bisection root finder.

use crate::error::{Error, Result};

/// Stopping rule for the iterative kernels.
///
/// A computation is considered converged once its error indicator falls below
/// `max(abs, rel * scale)`, where `scale` is the magnitude of the quantity being
/// computed. `max_iterations` caps AGM steps and root-finder steps; quadrature
/// uses [`Tolerance::max_depth`] as its bisection depth limit instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_iterations: usize,
    pub max_depth: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-12,
            rel: 1e-12,
            max_iterations: 64,
            max_depth: 40,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64, max_iterations: usize) -> Result<Self> {
        let tol = Self {
            abs,
            rel,
            max_iterations,
            ..Self::default()
        };
        tol.validate()?;
        Ok(tol)
    }

    /// Same tolerance with both thresholds replaced.
    pub fn with_thresholds(self, abs: f64, rel: f64) -> Self {
        Self { abs, rel, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |x: f64| x.is_finite() && x >= 0.0;
        if !finite_nonneg(self.abs) || !finite_nonneg(self.rel) {
            return Err(Error::Domain(format!(
                "tolerances must be finite and non-negative (abs = {}, rel = {})",
                self.abs, self.rel
            )));
        }
        if self.abs == 0.0 && self.rel == 0.0 {
            return Err(Error::Domain(
                "at least one of abs, rel must be positive".into(),
            ));
        }
        if self.max_iterations == 0 || self.max_depth == 0 {
            return Err(Error::Domain("iteration limits must be at least 1".into()));
        }
        Ok(())
    }

    fn threshold(&self, scale: f64) -> f64 {
        self.abs.max(self.rel * scale.abs())
    }
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    agm_sequence(a, b, tol).map(|seq| {
        let &(a, b) = seq.last().expect("sequence holds the starting pair");
        0.5 * (a + b)
    })
}

/// The full AGM sequence `(a_n, b_n)`, starting with the inputs (ordered so that
/// `a_0 >= b_0`) and ending with the first pair that meets the convergence test
/// `|a_n - b_n| <= abs * (1 + |a_n|)`.
pub fn agm_sequence(a: f64, b: f64, tol: Tolerance) -> Result<Vec<(f64, f64)>> {
    tol.validate()?;
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "agm requires finite positive arguments, got ({a}, {b})"
        )));
    }
    let (mut a, mut b) = if a >= b { (a, b) } else { (b, a) };
    let mut seq = vec![(a, b)];
    // abs = 0 is legal for a tolerance; fall back on the relative threshold.
    let eps = if tol.abs > 0.0 { tol.abs } else { tol.rel };
    for _ in 0..tol.max_iterations {
        if (a - b).abs() <= eps * (1.0 + a.abs()) {
            return Ok(seq);
        }
        let next_a = 0.5 * (a + b);
        let next_b = (a * b).sqrt();
        // Once rounding stalls the pair, further steps cannot improve it.
        if next_a == a && next_b == b {
            return Ok(seq);
        }
        a = next_a;
        b = next_b.min(a);
        seq.push((a, b));
    }
    if (a - b).abs() <= eps * (1.0 + a.abs()) {
        return Ok(seq);
    }
    Err(Error::Iteration {
        what: "arithmetic-geometric mean",
        iterations: tol.max_iterations,
    })
}

// 15-point Kronrod nodes with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod 7/15 panel: returns (Kronrod estimate, |Kronrod - Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        // Gauss nodes sit at the odd Kronrod indices.
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]` by interval bisection.
///
/// A panel is accepted once its Gauss/Kronrod discrepancy drops below its
/// length-proportional share of `max(abs, rel * |I|)`, so the total error estimate
/// of the returned value stays below the requested tolerance.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<f64> {
    tol.validate()?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let (rough, _) = gk15(&f, lo, hi);
    if !rough.is_finite() {
        return Err(Error::Domain(format!(
            "integrand is not finite on [{lo}, {hi}]"
        )));
    }
    let target = tol.threshold(rough);
    let width = hi - lo;
    let mut total = 0.0;
    // Depth-first stack of (left, right, depth).
    let mut stack = vec![(lo, hi, 0usize)];
    while let Some((l, r, depth)) = stack.pop() {
        let (value, err) = gk15(&f, l, r);
        let share = target * (r - l) / width;
        if err <= share || err <= 50.0 * f64::EPSILON * value.abs() {
            total += value;
            continue;
        }
        if depth >= tol.max_depth {
            return Err(Error::Accuracy { a: l, b: r, depth });
        }
        let mid = 0.5 * (l + r);
        stack.push((mid, r, depth + 1));
        stack.push((l, mid, depth + 1));
    }
    Ok(sign * total)
}

/// Root of a function with a sign change on `bracket`, by Newton steps (when a
/// derivative is supplied) safeguarded by bisection. Starts from the midpoint.
pub fn solve_monotone<F>(
    f: F,
    fprime: Option<&dyn Fn(f64) -> f64>,
    bracket: (f64, f64),
    tol: Tolerance,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let seed = 0.5 * (bracket.0 + bracket.1);
    solve_monotone_from(f, fprime, bracket, seed, tol)
}

/// As [`solve_monotone`], starting the iteration at `seed` (clamped into the bracket).
///
/// Stops once `|f(x)| <= max(abs, rel * max(|f(lo)|, |f(hi)|))` or the bracket has
/// shrunk to a few ulps around `x`.
pub fn solve_monotone_from<F>(
    f: F,
    fprime: Option<&dyn Fn(f64) -> f64>,
    bracket: (f64, f64),
    seed: f64,
    tol: Tolerance,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    tol.validate()?;
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 {
        bracket
    } else {
        (bracket.1, bracket.0)
    };
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket {
            a: lo,
            b: hi,
            fa: f_lo,
            fb: f_hi,
        });
    }
    let rising = f_hi > 0.0;
    let threshold = tol.threshold(f_lo.abs().max(f_hi.abs()));

    let mut x = if seed > lo && seed < hi {
        seed
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..tol.max_iterations {
        let fx = f(x);
        if fx.abs() <= threshold {
            return Ok(x);
        }
        if (fx > 0.0) == rising {
            hi = x;
        } else {
            lo = x;
        }
        if hi - lo <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            return Ok(x);
        }
        let newton = fprime.and_then(|df| {
            let slope = df(x);
            let step = x - fx / slope;
            (slope.is_finite() && slope != 0.0 && step > lo && step < hi).then_some(step)
        });
        x = newton.unwrap_or(0.5 * (lo + hi));
    }
    let fx = f(x);
    if fx.abs() <= threshold {
        return Ok(x);
    }
    Err(Error::Iteration {
        what: "safeguarded Newton root finder",
        iterations: tol.max_iterations,
    })
}
