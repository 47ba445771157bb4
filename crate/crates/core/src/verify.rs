//! The full verification suite: every identity and special value, per modulus.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::amplitude::Amplitude;
use crate::error::Result;
use crate::jacobi::{lattice_distance, ClassicalAmplitude, JacobiModulus};
use crate::mock::{self, GridSpec, ResidualReport};
use crate::modulus::ModulusContext;
use crate::weierstrass::{self, wp_oracle};

/// Number of pseudo-random points in the two-route Weierstrass comparison.
pub const ORACLE_SAMPLES: usize = 25;
/// Number of amplitudes in the inversion round trip over `[-1.4, 1.4]`.
pub const ROUND_TRIP_SAMPLES: usize = 101;
/// Lower bound on `|d(s^2)/dx|` at the simple zero of `s^2`.
pub const SIMPLE_ZERO_SLOPE_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaOutcome {
    pub kappa: f64,
    pub passed: bool,
    pub failures: Vec<String>,
    pub error: Option<String>,
    pub report: Option<ResidualReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub tol: f64,
    pub passed: bool,
    pub results: Vec<KappaOutcome>,
}

/// Off-lattice sample points for the two-route comparison, drawn from the
/// period rectangle centred on the origin with a fixed seed.
pub fn oracle_sample_points(ctx: &ModulusContext, count: usize) -> Vec<Complex64> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0000 ^ ctx.kappa().to_bits());
    let (w, wp) = (ctx.omega(), ctx.omega_prime());
    let keep_out = 0.25 * w.min(wp);
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let z = Complex64::new(rng.gen_range(-w..w), rng.gen_range(-wp..wp));
        if lattice_distance(z, 2.0 * w, 2.0 * wp) >= keep_out {
            points.push(z);
        }
    }
    points
}

/// Run every check for one modulus. Residuals go into the returned report;
/// the slope lower bound of the simple-zero witness is reported through
/// `extra_failures` because it is a floor, not a residual.
pub fn kappa_suite(
    ctx: &ModulusContext,
    grid: &GridSpec,
    extra_failures: &mut Vec<String>,
) -> Result<ResidualReport> {
    let mut report = mock::identity_residuals(ctx, grid)?;
    let (w, wp) = (ctx.omega(), ctx.omega_prime());

    // Real line: quadrature against the AGM periods, and the inversion.
    let amplitude = Amplitude::new(ctx)?;
    report.record("period_bridge", amplitude.u_of_phi(FRAC_PI_2)? - w);
    report.record(
        "period_doubling",
        amplitude.u_of_phi(std::f64::consts::PI)? - 2.0 * amplitude.u_of_phi(FRAC_PI_2)?,
    );
    for j in 0..ROUND_TRIP_SAMPLES {
        let phi = -1.4 + 2.8 * j as f64 / (ROUND_TRIP_SAMPLES - 1) as f64;
        let back = amplitude.phi_of_u(amplitude.u_of_phi(phi)?)?;
        report.record("inversion_round_trip", back - phi);
    }

    // Invariants and midpoint values.
    report.record(
        "discriminant_forms",
        ctx.discriminant() - ctx.discriminant_product_form(),
    );
    for e in [ctx.e1(), ctx.e2(), ctx.e3()] {
        report.record("midpoint_cubic", ctx.cubic(e));
    }
    let half_periods = [
        ("wp_at_omega", Complex64::new(w, 0.0), ctx.e1()),
        (
            "wp_at_omega_plus_i_omega_prime",
            Complex64::new(w, wp),
            ctx.e3(),
        ),
        ("wp_at_i_omega_prime", Complex64::new(0.0, wp), ctx.e2()),
    ];
    for (label, z, expected) in half_periods {
        report.record(label, (weierstrass::wp(ctx, z)? - expected).norm());
        report.record(
            "wp_prime_at_midpoints",
            weierstrass::wp_prime(ctx, z)?.norm(),
        );
    }
    for z in oracle_sample_points(ctx, ORACLE_SAMPLES) {
        let primary = weierstrass::wp(ctx, z)?;
        let oracle = wp_oracle(ctx.g2(), ctx.g3(), z)?;
        report.record("wp_two_route", (primary - oracle).norm());
    }

    // Values and pole of d.
    report.record(
        "d_at_omega",
        (mock::d_complex(ctx, Complex64::new(w, 0.0))? - ctx.lambda()).norm(),
    );
    report.record(
        "d_at_omega_plus_i_omega_prime",
        (mock::d_complex(ctx, Complex64::new(w, wp))? + ctx.lambda()).norm(),
    );
    report.record("pole_coefficient", mock::pole_coefficient(ctx)? + 2.0);

    // Zeros of d.
    let zeros = mock::zero_report(ctx);
    report.record("zero_d", zeros.d_at_zero.norm());
    report.record(
        "zero_wp",
        (zeros.wp_at_zero - zeros.wp_at_zero_expected).norm(),
    );
    report.record(
        "zero_wp_shifted",
        (zeros.wp_at_shifted_zero - zeros.wp_at_shifted_zero_expected).norm(),
    );
    report.record(
        "zero_wp_prime_squared",
        (zeros.wp_prime_squared - zeros.wp_prime_squared_expected).norm(),
    );

    // The simple zero of s^2.
    let witness = mock::s2_simple_zero(ctx);
    report.record("s2_simple_zero_value", witness.s2.norm());
    report.record(
        "s2_simple_zero_wp_prime_squared",
        (witness.wp_prime_squared - witness.kappa6_over_16).norm(),
    );
    if !(witness.s2_derivative.norm() >= SIMPLE_ZERO_SLOPE_FLOOR) {
        extra_failures.push(format!(
            "s2_simple_zero_slope: |d(s^2)/dx| = {} below {SIMPLE_ZERO_SLOPE_FLOOR}",
            witness.s2_derivative.norm()
        ));
    }

    // Classical functions of modulus kappa: quadrature route against the AGM route.
    let classical = ClassicalAmplitude::new(ctx.kappa())?;
    let agm_route = JacobiModulus::new(ctx.kappa())?;
    let big_k = agm_route.quarter_period();
    for j in 0..=20 {
        let x = -2.0 * big_k + 4.0 * big_k * j as f64 / 20.0;
        let (s, c, d) = classical.sn_cn_dn(x)?;
        let (rs, rc, rd) = agm_route.real(x);
        let gap = (s - rs).abs().max((c - rc).abs()).max((d - rd).abs());
        report.record("classical_am_vs_agm", gap);
        report.record(
            "classical_dn_definitions",
            classical.dn_from_derivative(x)? - classical.dn_from_amplitude(x)?,
        );
    }
    Ok(report)
}

/// Run the suite for each modulus. A modulus passes when every residual is at
/// most `tol` and no construction step fails; the suite passes when every
/// modulus does (vacuously for an empty list).
pub fn run_verification_suite(kappas: &[f64], grid: Option<GridSpec>, tol: f64) -> SuiteOutcome {
    let results: Vec<KappaOutcome> = kappas
        .iter()
        .map(|&kappa| {
            let mut failures = Vec::new();
            let outcome = ModulusContext::from_kappa(kappa).and_then(|ctx| {
                let grid = grid.unwrap_or_else(|| GridSpec::fundamental(&ctx));
                kappa_suite(&ctx, &grid, &mut failures)
            });
            match outcome {
                Ok(report) => {
                    failures.extend(report.failures(tol));
                    KappaOutcome {
                        kappa,
                        passed: failures.is_empty(),
                        failures,
                        error: None,
                        report: Some(report),
                    }
                }
                Err(e) => KappaOutcome {
                    kappa,
                    passed: false,
                    failures,
                    error: Some(e.to_string()),
                    report: None,
                },
            }
        })
        .collect();
    SuiteOutcome {
        tol,
        passed: results.iter().all(|r| r.passed),
        results,
    }
}
