//! Elliptic functions generated by the hypergeometric function
//! `F(1/4, 3/4; 1/2; z)`.
//!
//! Inverting `u = integral_0^phi F(1/4, 3/4; 1/2; kappa^2 sin^2 t) dt` defines an
//! amplitude `phi(u)`, a companion angle `psi` with `sin psi = kappa sin phi`, and
//! the trio `s = sin phi`, `c = cos phi`, `d = cos psi`. The crate evaluates the
//! trio on the real line by quadrature and inversion ([`amplitude`]), extends
//! `d`, `c` and `s^2` to the complex plane through classical Jacobi functions
//! ([`mock`]), relates them to their coperiodic Weierstrass function
//! ([`weierstrass`]), and checks every identity numerically ([`verify`]).
//!
//! ## Examples
//!
//! - **`context`** - derived constants for one modulus
//! - **`hypergeometric`** - the generating series against its closed form
//! - **`real_trio`** - amplitude, trio and derivatives on the real line
//! - **`classical_amplitude`** - classical sn, cn, dn by quadrature and by AGM
//! - **`weierstrass_two_routes`** - wp through sn against the Laurent oracle
//! - **`zeros`** - zeros and pole of d, simple zero of s^2
//! - **`residual_report`** - grid residuals and the full verification suite
//!
//! ```bash
//! cargo run --example real_trio
//! cargo run --release --example residual_report
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod cli;
pub mod error;
pub mod hypergeometric;
pub mod jacobi;
pub mod mock;
pub mod modulus;
pub mod numerics;
pub mod verify;
pub mod weierstrass;

pub use error::{Error, Result};
pub use modulus::ModulusContext;
pub use num_complex::Complex64;
pub use numerics::Tolerance;
