use thiserror::Error;

/// Errors raised by the numerical kernels and the function layers built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("iteration did not converge within {iterations} steps: {what}")]
    Iteration {
        what: &'static str,
        iterations: usize,
    },

    #[error("quadrature tolerance not reached at refinement depth {depth} on [{a}, {b}]")]
    Accuracy { a: f64, b: f64, depth: usize },

    #[error("bracket [{a}, {b}] does not enclose a sign change (f(a) = {fa}, f(b) = {fb})")]
    Bracket { a: f64, b: f64, fa: f64, fb: f64 },

    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },

    #[error("argument {re} + {im}i lies within {radius} of a pole")]
    PoleProximity { re: f64, im: f64, radius: f64 },

    #[error("ill-conditioned evaluation: {0}")]
    Conditioning(String),
}

pub type Result<T> = std::result::Result<T, Error>;
