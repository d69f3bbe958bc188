use thiserror::Error;

/// Errors surfaced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of a special function or formula.
    #[error("{function}: argument {value} outside domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A physical or numerical parameter violates its invariant.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Adaptive quadrature ran out of subdivisions before meeting tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {subdivisions} subdivisions")]
    NonConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    /// The partial-fraction form of the V density is singular for these rates.
    #[error(
        "degenerate partial fractions: rho1/m = {gamma_rate_inv} is too close to rhoI = {exp_mean}"
    )]
    Degenerate { gamma_rate_inv: f64, exp_mean: f64 },

    /// Alternating closed-form sum lost too many significant digits.
    #[error("cancellation in {what}: {digits:.1} digits lost")]
    Cancellation { what: &'static str, digits: f64 },

    /// An integrand or objective returned NaN or infinity.
    #[error("non-finite value at {at}")]
    NonFinite { at: f64 },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
