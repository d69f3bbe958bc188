//! Special functions and quadrature used by the throughput formulas.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod expint;
mod gamma;
mod lambert;
mod quadrature;

pub use bessel::{bessel_k, bessel_k_scaled, ln_bessel_k};
pub use expint::{expint_ei, expint_ei_scaled};
pub use gamma::{digamma, gamma, ln_gamma, EULER_GAMMA};
pub use lambert::{lambert_w0, lambert_w0_exp};
pub use quadrature::{integrate, integrate_semi_infinite, QuadratureSpec};
