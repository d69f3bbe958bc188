//! Throughput analysis of a wireless-powered link: a multi-antenna power
//! beacon charges a source, which then transmits to a destination, with or
//! without a co-channel interferer.
//!
//! Analytic results live in [`analytic_noise`] and [`analytic_interf`],
//! the time-split optimizers in [`optimize`], and the sampling oracle in
//! [`montecarlo`]. [`verify`] compares the two over a standard grid.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic_interf;
pub mod analytic_noise;
pub mod config;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod optimize;
pub mod specfun;
mod sum;
pub mod verify;

pub use analytic_interf::VDistribution;
pub use analytic_noise::{Kind, Mode, ThroughputResult};
pub use config::Config;
pub use error::{Error, Result};
pub use model::{InterferenceParams, SystemParams, TimeSplit};
pub use montecarlo::McEstimate;
pub use optimize::{Method, OptResult};
