//! Sweeps, optimizer comparisons, figure presets and simulation checks
//! behind the `wpc` binary.

pub mod figures;
pub mod optimize;
pub mod sweep;
pub mod verify;

pub use optimize::{compare_methods, run_optimize, MethodRow, OptimizeSpec, OptimizeTable};
pub use sweep::{
    parse_mode, run_sweep, Coupling, Estimator, Range, Row, Scenario, SweepSpec, TauChoice,
    ThroughputCurve, Variable,
};
