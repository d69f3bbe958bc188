//! The `verify` command: analytic results against simulation.

use anyhow::{ensure, Result};
use wpc_core::verify::{self as core_verify, standard_grid, MIN_VERIFY_TRIALS};

/// Runs the first `grid_size` points of the standard grid and returns the
/// report text with the overall verdict.
pub fn run_verify(grid_size: usize, trials: u64, seed: u64) -> Result<(String, bool)> {
    let grid = standard_grid();
    ensure!(
        (1..=grid.len()).contains(&grid_size),
        "grid size must be between 1 and {}",
        grid.len()
    );
    ensure!(
        trials >= MIN_VERIFY_TRIALS,
        "verify needs at least {MIN_VERIFY_TRIALS} trials, got {trials}"
    );
    let report = core_verify::run_verify(&grid[..grid_size], trials, seed)?;
    Ok((report.to_text(), report.all_pass()))
}
