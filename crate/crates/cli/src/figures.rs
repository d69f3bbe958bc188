//! Preset sweeps, one per standard figure.
//!
//! Every preset starts from the reference parameters (R_c = 1, η = 0.4,
//! α = 2.5, m = 4, d1 = 8 m, d2 = 15 m). Values picked here rather than
//! taken from the reference set are marked `Assumed`. `fig8` is the
//! Nakagami-m comparison.
//!
//! Each preset writes one CSV per curve into the output directory.

use std::f64::consts::FRAC_PI_6;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use wpc_core::{Config, InterferenceParams, Mode, SystemParams, TimeSplit};

use crate::optimize::{run_optimize, OptimizeSpec};
use crate::sweep::{
    run_sweep, Coupling, Estimator, Range, Scenario, SweepSpec, TauChoice, Variable,
};

pub const FIGURES: [&str; 11] = [
    "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5", "fig6", "fig7", "fig8", "fig11",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Curve { file: String, spec: SweepSpec },
    Table { file: String, spec: OptimizeSpec },
}

/// Output file and number of rows that failed to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    pub path: PathBuf,
    pub failed_rows: usize,
}

struct Base {
    trials: u64,
    seed: u64,
}

impl Base {
    #[allow(clippy::too_many_arguments)]
    fn curve(
        &self,
        file: String,
        variable: Variable,
        range: Range,
        fixed: Config,
        mode: Mode,
        estimator: Estimator,
        tau: TauChoice,
        coupling: Coupling,
    ) -> Job {
        let scenario = if fixed.interference.is_some() {
            Scenario::Interference
        } else {
            Scenario::Noise
        };
        Job::Curve {
            file,
            spec: SweepSpec {
                variable,
                range,
                fixed,
                mode,
                scenario,
                estimator,
                tau,
                coupling,
                trials: self.trials,
                seed: self.seed,
            },
        }
    }
}

fn config(n: u32, interference: Option<InterferenceParams>) -> Config {
    Config {
        system: SystemParams::reference(n, 40.0),
        interference,
    }
}

fn interferer(pi_db: f64, d3: f64, d4: f64) -> Option<InterferenceParams> {
    Some(InterferenceParams { pi_db, d3, d4 })
}

fn fixed(t: f64) -> TauChoice {
    TauChoice::Fixed(TimeSplit::new(t).expect("preset tau in (0, 1)"))
}

fn range(lo: f64, hi: f64, steps: usize) -> Range {
    Range::new(lo, hi, steps).expect("preset range")
}

pub fn preset(id: &str, trials: u64, seed: u64) -> Result<Vec<Job>> {
    use Estimator::*;
    use Mode::{DelayIntolerant as Dc, DelayTolerant as Dt};
    let b = Base { trials, seed };
    let p_db = Variable::PDb;
    let mut jobs = Vec::new();
    match id {
        // Noise only, τ = 0.5. Assumed: N ∈ {1, 2, 4, 8}, P/N0 from 20 to 80 dB.
        "fig2a" => {
            for n in [1, 2, 4, 8] {
                for e in [Analytic, Mc] {
                    jobs.push(b.curve(
                        format!("fig2a_N{n}_{}.csv", e.name()),
                        p_db,
                        range(20.0, 80.0, 25),
                        config(n, None),
                        Dc,
                        e,
                        fixed(0.5),
                        Coupling::None,
                    ));
                }
            }
        }
        // Interference plus noise, τ = 0.4, d3 = d4 = 10 m.
        // Assumed: N ∈ {1, 4}, P_I/N0 ∈ {20, 40} dB, P/N0 from 20 to 100 dB.
        "fig2b" => {
            for n in [1, 4] {
                for pi in [20.0, 40.0] {
                    for e in [Analytic, BoundUpper, Mc] {
                        jobs.push(b.curve(
                            format!("fig2b_N{n}_PI{pi}_{}.csv", e.name()),
                            p_db,
                            range(20.0, 100.0, 33),
                            config(n, interferer(pi, 10.0, 10.0)),
                            Dc,
                            e,
                            fixed(0.4),
                            Coupling::None,
                        ));
                    }
                }
            }
        }
        // Noise only, τ ∈ {0.2, 0.5}, d3 = 10 m, d4 = 20 m (unused here).
        // Assumed: N ∈ {1, 4}, P/N0 from 20 to 90 dB.
        "fig3a" => {
            for n in [1, 4] {
                for t in [0.2, 0.5] {
                    for e in [Analytic, BoundLower, Mc] {
                        jobs.push(b.curve(
                            format!("fig3a_N{n}_tau{t}_{}.csv", e.name()),
                            p_db,
                            range(20.0, 90.0, 29),
                            config(n, None),
                            Dt,
                            e,
                            fixed(t),
                            Coupling::None,
                        ));
                    }
                }
            }
        }
        // Interference plus noise, τ = 0.5, P_I/N0 = 10 dB, d3 = 10 m, d4 = 20 m.
        // Assumed: N ∈ {1, 4}, P/N0 from 20 to 90 dB.
        "fig3b" => {
            for n in [1, 4] {
                for e in [Analytic, BoundLower, Mc] {
                    jobs.push(b.curve(
                        format!("fig3b_N{n}_{}.csv", e.name()),
                        p_db,
                        range(20.0, 90.0, 29),
                        config(n, interferer(10.0, 10.0, 20.0)),
                        Dt,
                        e,
                        fixed(0.5),
                        Coupling::None,
                    ));
                }
            }
        }
        // Exact versus approximate τ* for delay-intolerant noise-only links.
        // Assumed: fig4a N ∈ {2, 4, 8}, fig4b N ∈ {2, 8, 32}; P/N0 from 30 to 90 dB.
        "fig4a" | "fig4b" => {
            let ns: &[u32] = if id == "fig4a" {
                &[2, 4, 8]
            } else {
                &[2, 8, 32]
            };
            for &n in ns {
                jobs.push(Job::Table {
                    file: format!("{id}_N{n}.csv"),
                    spec: OptimizeSpec {
                        fixed: config(n, None),
                        mode: Dc,
                        scenario: Scenario::Noise,
                        sweep: Some((p_db, range(30.0, 90.0, 25), Coupling::None)),
                    },
                });
            }
        }
        // Delay tolerant, optimized τ, N = 2, d3 = 5 m, d4 = 15 m.
        // Assumed: P_I/N0 ∈ {10, 30} dB next to the noise-only curve, P/N0
        // from 0 to 60 dB.
        "fig5" => {
            for e in [Analytic, BoundLower] {
                jobs.push(b.curve(
                    format!("fig5_noise_{}.csv", e.name()),
                    p_db,
                    range(0.0, 60.0, 31),
                    config(2, None),
                    Dt,
                    e,
                    TauChoice::Optimal,
                    Coupling::None,
                ));
                for pi in [10.0, 30.0] {
                    jobs.push(b.curve(
                        format!("fig5_PI{pi}_{}.csv", e.name()),
                        p_db,
                        range(0.0, 60.0, 31),
                        config(2, interferer(pi, 5.0, 15.0)),
                        Dt,
                        e,
                        TauChoice::Optimal,
                        Coupling::None,
                    ));
                }
            }
        }
        // Delay tolerant, optimized τ, N = 2, P/N0 = P_I/N0 = 30 dB,
        // d3 + d4 = 20 m, α ∈ {2, 2.5, 3}. The noise-only reference does not
        // depend on d3 and is written as a sweep over α.
        "fig6" => {
            for alpha in [2.0, 2.5, 3.0] {
                let mut c = config(2, interferer(30.0, 10.0, 10.0));
                c.system.p_db = 30.0;
                c.system.alpha = alpha;
                jobs.push(b.curve(
                    format!("fig6_alpha{alpha}_analytic.csv"),
                    Variable::D3,
                    range(1.0, 19.0, 19),
                    c,
                    Dt,
                    Analytic,
                    TauChoice::Optimal,
                    Coupling::HoldSum(20.0),
                ));
            }
            let mut c = config(2, None);
            c.system.p_db = 30.0;
            jobs.push(b.curve(
                "fig6_noise_analytic.csv".into(),
                Variable::Alpha,
                range(2.0, 3.0, 3),
                c,
                Dt,
                Analytic,
                TauChoice::Optimal,
                Coupling::None,
            ));
        }
        // Delay tolerant, optimized τ, N = 2, P/N0 = 40 dB, d3 = 8 m,
        // d4 = 15 m, α ∈ {2, 2.5, 3}. Assumed: P_I/N0 from -10 to 80 dB.
        "fig7" => {
            for alpha in [2.0, 2.5, 3.0] {
                let mut c = config(2, interferer(0.0, 8.0, 15.0));
                c.system.alpha = alpha;
                jobs.push(b.curve(
                    format!("fig7_alpha{alpha}_analytic.csv"),
                    Variable::PiDb,
                    range(-10.0, 80.0, 46),
                    c,
                    Dt,
                    Analytic,
                    TauChoice::Optimal,
                    Coupling::None,
                ));
            }
            jobs.push(b.curve(
                "fig7_noise_analytic.csv".into(),
                Variable::Alpha,
                range(2.0, 3.0, 3),
                config(2, None),
                Dt,
                Analytic,
                TauChoice::Optimal,
                Coupling::None,
            ));
        }
        // Delay intolerant, τ = 0.4, N ∈ {1, 10}.
        // Assumed: m ∈ {1, 2, 4}, P/N0 from 20 to 80 dB.
        "fig8" => {
            for n in [1, 10] {
                for m in [1, 2, 4] {
                    for e in [Analytic, Mc] {
                        let mut c = config(n, None);
                        c.system.nakagami_m = m;
                        jobs.push(b.curve(
                            format!("fig8_N{n}_m{m}_{}.csv", e.name()),
                            p_db,
                            range(20.0, 80.0, 25),
                            c,
                            Dc,
                            e,
                            fixed(0.4),
                            Coupling::None,
                        ));
                    }
                }
            }
        }
        // Source position, optimized τ, N = 6, m = 4, d1 + d2 = 30 m,
        // d4 = 15 m, θ = π/6 with d3 from the law of cosines.
        // Assumed: delay tolerant, P/N0 = 40 dB, P_I/N0 ∈ {20, 40} dB.
        "fig11" => {
            jobs.push(b.curve(
                "fig11_noise_analytic.csv".into(),
                Variable::D1,
                range(1.0, 29.0, 29),
                config(6, None),
                Dt,
                Analytic,
                TauChoice::Optimal,
                Coupling::HoldSum(30.0),
            ));
            for pi in [20.0, 40.0] {
                jobs.push(b.curve(
                    format!("fig11_PI{pi}_analytic.csv"),
                    Variable::D1,
                    range(1.0, 29.0, 29),
                    config(6, interferer(pi, 15.0, 15.0)),
                    Dt,
                    Analytic,
                    TauChoice::Optimal,
                    Coupling::Triangle {
                        total: 30.0,
                        theta: FRAC_PI_6,
                    },
                ));
            }
        }
        _ => bail!(
            "unknown figure `{id}` (expected one of {})",
            FIGURES.join(", ")
        ),
    }
    Ok(jobs)
}

/// Runs every job of a preset, writing its CSV files into `dir`.
pub fn run_figure(id: &str, dir: &Path, trials: u64, seed: u64) -> Result<Vec<Written>> {
    let jobs = preset(id, trials, seed)?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::with_capacity(jobs.len());
    for job in jobs {
        let (file, text, failed_rows) = match job {
            Job::Curve { file, spec } => {
                let curve = run_sweep(&spec)?;
                let failed = curve.failures().count();
                (file, curve.to_csv()?, failed)
            }
            Job::Table { file, spec } => (file, run_optimize(&spec)?.to_csv()?, 0),
        };
        let path = dir.join(file);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        written.push(Written { path, failed_rows });
    }
    Ok(written)
}
