use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use wpc_cli::figures::{run_figure, FIGURES};
use wpc_cli::verify::run_verify;
use wpc_cli::{
    parse_mode, run_optimize, run_sweep, Coupling, Estimator, OptimizeSpec, Range, Scenario,
    SweepSpec, TauChoice, Variable,
};
use wpc_core::{Config, Mode};

#[derive(Parser)]
#[command(
    name = "wpc",
    version,
    about = "Throughput of wireless-powered links: sweeps, optimizers and simulation checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// key=value parameter file (N, m, eta, alpha, d1, d2, d3, d4, P_dB, PI_dB, Rc)
    #[arg(long)]
    config: Option<PathBuf>,
    /// dc (delay intolerant) or dt (delay tolerant)
    #[arg(long, default_value = "dc", value_parser = parse_mode)]
    mode: Mode,
    /// noise or interf
    #[arg(long, default_value = "noise")]
    scenario: Scenario,
    /// write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one parameter and write `variable,value,estimator,throughput,std_error`
    Sweep {
        #[command(flatten)]
        common: Common,
        /// tau, P_dB, PI_dB, d1, d3, alpha, N or m
        #[arg(long)]
        var: Variable,
        /// lo:hi:steps
        #[arg(long)]
        range: Range,
        /// analytic, mc, bound-lower, bound-upper or tau-approx
        #[arg(long, default_value = "analytic")]
        estimator: Estimator,
        /// fixed time split, or `opt` to maximize at every point
        #[arg(long, default_value = "0.5")]
        tau: TauChoice,
        /// keep d1 + d2 (or d3 + d4) equal to this while sweeping d1 (or d3)
        #[arg(long)]
        hold_sum: Option<f64>,
        /// with --hold-sum and a d1 sweep, place the interferer at this angle
        /// (radians) from the beacon-destination line, d4 fixed
        #[arg(long, requires = "hold_sum")]
        theta: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Report tau* from every applicable method side by side
    Optimize {
        #[command(flatten)]
        common: Common,
        #[arg(long, requires = "range")]
        var: Option<Variable>,
        #[arg(long, requires = "var")]
        range: Option<Range>,
        #[arg(long)]
        hold_sum: Option<f64>,
    },
    /// Compare analytic results with simulation over the standard grid
    Verify {
        /// number of grid points to use, from 1 to 12
        #[arg(long, default_value_t = 12)]
        grid_size: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the data behind a figure, one CSV per curve
    Figure {
        /// fig2a, fig2b, fig3a, fig3b, fig4a, fig4b, fig5, fig6, fig7, fig8 or fig11
        id: String,
        /// output directory
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn load_config(path: Option<&Path>) -> Result<Config> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Config::parse(&text)?)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn coupling(hold_sum: Option<f64>, theta: Option<f64>) -> Coupling {
    match (hold_sum, theta) {
        (Some(total), Some(theta)) => Coupling::Triangle { total, theta },
        (Some(total), None) => Coupling::HoldSum(total),
        _ => Coupling::None,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sweep {
            common,
            var,
            range,
            estimator,
            tau,
            hold_sum,
            theta,
            trials,
            seed,
        } => {
            let spec = SweepSpec {
                variable: var,
                range,
                fixed: load_config(common.config.as_deref())?,
                mode: common.mode,
                scenario: common.scenario,
                estimator,
                tau,
                coupling: coupling(hold_sum, theta),
                trials,
                seed,
            };
            let curve = run_sweep(&spec)?;
            for r in curve.failures() {
                eprintln!(
                    "warning: {} = {}: {}",
                    var,
                    r.value,
                    r.error.as_deref().unwrap_or("")
                );
            }
            emit(common.out.as_deref(), &curve.to_csv()?)?;
        }
        Command::Optimize {
            common,
            var,
            range,
            hold_sum,
        } => {
            let spec = OptimizeSpec {
                fixed: load_config(common.config.as_deref())?,
                mode: common.mode,
                scenario: common.scenario,
                sweep: var
                    .zip(range)
                    .map(|(v, r)| (v, r, coupling(hold_sum, None))),
            };
            emit(common.out.as_deref(), &run_optimize(&spec)?.to_csv()?)?;
        }
        Command::Verify {
            grid_size,
            trials,
            seed,
            out,
        } => {
            let (text, pass) = run_verify(grid_size, trials, seed)?;
            emit(out.as_deref(), &text)?;
            if !pass {
                eprintln!("verification failed");
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Figure {
            id,
            out,
            trials,
            seed,
        } => {
            if !FIGURES.contains(&id.as_str()) {
                anyhow::bail!(
                    "unknown figure `{id}` (expected one of {})",
                    FIGURES.join(", ")
                );
            }
            for w in run_figure(&id, &out, trials, seed)? {
                if w.failed_rows > 0 {
                    eprintln!(
                        "warning: {} has {} failed rows",
                        w.path.display(),
                        w.failed_rows
                    );
                }
                println!("{}", w.path.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("WPC_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .with_context(|| format!("WPC_THREADS must be a positive integer, got `{raw}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
