//! One-dimensional parameter sweeps written as CSV.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use rayon::prelude::*;
use wpc_core::analytic_interf::{
    tau_star_dt_interference, throughput_dc_interference, throughput_dc_upper,
    throughput_dt_interference, throughput_dt_lower_interference,
};
use wpc_core::analytic_noise::{
    tau_star_dt_lower, tau_star_high_power, throughput_dc, throughput_dt, throughput_dt_lower,
};
use wpc_core::montecarlo;
use wpc_core::optimize::{grid_search, GridSearch};
use wpc_core::{Config, InterferenceParams, Mode, SystemParams, TimeSplit};

pub const HEADER: [&str; 5] = ["variable", "value", "estimator", "throughput", "std_error"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    Tau,
    PDb,
    PiDb,
    D1,
    D3,
    Alpha,
    N,
    M,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::Tau => "tau",
            Variable::PDb => "P_dB",
            Variable::PiDb => "PI_dB",
            Variable::D1 => "d1",
            Variable::D3 => "d3",
            Variable::Alpha => "alpha",
            Variable::N => "N",
            Variable::M => "m",
        }
    }

    fn is_count(self) -> bool {
        matches!(self, Variable::N | Variable::M)
    }

    fn needs_interferer(self) -> bool {
        matches!(self, Variable::PiDb | Variable::D3)
    }
}

impl FromStr for Variable {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tau" => Variable::Tau,
            "P_dB" => Variable::PDb,
            "PI_dB" => Variable::PiDb,
            "d1" => Variable::D1,
            "d3" => Variable::D3,
            "alpha" => Variable::Alpha,
            "N" => Variable::N,
            "m" => Variable::M,
            _ => bail!("unknown variable `{s}` (expected tau, P_dB, PI_dB, d1, d3, alpha, N or m)"),
        })
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `lo:hi:steps`, evenly spaced and inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Range {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        ensure!(
            lo.is_finite() && hi.is_finite(),
            "range ends must be finite"
        );
        ensure!(lo < hi, "range needs lo < hi, got {lo}:{hi}");
        ensure!(steps >= 2, "range needs at least 2 steps, got {steps}");
        Ok(Self { lo, hi, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / last
                }
            })
            .collect()
    }
}

impl FromStr for Range {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        ensure!(
            parts.len() == 3,
            "range must look like lo:hi:steps, got `{s}`"
        );
        let lo = parts[0]
            .trim()
            .parse()
            .with_context(|| format!("bad range start `{}`", parts[0]))?;
        let hi = parts[1]
            .trim()
            .parse()
            .with_context(|| format!("bad range end `{}`", parts[1]))?;
        let steps = parts[2]
            .trim()
            .parse()
            .with_context(|| format!("bad step count `{}`", parts[2]))?;
        Range::new(lo, hi, steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Noise,
    Interference,
}

impl FromStr for Scenario {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noise" => Ok(Scenario::Noise),
            "interf" | "interference" => Ok(Scenario::Interference),
            _ => bail!("unknown scenario `{s}` (expected noise or interf)"),
        }
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "dc" => Ok(Mode::DelayIntolerant),
        "dt" => Ok(Mode::DelayTolerant),
        _ => bail!("unknown mode `{s}` (expected dc or dt)"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Analytic,
    Mc,
    BoundLower,
    BoundUpper,
    /// Exact throughput at the closed-form approximate `τ*`.
    TauApprox,
}

impl Estimator {
    pub fn name(self) -> &'static str {
        match self {
            Estimator::Analytic => "analytic",
            Estimator::Mc => "mc",
            Estimator::BoundLower => "bound-lower",
            Estimator::BoundUpper => "bound-upper",
            Estimator::TauApprox => "tau-approx",
        }
    }

    fn available(self, mode: Mode, scenario: Scenario) -> bool {
        use Estimator::*;
        match (mode, scenario) {
            (_, _) if matches!(self, Analytic | Mc) => true,
            (Mode::DelayIntolerant, Scenario::Noise) => self == TauApprox,
            (Mode::DelayIntolerant, Scenario::Interference) => self == BoundUpper,
            (Mode::DelayTolerant, _) => matches!(self, BoundLower | TauApprox),
        }
    }
}

impl FromStr for Estimator {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "analytic" => Estimator::Analytic,
            "mc" => Estimator::Mc,
            "bound-lower" => Estimator::BoundLower,
            "bound-upper" => Estimator::BoundUpper,
            "tau-approx" => Estimator::TauApprox,
            _ => bail!(
                "unknown estimator `{s}` (expected analytic, mc, bound-lower, bound-upper or tau-approx)"
            ),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauChoice {
    Fixed(TimeSplit),
    /// Maximize over `τ` at every point.
    Optimal,
}

impl FromStr for TauChoice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "opt" {
            return Ok(TauChoice::Optimal);
        }
        let t: f64 = s
            .parse()
            .with_context(|| format!("bad tau `{s}` (a number or `opt`)"))?;
        Ok(TauChoice::Fixed(TimeSplit::new(t)?))
    }
}

/// Ties between distances that move together as the swept variable changes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    None,
    /// `d2 = total - d1` or `d4 = total - d3`, whichever the swept distance is.
    HoldSum(f64),
    /// `d2 = total - d1` and `d3 = sqrt(d2² + d4² - 2 d2 d4 cos θ)`, with
    /// `d4` taken from the fixed parameters.
    Triangle {
        total: f64,
        theta: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: Variable,
    pub range: Range,
    pub fixed: Config,
    pub mode: Mode,
    pub scenario: Scenario,
    pub estimator: Estimator,
    pub tau: TauChoice,
    pub coupling: Coupling,
    pub trials: u64,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.estimator.available(self.mode, self.scenario),
            "estimator `{}` is not available for this mode and scenario",
            self.estimator.name()
        );
        if self.scenario == Scenario::Noise && self.variable.needs_interferer() {
            bail!(
                "`{}` can only be swept in the interf scenario",
                self.variable
            );
        }
        if self.scenario == Scenario::Interference
            && self.fixed.interference.is_none()
            && self.variable != Variable::PiDb
        {
            bail!("the interf scenario needs PI_dB in the config");
        }
        if self.variable == Variable::Tau {
            ensure!(
                self.range.lo > 0.0 && self.range.hi < 1.0,
                "tau must stay inside (0, 1)"
            );
            ensure!(
                self.estimator != Estimator::TauApprox,
                "tau-approx picks its own tau"
            );
        }
        if self.variable.is_count() {
            for v in self.range.values() {
                ensure!(
                    v >= 1.0 && v.fract() == 0.0,
                    "{} must take positive integer values, got {v}",
                    self.variable
                );
            }
        }
        match self.coupling {
            Coupling::None => {}
            Coupling::HoldSum(total) => {
                ensure!(
                    matches!(self.variable, Variable::D1 | Variable::D3),
                    "a held sum needs d1 or d3 as the variable"
                );
                ensure!(
                    self.range.hi < total,
                    "the held sum must exceed every swept distance"
                );
            }
            Coupling::Triangle { total, .. } => {
                ensure!(
                    self.variable == Variable::D1,
                    "the triangle geometry sweeps d1"
                );
                ensure!(self.range.hi < total, "d1 + d2 must exceed every swept d1");
            }
        }
        if self.estimator == Estimator::Mc {
            ensure!(
                self.trials >= montecarlo::MIN_TRIALS,
                "mc needs at least {} trials",
                montecarlo::MIN_TRIALS
            );
        }
        for v in self.range.values() {
            self.point(v)?;
        }
        Ok(())
    }

    /// Parameters and time split at sweep value `v`.
    pub fn point(&self, v: f64) -> Result<(SystemParams, Option<InterferenceParams>, TauChoice)> {
        let mut p = self.fixed.system;
        let mut i = match self.scenario {
            Scenario::Noise => None,
            Scenario::Interference => Some(self.fixed.interference.unwrap_or(InterferenceParams {
                pi_db: 0.0,
                d3: 10.0,
                d4: 10.0,
            })),
        };
        let mut tau = self.tau;
        match self.variable {
            Variable::Tau => tau = TauChoice::Fixed(TimeSplit::new(v)?),
            Variable::PDb => p.p_db = v,
            Variable::PiDb => i.as_mut().expect("interf scenario").pi_db = v,
            Variable::D1 => p.d1 = v,
            Variable::D3 => i.as_mut().expect("interf scenario").d3 = v,
            Variable::Alpha => p.alpha = v,
            Variable::N => p.n_antennas = v as u32,
            Variable::M => p.nakagami_m = v as u32,
        }
        match self.coupling {
            Coupling::None => {}
            Coupling::HoldSum(total) => match self.variable {
                Variable::D1 => p.d2 = total - v,
                _ => i.as_mut().expect("interf scenario").d4 = total - v,
            },
            Coupling::Triangle { total, theta } => {
                p.d2 = total - v;
                if let Some(i) = i.as_mut() {
                    i.d3 = (p.d2 * p.d2 + i.d4 * i.d4 - 2.0 * p.d2 * i.d4 * theta.cos()).sqrt();
                }
            }
        }
        p.validate()?;
        if let Some(i) = &i {
            i.validate()?;
        }
        Ok((p, i, tau))
    }
}

/// One sweep point. A failed evaluation keeps its row with `NaN` values and
/// the error message.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub value: f64,
    pub throughput: f64,
    pub std_error: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputCurve {
    pub variable: Variable,
    pub estimator: Estimator,
    pub rows: Vec<Row>,
}

/// Shortest round-trip decimal form, with an exponent for very small or
/// large magnitudes. Independent of locale.
pub(crate) fn number(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

pub(crate) fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

impl ThroughputCurve {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv_writer(w);
        out.write_record(HEADER)?;
        for r in &self.rows {
            out.write_record([
                self.variable.name(),
                &number(r.value),
                self.estimator.name(),
                &number(r.throughput),
                &number(r.std_error),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf)?)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.error.is_some())
    }
}

pub(crate) fn exact(
    mode: Mode,
    tau: TimeSplit,
    p: &SystemParams,
    i: Option<&InterferenceParams>,
) -> wpc_core::Result<f64> {
    Ok(match (mode, i) {
        (Mode::DelayIntolerant, None) => throughput_dc(tau, p)?.value,
        (Mode::DelayTolerant, None) => throughput_dt(tau, p)?.value,
        (Mode::DelayIntolerant, Some(i)) => throughput_dc_interference(tau, p, i)?.value,
        (Mode::DelayTolerant, Some(i)) => throughput_dt_interference(tau, p, i)?.value,
    })
}

fn bound(
    mode: Mode,
    tau: TimeSplit,
    p: &SystemParams,
    i: Option<&InterferenceParams>,
) -> wpc_core::Result<f64> {
    Ok(match (mode, i) {
        (Mode::DelayTolerant, None) => throughput_dt_lower(tau, p)?.value,
        (Mode::DelayTolerant, Some(i)) => throughput_dt_lower_interference(tau, p, i)?.value,
        (Mode::DelayIntolerant, Some(i)) => throughput_dc_upper(tau, p, i)?.value,
        (Mode::DelayIntolerant, None) => unreachable!("rejected by validation"),
    })
}

/// Closed-form approximate `τ*` for the mode and scenario.
pub(crate) fn approximate_tau(
    mode: Mode,
    p: &SystemParams,
    i: Option<&InterferenceParams>,
) -> wpc_core::Result<TimeSplit> {
    Ok(match (mode, i) {
        (Mode::DelayIntolerant, None) => tau_star_high_power(p)?.tau_star,
        (Mode::DelayTolerant, None) => tau_star_dt_lower(p)?.tau_star,
        (Mode::DelayTolerant, Some(i)) => tau_star_dt_interference(p, i)?.tau_star,
        (Mode::DelayIntolerant, Some(_)) => unreachable!("rejected by validation"),
    })
}

pub(crate) fn best_tau<F>(f: F) -> wpc_core::Result<(TimeSplit, f64)>
where
    F: FnMut(f64) -> wpc_core::Result<f64>,
{
    let search = GridSearch {
        points: 256,
        ..GridSearch::default()
    };
    let r = grid_search(f, &search)?;
    Ok((r.tau_star, r.objective_value))
}

fn simulate(
    mode: Mode,
    tau: TimeSplit,
    p: &SystemParams,
    i: Option<&InterferenceParams>,
    trials: u64,
    seed: u64,
) -> wpc_core::Result<(f64, f64)> {
    let keep = 1.0 - tau.value();
    Ok(match mode {
        Mode::DelayIntolerant => {
            let e = match i {
                None => montecarlo::estimate_outage_noise(tau, p, trials, seed)?,
                Some(i) => montecarlo::estimate_outage_interf(tau, p, i, trials, seed)?,
            };
            (p.rate * keep * (1.0 - e.mean), p.rate * keep * e.std_error)
        }
        Mode::DelayTolerant => {
            let e = match i {
                None => montecarlo::estimate_capacity_noise(tau, p, trials, seed)?,
                Some(i) => montecarlo::estimate_capacity_interf(tau, p, i, trials, seed)?,
            };
            (keep * e.mean, keep * e.std_error)
        }
    })
}

fn evaluate(spec: &SweepSpec, v: f64) -> Result<(f64, f64)> {
    let (p, i, tau) = spec.point(v)?;
    let i = i.as_ref();
    let mode = spec.mode;
    let value = match (spec.estimator, tau) {
        (Estimator::Analytic, TauChoice::Fixed(t)) => (exact(mode, t, &p, i)?, 0.0),
        (Estimator::Analytic, TauChoice::Optimal) => {
            (best_tau(|t| exact(mode, TimeSplit::new(t)?, &p, i))?.1, 0.0)
        }
        (Estimator::BoundLower | Estimator::BoundUpper, TauChoice::Fixed(t)) => {
            (bound(mode, t, &p, i)?, 0.0)
        }
        (Estimator::BoundLower | Estimator::BoundUpper, TauChoice::Optimal) => {
            (best_tau(|t| bound(mode, TimeSplit::new(t)?, &p, i))?.1, 0.0)
        }
        (Estimator::Mc, TauChoice::Fixed(t)) => simulate(mode, t, &p, i, spec.trials, spec.seed)?,
        (Estimator::Mc, TauChoice::Optimal) => {
            // τ* comes from the exact expression; simulation only evaluates it
            let (t, _) = best_tau(|t| exact(mode, TimeSplit::new(t)?, &p, i))?;
            simulate(mode, t, &p, i, spec.trials, spec.seed)?
        }
        (Estimator::TauApprox, _) => (exact(mode, approximate_tau(mode, &p, i)?, &p, i)?, 0.0),
    };
    Ok(value)
}

/// Evaluates every point of the sweep. Points run concurrently; rows keep
/// sweep order.
pub fn run_sweep(spec: &SweepSpec) -> Result<ThroughputCurve> {
    spec.validate()?;
    let rows = spec
        .range
        .values()
        .into_par_iter()
        .map(|v| match evaluate(spec, v) {
            Ok((throughput, std_error)) => Row {
                value: v,
                throughput,
                std_error,
                error: None,
            },
            Err(e) => Row {
                value: v,
                throughput: f64::NAN,
                std_error: f64::NAN,
                error: Some(format!("{e:#}")),
            },
        })
        .collect();
    Ok(ThroughputCurve {
        variable: spec.variable,
        estimator: spec.estimator,
        rows,
    })
}
