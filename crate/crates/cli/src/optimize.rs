//! Side-by-side `τ*` from every applicable method.

use std::io::Write;

use anyhow::{ensure, Result};
use rayon::prelude::*;
use wpc_core::analytic_interf::{tau_star_dt_interference, throughput_dc_upper};
use wpc_core::analytic_noise::{
    tau_star_dt_high_snr, tau_star_dt_lower, tau_star_high_power, tau_star_large_n,
};
use wpc_core::{Config, InterferenceParams, Mode, SystemParams, TimeSplit};

use crate::sweep::{
    best_tau, csv_writer, exact, number, Coupling, Range, Scenario, SweepSpec, Variable,
};
use crate::sweep::{Estimator, TauChoice};

#[derive(Debug, Clone, PartialEq)]
pub struct MethodRow {
    pub method: &'static str,
    pub tau_star: f64,
    /// Exact throughput at `tau_star`, so rows are directly comparable.
    pub objective: f64,
}

/// `τ*` from grid search on the exact throughput and from each closed-form
/// approximation that applies. A method that fails (for instance the
/// high-power formula at `Nm = 1`) is left out.
pub fn compare_methods(
    mode: Mode,
    p: &SystemParams,
    i: Option<&InterferenceParams>,
) -> Result<Vec<MethodRow>> {
    let (t, v) = best_tau(|t| exact(mode, TimeSplit::new(t)?, p, i))?;
    let mut rows = vec![MethodRow {
        method: "grid-exact",
        tau_star: t.value(),
        objective: v,
    }];
    let mut candidates: Vec<(&'static str, wpc_core::Result<TimeSplit>)> = Vec::new();
    match (mode, i) {
        (Mode::DelayIntolerant, None) => {
            candidates.push((
                "lemma1-high-power",
                tau_star_high_power(p).map(|r| r.tau_star),
            ));
            candidates.push(("lemma2-large-n", tau_star_large_n(p).map(|r| r.tau_star)));
        }
        (Mode::DelayTolerant, None) => {
            candidates.push((
                "lemma3-lower-bound",
                tau_star_dt_lower(p).map(|r| r.tau_star),
            ));
            candidates.push((
                "lemma4-high-snr",
                tau_star_dt_high_snr(p).map(|r| r.tau_star),
            ));
        }
        (Mode::DelayIntolerant, Some(i)) => {
            let upper = best_tau(|t| Ok(throughput_dc_upper(TimeSplit::new(t)?, p, i)?.value));
            candidates.push(("grid-upper-bound", upper.map(|(t, _)| t)));
        }
        (Mode::DelayTolerant, Some(i)) => {
            candidates.push((
                "lemma3-lower-bound",
                tau_star_dt_interference(p, i).map(|r| r.tau_star),
            ));
        }
    }
    for (method, tau) in candidates {
        if let Ok(tau) = tau {
            rows.push(MethodRow {
                method,
                tau_star: tau.value(),
                objective: exact(mode, tau, p, i)?,
            });
        }
    }
    Ok(rows)
}

/// Optimizer comparison at fixed parameters, or along a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeSpec {
    pub fixed: Config,
    pub mode: Mode,
    pub scenario: Scenario,
    pub sweep: Option<(Variable, Range, Coupling)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeTable {
    pub variable: Option<Variable>,
    /// `(sweep value, rows)`; the value is `NaN` without a sweep.
    pub points: Vec<(f64, Vec<MethodRow>)>,
}

impl OptimizeTable {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv_writer(w);
        match self.variable {
            Some(var) => {
                out.write_record(["variable", "value", "method", "tau_star", "objective"])?;
                for (v, rows) in &self.points {
                    for r in rows {
                        out.write_record([
                            var.name(),
                            &number(*v),
                            r.method,
                            &number(r.tau_star),
                            &number(r.objective),
                        ])?;
                    }
                }
            }
            None => {
                out.write_record(["method", "tau_star", "objective"])?;
                for r in self.points.iter().flat_map(|(_, rows)| rows) {
                    out.write_record([r.method, &number(r.tau_star), &number(r.objective)])?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf)?)
    }
}

pub fn run_optimize(spec: &OptimizeSpec) -> Result<OptimizeTable> {
    let Some((variable, range, coupling)) = spec.sweep else {
        let i = match spec.scenario {
            Scenario::Noise => None,
            Scenario::Interference => {
                ensure!(
                    spec.fixed.interference.is_some(),
                    "the interf scenario needs PI_dB in the config"
                );
                spec.fixed.interference
            }
        };
        let rows = compare_methods(spec.mode, &spec.fixed.system, i.as_ref())?;
        return Ok(OptimizeTable {
            variable: None,
            points: vec![(f64::NAN, rows)],
        });
    };
    ensure!(
        variable != Variable::Tau,
        "tau cannot be swept when optimizing it"
    );
    // reuse the sweep's parameter plumbing and validation
    let sweep = SweepSpec {
        variable,
        range,
        fixed: spec.fixed,
        mode: spec.mode,
        scenario: spec.scenario,
        estimator: Estimator::Analytic,
        tau: TauChoice::Optimal,
        coupling,
        trials: 0,
        seed: 0,
    };
    sweep.validate()?;
    let points = range
        .values()
        .into_par_iter()
        .map(|v| {
            let (p, i, _) = sweep.point(v)?;
            Ok((v, compare_methods(spec.mode, &p, i.as_ref())?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OptimizeTable {
        variable: Some(variable),
        points,
    })
}
