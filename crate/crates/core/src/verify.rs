//! Analytic-versus-simulation comparison over the standard parameter grid.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::analytic_interf::{
    ergodic_capacity_interference, interference_lower_bound_gain, ln_moment_u, ln_moment_v,
    outage_interference, throughput_dc_upper, VDistribution,
};
use crate::analytic_noise::{ergodic_capacity, mean_ln_h2, outage_noise, throughput_dt_lower};
use crate::error::{Error, Result};
use crate::model::{derive_constants, InterferenceParams, SystemParams, TimeSplit};
use crate::montecarlo::{self, McEstimate};
use crate::optimize::objective_lemma3;

pub const MIN_VERIFY_TRIALS: u64 = 10_000;

/// Time split used at every grid point.
pub const GRID_TAU: f64 = 0.5;

/// Pass threshold in combined standard errors.
pub const Z_LIMIT: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub n_antennas: u32,
    pub nakagami_m: u32,
    pub p_db: f64,
}

impl GridPoint {
    pub fn params(&self) -> SystemParams {
        let mut p = SystemParams::reference(self.n_antennas, self.p_db);
        p.nakagami_m = self.nakagami_m;
        p
    }
}

/// The interferer used at every grid point.
pub fn grid_interferer() -> InterferenceParams {
    InterferenceParams {
        pi_db: 20.0,
        d3: 10.0,
        d4: 10.0,
    }
}

/// `N ∈ {1,2,4,8}` × `P/N0 ∈ {20,40,60}` dB, with `m` alternating between
/// 1 and 4 so that both fading severities meet every `N` and every power.
pub fn standard_grid() -> Vec<GridPoint> {
    let mut grid = Vec::with_capacity(12);
    for (i, &n) in [1u32, 2, 4, 8].iter().enumerate() {
        for (j, &p_db) in [20.0, 40.0, 60.0].iter().enumerate() {
            let nakagami_m = if (i + j) % 2 == 0 { 1 } else { 4 };
            grid.push(GridPoint {
                n_antennas: n,
                nakagami_m,
                p_db,
            });
        }
    }
    grid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// analytic value equals the simulated mean
    Equal,
    /// analytic value is a lower bound on the simulated mean
    Below,
    /// analytic value is an upper bound on the simulated mean
    Above,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Equal => "=",
            Relation::Below => "<=",
            Relation::Above => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub point: GridPoint,
    pub quantity: &'static str,
    pub relation: Relation,
    pub analytic: f64,
    pub simulated: McEstimate,
    /// Signed distance `(analytic - simulated)/se`.
    pub z: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub comparisons: Vec<Comparison>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.comparisons.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.comparisons.iter().filter(|c| !c.pass).count()
    }

    /// Fixed-format table, one line per comparison.
    pub fn to_text(&self) -> String {
        let mut out = String::from(
            "N  m  P_dB  quantity              rel  analytic         simulated        std_error        z          status\n",
        );
        for c in &self.comparisons {
            let _ = writeln!(
                out,
                "{:<2} {:<2} {:<5} {:<21} {:<4} {:<16.9e} {:<16.9e} {:<16.9e} {:<10.3e} {}",
                c.point.n_antennas,
                c.point.nakagami_m,
                c.point.p_db,
                c.quantity,
                c.relation.symbol(),
                c.analytic,
                c.simulated.mean,
                c.simulated.std_error,
                c.z,
                if c.pass { "PASS" } else { "FAIL" },
            );
        }
        let _ = writeln!(
            out,
            "{} comparisons, {} failed",
            self.comparisons.len(),
            self.failures()
        );
        out
    }
}

fn judge(
    point: GridPoint,
    quantity: &'static str,
    relation: Relation,
    analytic: f64,
    simulated: McEstimate,
    se_floor: f64,
) -> Comparison {
    let se = simulated.std_error.max(se_floor).max(f64::MIN_POSITIVE);
    let z = (analytic - simulated.mean) / se;
    let pass = match relation {
        Relation::Equal => z.abs() <= Z_LIMIT,
        Relation::Below => z <= Z_LIMIT,
        Relation::Above => z >= -Z_LIMIT,
    };
    Comparison {
        point,
        quantity,
        relation,
        analytic,
        simulated,
        z,
        pass,
    }
}

/// Binomial standard error at the analytic probability, used as a floor
/// when the sample happens to contain no (or only) outage events.
fn binomial_se(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

fn stream(seed: u64, point: usize, quantity: u64) -> u64 {
    seed.wrapping_add((point as u64 * 64 + quantity).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn verify_point(idx: usize, point: GridPoint, trials: u64, seed: u64) -> Result<Vec<Comparison>> {
    let p = point.params();
    let i = grid_interferer();
    let tau = TimeSplit::new(GRID_TAU)?;
    let k = derive_constants(&p, Some(&i))?;
    let b1 = k.b1.expect("interferer present");
    let s = |q| stream(seed, idx, q);
    let mut out = Vec::new();

    let a = outage_noise(tau, &p)?;
    let mc = montecarlo::estimate_outage_noise(tau, &p, trials, s(0))?;
    out.push(judge(
        point,
        "outage_noise",
        Relation::Equal,
        a,
        mc,
        binomial_se(a, trials),
    ));

    let a = ergodic_capacity(tau, &p)?;
    let mc = montecarlo::estimate_capacity_noise(tau, &p, trials, s(1))?;
    out.push(judge(point, "capacity_noise", Relation::Equal, a, mc, 0.0));
    let lower = throughput_dt_lower(tau, &p)?.value / (1.0 - tau.value());
    out.push(judge(
        point,
        "capacity_noise_lower",
        Relation::Below,
        lower,
        mc,
        0.0,
    ));

    let a = mean_ln_h2(&p)?;
    let mc = montecarlo::estimate_ln_h2(&p, trials, s(2))?;
    out.push(judge(point, "ln_h2", Relation::Equal, a, mc, 0.0));

    let a = outage_interference(tau, &p, &i)?;
    let mc = montecarlo::estimate_outage_interf(tau, &p, &i, trials, s(3))?;
    out.push(judge(
        point,
        "outage_interf",
        Relation::Equal,
        a,
        mc,
        binomial_se(a, trials),
    ));
    let upper = throughput_dc_upper(tau, &p, &i)?.value / (p.rate * (1.0 - tau.value()));
    let floor = binomial_se(a, trials);
    let success = McEstimate {
        mean: 1.0 - mc.mean,
        ..mc
    };
    out.push(judge(
        point,
        "success_interf_upper",
        Relation::Above,
        upper,
        success,
        floor,
    ));

    let a = ln_moment_u(b1)?;
    let mc = montecarlo::estimate_ln_u(b1, trials, s(4))?;
    out.push(judge(point, "ln_u", Relation::Equal, a, mc, 0.0));

    let a = ln_moment_v(&VDistribution::from_params(&p, &i)?)?;
    let mc = montecarlo::estimate_ln_v(&p, &i, trials, s(5))?;
    out.push(judge(point, "ln_v", Relation::Equal, a, mc, 0.0));

    let a = ergodic_capacity_interference(tau, &p, &i)?;
    let mc = montecarlo::estimate_capacity_interf(tau, &p, &i, trials, s(6))?;
    out.push(judge(point, "capacity_interf", Relation::Equal, a, mc, 0.0));
    let gain = interference_lower_bound_gain(&p, &i)?;
    let lower = objective_lemma3(gain, tau.value()) / (1.0 - tau.value()) / std::f64::consts::LN_2;
    out.push(judge(
        point,
        "capacity_interf_lower",
        Relation::Below,
        lower,
        mc,
        0.0,
    ));

    Ok(out)
}

/// Compares every analytic quantity with its simulated counterpart at each
/// point. Points run concurrently; the report keeps grid order.
pub fn run_verify(points: &[GridPoint], trials: u64, seed: u64) -> Result<VerifyReport> {
    if trials < MIN_VERIFY_TRIALS {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: trials as f64,
            reason: "verification needs at least 10000 trials",
        });
    }
    let rows: Vec<Vec<Comparison>> = points
        .par_iter()
        .enumerate()
        .map(|(idx, &pt)| verify_point(idx, pt, trials, seed))
        .collect::<Result<_>>()?;
    Ok(VerifyReport {
        comparisons: rows.into_iter().flatten().collect(),
    })
}
