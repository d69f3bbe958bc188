//! Brute-force estimates from sampled channels.
//!
//! Trials run in fixed-size chunks, each with its own ChaCha stream keyed by
//! `(seed, chunk index)`. Chunk statistics are merged in index order, so an
//! estimate depends only on the seed, the trial count and the parameters,
//! never on how many threads ran it.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::analytic_interf::VDistribution;
use crate::error::{Error, Result};
use crate::model::{
    derive_constants, sinr_interference, snr_noise, ChannelDraw, DerivedConstants,
    InterferenceParams, SystemParams, TimeSplit,
};

pub const MIN_TRIALS: u64 = 1_000;
const CHUNK: u64 = 16_384;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Number of combined standard errors separating `value` from the mean.
    /// `floor` guards against a zero sample variance.
    pub fn z_score(&self, value: f64, other_se: f64, floor: f64) -> f64 {
        let se = (self.std_error.powi(2) + other_se.powi(2))
            .sqrt()
            .max(floor);
        (self.mean - value).abs() / se
    }
}

/// One draw of `‖h‖² ~ Gamma(Nm, 1/m)` as a sum of `Nm` unit exponentials.
pub fn sample_h2<R: Rng + ?Sized>(n_antennas: u32, m: u32, rng: &mut R) -> f64 {
    let mut s = 0.0;
    for _ in 0..n_antennas * m {
        let e: f64 = rng.sample(Exp1);
        s += e;
    }
    s / m as f64
}

fn unit_exp<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Exp1)
}

/// Draws `(‖h‖², |g|², |f1|², |f2|²)` for one block. The interferer's
/// channels are drawn once per block.
pub fn sample_channel<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> ChannelDraw {
    let h2 = sample_h2(params.n_antennas, params.nakagami_m, rng);
    ChannelDraw {
        h2,
        g2: unit_exp(rng),
        f1sq: unit_exp(rng),
        f2sq: unit_exp(rng),
    }
}

#[derive(Clone, Copy)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    const EMPTY: Moments = Moments {
        n: 0,
        mean: 0.0,
        m2: 0.0,
    };

    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        Moments {
            n,
            mean: self.mean + d * w,
            m2: self.m2 + other.m2 + d * d * self.n as f64 * w,
        }
    }
}

/// Averages `trial(rng)` over `trials` independent draws.
pub fn estimate<F>(trials: u64, seed: u64, trial: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    if trials < MIN_TRIALS {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: trials as f64,
            reason: "at least 1000 trials are required",
        });
    }
    let chunks = trials.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let len = CHUNK.min(trials - c * CHUNK);
            let mut acc = Moments::EMPTY;
            for _ in 0..len {
                acc.push(trial(&mut rng));
            }
            acc
        })
        .collect();
    let total = parts.into_iter().fold(Moments::EMPTY, Moments::merge);
    if !total.mean.is_finite() {
        return Err(Error::NonFinite { at: total.mean });
    }
    let var = total.m2 / (total.n - 1) as f64;
    Ok(McEstimate {
        mean: total.mean,
        std_error: (var / total.n as f64).sqrt(),
        trials,
        seed,
    })
}

fn noise_constants(params: &SystemParams) -> Result<DerivedConstants> {
    derive_constants(params, None)
}

fn interf_constants(
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<DerivedConstants> {
    derive_constants(params, Some(interf))
}

fn noise_snr<R: Rng + ?Sized>(
    tau: TimeSplit,
    p: &SystemParams,
    k: &DerivedConstants,
    rng: &mut R,
) -> f64 {
    let h2 = sample_h2(p.n_antennas, p.nakagami_m, rng);
    snr_noise(tau, h2, unit_exp(rng), k)
}

/// Fraction of blocks with `γ_N < γ_th`.
pub fn estimate_outage_noise(
    tau: TimeSplit,
    params: &SystemParams,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    let k = noise_constants(params)?;
    estimate(trials, seed, |rng| {
        (noise_snr(tau, params, &k, rng) < k.gamma_th) as u8 as f64
    })
}

/// Sample mean of `log2(1 + γ_N)`.
pub fn estimate_capacity_noise(
    tau: TimeSplit,
    params: &SystemParams,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    let k = noise_constants(params)?;
    estimate(trials, seed, |rng| {
        noise_snr(tau, params, &k, rng).ln_1p() / std::f64::consts::LN_2
    })
}

/// Fraction of blocks with `γ_I < γ_th`.
pub fn estimate_outage_interf(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    let k = interf_constants(params, interf)?;
    estimate(trials, seed, |rng| {
        let d = sample_channel(params, rng);
        (sinr_interference(tau, &d, &k) < k.gamma_th) as u8 as f64
    })
}

/// Sample mean of `log2(1 + γ_I)`.
pub fn estimate_capacity_interf(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    let k = interf_constants(params, interf)?;
    estimate(trials, seed, |rng| {
        let d = sample_channel(params, rng);
        sinr_interference(tau, &d, &k).ln_1p() / std::f64::consts::LN_2
    })
}

/// Sample mean of `ln ‖h‖²`.
pub fn estimate_ln_h2(params: &SystemParams, trials: u64, seed: u64) -> Result<McEstimate> {
    estimate(trials, seed, |rng| {
        sample_h2(params.n_antennas, params.nakagami_m, rng).ln()
    })
}

/// Sample mean of `ln U` with `U = |g|²/(|f2|² + b1)`.
pub fn estimate_ln_u(b1: f64, trials: u64, seed: u64) -> Result<McEstimate> {
    estimate(trials, seed, |rng| {
        let g = unit_exp(rng);
        (g / (unit_exp(rng) + b1)).ln()
    })
}

/// One draw of `V = ‖h‖² ρ1 + |f1|² ρI`.
pub fn sample_v<R: Rng + ?Sized>(dist: &VDistribution, rng: &mut R) -> f64 {
    sample_h2(dist.n_antennas(), dist.nakagami_m(), rng) * dist.rho1()
        + unit_exp(rng) * dist.rho_i()
}

/// Sample mean of `ln V`.
pub fn estimate_ln_v(
    params: &SystemParams,
    interf: &InterferenceParams,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    let dist = VDistribution::from_params(params, interf)?;
    estimate(trials, seed, |rng| sample_v(&dist, rng).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(t: f64) -> TimeSplit {
        TimeSplit::new(t).unwrap()
    }

    #[test]
    fn rejects_small_runs() {
        let p = SystemParams::reference(2, 30.0);
        assert!(estimate_outage_noise(ts(0.5), &p, 999, 1).is_err());
        assert!(estimate_outage_noise(ts(0.5), &p, 1000, 1).is_ok());
    }

    #[test]
    fn same_seed_same_bits() {
        let p = SystemParams::reference(4, 40.0);
        let a = estimate_capacity_noise(ts(0.3), &p, 50_001, 7).unwrap();
        let b = estimate_capacity_noise(ts(0.3), &p, 50_001, 7).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = estimate_capacity_noise(ts(0.3), &p, 50_001, 8).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let p = SystemParams::reference(2, 30.0);
        let i = InterferenceParams {
            pi_db: 20.0,
            d3: 10.0,
            d4: 10.0,
        };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| estimate_capacity_interf(ts(0.5), &p, &i, 100_000, 3).unwrap())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one.mean.to_bits(), four.mean.to_bits());
        assert_eq!(one.std_error.to_bits(), four.std_error.to_bits());
    }

    #[test]
    fn h2_moments() {
        let mean = estimate(1_000_000, 11, |rng| sample_h2(4, 4, rng)).unwrap();
        assert!((mean.mean - 4.0).abs() < 3.0 * mean.std_error);
        let sq = estimate(1_000_000, 12, |rng| (sample_h2(4, 4, rng) - 4.0).powi(2)).unwrap();
        assert!((sq.mean - 1.0).abs() < 3.0 * sq.std_error);
    }

    #[test]
    fn outage_vanishes_at_high_power() {
        let p = SystemParams::reference(4, 120.0);
        assert_eq!(
            estimate_outage_noise(ts(0.5), &p, 10_000, 1).unwrap().mean,
            0.0
        );
    }

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut whole = Moments::EMPTY;
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = Moments::EMPTY;
        let mut b = Moments::EMPTY;
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert!((m.mean - whole.mean).abs() < 1e-12);
        assert!((m.m2 / whole.m2 - 1.0).abs() < 1e-12);
    }
}
