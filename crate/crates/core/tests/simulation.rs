//! Analytic results against the channel sampler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wpc_core::analytic_interf::{
    ln_moment_u, ln_moment_v, outage_interference, throughput_dt_lower_interference, VDistribution,
};
use wpc_core::analytic_noise::{outage_noise, product_cdf, throughput_dt, throughput_dt_lower};
use wpc_core::model::{InterferenceParams, SystemParams, TimeSplit};
use wpc_core::montecarlo::{self, sample_h2, sample_v};
use wpc_core::specfun::{integrate, QuadratureSpec};

fn ts(t: f64) -> TimeSplit {
    TimeSplit::new(t).unwrap()
}

/// `P(n, y)` for integer `n`: `1 - e^{-y} Σ_{k<n} y^k/k!`.
fn regularized_lower_gamma(n: u32, y: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..n {
        term *= y / k as f64;
        sum += term;
    }
    1.0 - (-y).exp() * sum
}

fn sorted_samples(n: usize, seed: u64, mut draw: impl FnMut(&mut ChaCha8Rng) -> f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = (0..n).map(|_| draw(&mut rng)).collect();
    xs.sort_by(f64::total_cmp);
    xs
}

fn ks_distance(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max((f - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - f).abs())
    })
}

#[test]
fn h2_sampler_matches_gamma_law() {
    let xs = sorted_samples(1_000_000, 5, |r| sample_h2(4, 4, r));
    let d = ks_distance(&xs, |x| regularized_lower_gamma(16, 4.0 * x));
    assert!(d < 0.002, "KS distance {d}");
}

#[test]
fn v_density_matches_sampler() {
    let dist = VDistribution::new(2, 2, 4.0, 1.0).unwrap();
    let xs = sorted_samples(1_000_000, 6, |r| sample_v(&dist, r));
    // CDF at every 50th order statistic by accumulating the density
    let spec = QuadratureSpec::default();
    let density = |x: f64| dist.density(x).unwrap();
    let mut cdf = 0.0;
    let mut lo = 0.0;
    let mut worst: f64 = 0.0;
    let n = xs.len() as f64;
    for i in (49..xs.len()).step_by(50) {
        cdf += integrate(density, lo, xs[i], &spec).unwrap();
        lo = xs[i];
        worst = worst
            .max((cdf - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - cdf).abs());
    }
    assert!(worst < 0.002, "KS distance {worst}");
}

#[test]
fn noise_outage_rayleigh_two_antennas() {
    let mut p = SystemParams::reference(2, 40.0);
    p.nakagami_m = 1;
    let tau = ts(0.5);
    let exact = outage_noise(tau, &p).unwrap();
    let mc = montecarlo::estimate_outage_noise(tau, &p, 1_000_000, 21).unwrap();
    assert!(
        (exact - mc.mean).abs() < 3.0 * mc.std_error,
        "{exact} vs {mc:?}"
    );
    // the same quantity straight from the product CDF
    let k = wpc_core::model::derive_constants(&p, None).unwrap();
    let direct = product_cdf(k.c1 * k.gamma_th / tau.odds(), 2, 1);
    assert!((direct - exact).abs() < 1e-14);
}

#[test]
fn interference_outage_reference_setup() {
    let p = SystemParams::reference(4, 40.0);
    let i = InterferenceParams {
        pi_db: 20.0,
        d3: 10.0,
        d4: 10.0,
    };
    let tau = ts(0.4);
    let exact = outage_interference(tau, &p, &i).unwrap();
    let mc = montecarlo::estimate_outage_interf(tau, &p, &i, 1_000_000, 22).unwrap();
    let se = mc.std_error.max((exact * (1.0 - exact) / 1e6).sqrt());
    assert!((exact - mc.mean).abs() < 3.0 * se, "{exact} vs {mc:?}");
}

#[test]
fn log_moments() {
    let u = montecarlo::estimate_ln_u(1.0, 1_000_000, 23).unwrap();
    let exact = ln_moment_u(1.0).unwrap();
    assert!(
        (exact - u.mean).abs() < 3.0 * u.std_error,
        "{exact} vs {u:?}"
    );

    let p = SystemParams::reference(2, 30.0);
    let i = InterferenceParams {
        pi_db: 25.0,
        d3: 8.0,
        d4: 12.0,
    };
    let v = montecarlo::estimate_ln_v(&p, &i, 1_000_000, 24).unwrap();
    let exact = ln_moment_v(&VDistribution::from_params(&p, &i).unwrap()).unwrap();
    assert!(
        (exact - v.mean).abs() < 3.0 * v.std_error,
        "{exact} vs {v:?}"
    );
}

#[test]
fn noise_lower_bound_below_exact_capacity() {
    for n in [1, 2, 4, 8, 16] {
        for db in [10.0, 30.0, 50.0, 70.0] {
            let p = SystemParams::reference(n, db);
            for t in [0.1, 0.5, 0.9] {
                let lower = throughput_dt_lower(ts(t), &p).unwrap().value;
                let exact = throughput_dt(ts(t), &p).unwrap().value;
                assert!(lower <= exact, "N={n} P={db} τ={t}");
            }
        }
    }
}

#[test]
fn interference_lower_bound_below_simulated_capacity() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for draw in 0..50 {
        let mut p = SystemParams::reference(rng.gen_range(1..=8), rng.gen_range(10.0..70.0));
        p.nakagami_m = rng.gen_range(1..=4);
        p.d1 = rng.gen_range(3.0..20.0);
        p.d2 = rng.gen_range(3.0..20.0);
        let i = InterferenceParams {
            pi_db: rng.gen_range(-10.0..40.0),
            d3: rng.gen_range(5.0..20.0),
            d4: rng.gen_range(5.0..20.0),
        };
        let tau = ts(rng.gen_range(0.05..0.95));
        let bound = throughput_dt_lower_interference(tau, &p, &i).unwrap().value;
        let mc = montecarlo::estimate_capacity_interf(tau, &p, &i, 100_000, 1000 + draw).unwrap();
        let sim = (1.0 - tau.value()) * mc.mean;
        let se = (1.0 - tau.value()) * mc.std_error;
        assert!(bound <= sim + 3.0 * se, "draw {draw}: {bound} > {sim}");
    }
}
