use criterion::{black_box, criterion_group, criterion_main, Criterion};
use wpc_core::analytic_interf::{
    outage_interference, outage_lower, tau_star_dt_interference, throughput_dt_interference,
    VDistribution,
};
use wpc_core::analytic_noise::{ergodic_capacity, outage_noise, product_cdf, tau_star_dt_lower};
use wpc_core::montecarlo::estimate_outage_interf;
use wpc_core::optimize::{lemma1, lemma2, lemma3, lemma4};
use wpc_core::specfun::{bessel_k, expint_ei, lambert_w0};
use wpc_core::{InterferenceParams, SystemParams, TimeSplit};

fn setup() -> (TimeSplit, SystemParams, InterferenceParams) {
    let tau = TimeSplit::new(0.4).unwrap();
    let params = SystemParams::reference(4, 40.0);
    let interf = InterferenceParams {
        pi_db: 20.0,
        d3: 10.0,
        d4: 10.0,
    };
    (tau, params, interf)
}

fn special_functions(c: &mut Criterion) {
    let mut g = c.benchmark_group("specfun");
    g.bench_function("bessel_k_8", |b| b.iter(|| bessel_k(8, black_box(0.37))));
    g.bench_function("expint_ei", |b| b.iter(|| expint_ei(black_box(-3.2))));
    g.bench_function("lambert_w0", |b| b.iter(|| lambert_w0(black_box(12.5))));
    g.finish();
}

fn noise(c: &mut Criterion) {
    let (tau, params, _) = setup();
    let mut g = c.benchmark_group("noise");
    g.bench_function("product_cdf_N8_m4", |b| {
        b.iter(|| product_cdf(black_box(0.02), 8, 4))
    });
    g.bench_function("outage", |b| {
        b.iter(|| outage_noise(tau, black_box(&params)))
    });
    g.bench_function("ergodic_capacity", |b| {
        b.iter(|| ergodic_capacity(tau, black_box(&params)))
    });
    g.bench_function("tau_star_dt_lower", |b| {
        b.iter(|| tau_star_dt_lower(black_box(&params)))
    });
    g.finish();
}

fn interference(c: &mut Criterion) {
    let (tau, params, interf) = setup();
    let dist = VDistribution::from_params(&params, &interf).unwrap();
    let mut g = c.benchmark_group("interference");
    g.bench_function("v_density", |b| b.iter(|| dist.density(black_box(1.0e-3))));
    g.bench_function("outage", |b| {
        b.iter(|| outage_interference(tau, black_box(&params), &interf))
    });
    g.bench_function("outage_lower", |b| {
        b.iter(|| outage_lower(tau, black_box(&params), &interf))
    });
    g.bench_function("throughput_dt", |b| {
        b.iter(|| throughput_dt_interference(tau, black_box(&params), &interf))
    });
    g.bench_function("tau_star_dt", |b| {
        b.iter(|| tau_star_dt_interference(black_box(&params), &interf))
    });
    g.finish();
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("tau_solvers");
    g.bench_function("lemma1", |b| b.iter(|| lemma1(black_box(0.8))));
    g.bench_function("lemma2", |b| b.iter(|| lemma2(black_box(0.8))));
    g.bench_function("lemma3", |b| b.iter(|| lemma3(black_box(25.0))));
    g.bench_function("lemma4", |b| b.iter(|| lemma4(black_box(25.0))));
    g.finish();
}

fn simulation(c: &mut Criterion) {
    let (tau, params, interf) = setup();
    let mut g = c.benchmark_group("montecarlo");
    g.sample_size(10);
    g.bench_function("outage_interf_1e5", |b| {
        b.iter(|| estimate_outage_interf(tau, &params, &interf, 100_000, black_box(7)))
    });
    g.finish();
}

criterion_group!(
    benches,
    special_functions,
    noise,
    interference,
    solvers,
    simulation
);
criterion_main!(benches);
