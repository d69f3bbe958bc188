//! Throughput of the noise-limited link.
//!
//! Delay-intolerant transmission is limited by the outage of the product
//! `‖h‖² |g|²`, whose CDF has a Bessel-K closed form. Delay-tolerant
//! transmission is limited by the ergodic capacity, evaluated here by
//! quadrature of its integral representation. High-power, large-`N` and
//! Jensen-type approximations come with closed-form optimal time splits.

use std::f64::consts::{LN_2, LOG2_E};

use crate::error::{Error, Result};
use crate::model::{derive_constants, DerivedConstants, SystemParams, TimeSplit};
use crate::optimize::{self, Method, OptResult};
use crate::specfun::{digamma, integrate_semi_infinite, ln_bessel_k, ln_gamma, QuadratureSpec};
use crate::sum::Neumaier;

/// Transmission mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Fixed rate `R_c`, subject to outage.
    DelayIntolerant,
    /// Rate adapted to the ergodic capacity.
    DelayTolerant,
}

/// Which expression produced a throughput value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Exact,
    LowerBound,
    UpperBound,
    HighPowerApprox,
    LargeNApprox,
    HighSnrApprox,
}

/// Average throughput at a given time split, in bits/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputResult {
    pub tau: TimeSplit,
    pub value: f64,
    pub mode: Mode,
    pub kind: Kind,
}

impl ThroughputResult {
    pub(crate) fn new(tau: TimeSplit, value: f64, mode: Mode, kind: Kind) -> Self {
        Self {
            tau,
            value,
            mode,
            kind,
        }
    }
}

// Below this value of m·x the CDF is summed from its ascending series.
const SERIES_SWITCH: f64 = 1.0;

/// Returns `(F(x), 1 - F(x))` for `‖h‖²|g|²` with gamma shape `n = Nm` and
/// rate `m`. Both halves are computed without cancellation in their
/// respective small regimes.
fn product_cdf_pair(x: f64, n: u32, m: u32) -> (f64, f64) {
    if !(x > 0.0) {
        return (0.0, 1.0);
    }
    if x.is_infinite() {
        return (1.0, 0.0);
    }
    let y = m as f64 * x;
    if y <= SERIES_SWITCH {
        let f = product_cdf_series(y, n);
        (f, 1.0 - f)
    } else {
        // 1 - F = 2 y^{n/2} K_n(2 sqrt(y)) / Γ(n)
        let nf = n as f64;
        let ln_tail = LN_2 + 0.5 * nf * y.ln() + ln_bessel_k(n, 2.0 * y.sqrt()).expect("y > 0")
            - ln_gamma(nf).expect("n >= 1");
        let tail = ln_tail.exp().min(1.0);
        (1.0 - tail, tail)
    }
}

/// Ascending series of `F` in `y = m x`, from the small-argument expansion
/// of `K_n`:
/// `F = -Σ_{k=1}^{n-1} (n-k-1)!/(k!(n-1)!) (-y)^k
///      - (-1)^n y^n/(n-1)! Σ_k y^k (ψ(k+1) + ψ(n+k+1) - ln y)/(k!(n+k)!)`.
fn product_cdf_series(y: f64, n: u32) -> f64 {
    let nf = n as f64;
    let mut acc = Neumaier::default();
    if n > 1 {
        let mut term = y / (nf - 1.0);
        for k in 1..n {
            acc.add(term);
            if k + 1 < n {
                let kf = k as f64;
                term *= -y / ((nf - kf - 1.0) * (kf + 1.0));
            }
        }
    }
    // y^n / ((n-1)! n!) and its sign
    let lead = (nf * y.ln() - ln_gamma(nf).unwrap() - ln_gamma(nf + 1.0).unwrap()).exp();
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let ln_y = y.ln();
    let mut psi_sum = digamma(1.0).unwrap() + digamma(nf + 1.0).unwrap();
    let mut t = lead;
    for k in 0..200 {
        let kf = k as f64;
        let del = t * (psi_sum - ln_y);
        acc.add(sign * del);
        if del.abs() <= 1e-17 * acc.value().abs() {
            break;
        }
        t *= y / ((kf + 1.0) * (nf + kf + 1.0));
        psi_sum += 1.0 / (kf + 1.0) + 1.0 / (nf + kf + 1.0);
    }
    acc.value().clamp(0.0, 1.0)
}

/// CDF of `‖h‖² |g|²`: `F(x) = 1 - 2(mx)^{Nm/2} K_{Nm}(2 sqrt(mx)) / Γ(Nm)`.
pub fn product_cdf(x: f64, n_antennas: u32, m: u32) -> f64 {
    product_cdf_pair(x, n_antennas * m, m).0
}

/// Outage threshold on `‖h‖²|g|²`: `(1 - τ) c1 γ_th / τ`.
fn outage_argument(tau: TimeSplit, k: &DerivedConstants) -> f64 {
    k.c1 * k.gamma_th / tau.odds()
}

/// Exact outage probability `Pr{γ_N < γ_th}`.
pub fn outage_noise(tau: TimeSplit, params: &SystemParams) -> Result<f64> {
    let k = derive_constants(params, None)?;
    Ok(product_cdf_pair(outage_argument(tau, &k), params.shape(), params.nakagami_m).0)
}

/// Exact delay-intolerant throughput `R_c (1 - τ)(1 - P_out)`.
pub fn throughput_dc(tau: TimeSplit, params: &SystemParams) -> Result<ThroughputResult> {
    let k = derive_constants(params, None)?;
    let (_, success) =
        product_cdf_pair(outage_argument(tau, &k), params.shape(), params.nakagami_m);
    let value = params.rate * (1.0 - tau.value()) * success;
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayIntolerant,
        Kind::Exact,
    ))
}

fn require_shape_two(params: &SystemParams) -> Result<()> {
    if params.shape() < 2 {
        return Err(Error::InvalidParameter {
            name: "Nm",
            value: params.shape() as f64,
            reason: "high-power approximation needs Nm >= 2",
        });
    }
    Ok(())
}

/// `m c1 γ_th / (mN - 1)`, the high-power outage slope.
fn high_power_slope(params: &SystemParams, k: &DerivedConstants) -> f64 {
    params.nakagami_m as f64 * k.c1 * k.gamma_th / (params.shape() as f64 - 1.0)
}

/// High-power throughput
/// `R_c (1 - τ)(1 - m/(mN - 1) · (1 - τ) c1 γ_th / τ)`, clamped at zero.
pub fn throughput_dc_high_power(tau: TimeSplit, params: &SystemParams) -> Result<ThroughputResult> {
    require_shape_two(params)?;
    let k = derive_constants(params, None)?;
    let b = high_power_slope(params, &k);
    let value = params.rate * optimize::objective_lemma1(b, tau.value()).max(0.0);
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayIntolerant,
        Kind::HighPowerApprox,
    ))
}

/// High-power optimal split `sqrt(m c1 γ_th / (m c1 γ_th + Nm - 1))`.
pub fn tau_star_high_power(params: &SystemParams) -> Result<OptResult> {
    require_shape_two(params)?;
    let k = derive_constants(params, None)?;
    let tau = optimize::lemma1(high_power_slope(params, &k))?;
    let value = throughput_dc_high_power(TimeSplit::new(tau)?, params)?.value;
    OptResult::closed_form(tau, value, Method::Lemma1)
}

/// Large-`N` throughput, with `‖h‖² ≈ N`:
/// `R_c (1 - τ) exp(-(1 - τ) c1 γ_th / (N τ))`.
pub fn throughput_dc_large_n(tau: TimeSplit, params: &SystemParams) -> Result<ThroughputResult> {
    let k = derive_constants(params, None)?;
    let b = k.c1 * k.gamma_th / params.n_antennas as f64;
    let value = params.rate * (1.0 - tau.value()) * (-b / tau.odds()).exp();
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayIntolerant,
        Kind::LargeNApprox,
    ))
}

/// Large-`N` optimal split `(sqrt(b² + 4b) - b)/2` with `b = c1 γ_th / N`.
pub fn tau_star_large_n(params: &SystemParams) -> Result<OptResult> {
    let k = derive_constants(params, None)?;
    let tau = optimize::lemma2(k.c1 * k.gamma_th / params.n_antennas as f64)?;
    let value = throughput_dc_large_n(TimeSplit::new(tau)?, params)?.value;
    OptResult::closed_form(tau, value, Method::Lemma2)
}

/// `ln` of the density of `W = m ‖h‖² |g|²`,
/// `f_W(x) = 2 x^{(n-1)/2} K_{n-1}(2 sqrt(x)) / Γ(n)`.
pub(crate) fn ln_scaled_product_density(x: f64, n: u32) -> f64 {
    let nf = n as f64;
    LN_2 + 0.5 * (nf - 1.0) * x.ln() + ln_bessel_k(n - 1, 2.0 * x.sqrt()).expect("x > 0")
        - ln_gamma(nf).expect("n >= 1")
}

/// Ergodic capacity `E{log2(1 + γ_N)}` by quadrature of
/// `2 log2(e)/Γ(Nm) ∫ ln(1 + τx/((1 - τ) m c1)) x^{(Nm-1)/2} K_{Nm-1}(2 sqrt(x)) dx`.
pub fn ergodic_capacity(tau: TimeSplit, params: &SystemParams) -> Result<f64> {
    ergodic_capacity_with(tau, params, &QuadratureSpec::default())
}

pub fn ergodic_capacity_with(
    tau: TimeSplit,
    params: &SystemParams,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let k = derive_constants(params, None)?;
    let n = params.shape();
    let scale = tau.odds() / (params.nakagami_m as f64 * k.c1);
    let integrand = |x: f64| (scale * x).ln_1p() * ln_scaled_product_density(x, n).exp();
    let quad = QuadratureSpec {
        pivot: quad.pivot.or(Some(n as f64)),
        ..*quad
    };
    Ok(LOG2_E * integrate_semi_infinite(integrand, &quad)?)
}

/// Exact delay-tolerant throughput `(1 - τ) C_e`.
pub fn throughput_dt(tau: TimeSplit, params: &SystemParams) -> Result<ThroughputResult> {
    let value = (1.0 - tau.value()) * ergodic_capacity(tau, params)?;
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayTolerant,
        Kind::Exact,
    ))
}

/// `E{ln ‖h‖²} = ψ(Nm) - ln m`.
pub fn mean_ln_h2(params: &SystemParams) -> Result<f64> {
    Ok(digamma(params.shape() as f64)? - (params.nakagami_m as f64).ln())
}

/// `exp{ψ(mN) - ln m + ψ(1)} / c1`, the effective SNR gain of the lower bound.
fn lower_bound_gain(params: &SystemParams) -> Result<f64> {
    let k = derive_constants(params, None)?;
    Ok((mean_ln_h2(params)? + digamma(1.0)?).exp() / k.c1)
}

/// Jensen lower bound
/// `(1 - τ) log2(1 + τ exp{ψ(mN) - ln m + ψ(1)} / ((1 - τ) c1))`.
pub fn throughput_dt_lower(tau: TimeSplit, params: &SystemParams) -> Result<ThroughputResult> {
    let a = lower_bound_gain(params)?;
    let value = LOG2_E * optimize::objective_lemma3(a, tau.value());
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayTolerant,
        Kind::LowerBound,
    ))
}

/// Maximizer of [`throughput_dt_lower`].
pub fn tau_star_dt_lower(params: &SystemParams) -> Result<OptResult> {
    let tau = optimize::lemma3(lower_bound_gain(params)?)?;
    let value = throughput_dt_lower(TimeSplit::new(tau)?, params)?.value;
    OptResult::closed_form(tau, value, Method::Lemma3)
}

/// `a = ln(η P/(d1^α d2^α N0)) + ψ(mN) - ln m + ψ(1)`.
pub fn high_snr_offset(params: &SystemParams) -> Result<f64> {
    let k = derive_constants(params, None)?;
    Ok(-k.c1.ln() + mean_ln_h2(params)? + digamma(1.0)?)
}

/// High-SNR delay-tolerant throughput
/// `(1 - τ)/ln 2 · (ln(τ/(1 - τ)) + a)`, clamped at zero.
pub fn throughput_dt_high_snr(tau: TimeSplit, params: &SystemParams) -> Result<ThroughputResult> {
    let a = high_snr_offset(params)?;
    let value = (LOG2_E * optimize::objective_lemma4(a, tau.value())).max(0.0);
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayTolerant,
        Kind::HighSnrApprox,
    ))
}

/// Maximizer of [`throughput_dt_high_snr`].
pub fn tau_star_dt_high_snr(params: &SystemParams) -> Result<OptResult> {
    let tau = optimize::lemma4(high_snr_offset(params)?)?;
    let value = throughput_dt_high_snr(TimeSplit::new(tau)?, params)?.value;
    OptResult::closed_form(tau, value, Method::Lemma4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimize::{grid_search, GridSearch};
    use crate::specfun::{expint_ei_scaled, integrate};

    fn ts(t: f64) -> TimeSplit {
        TimeSplit::new(t).unwrap()
    }

    fn bessel_branch(y: f64, n: u32) -> f64 {
        let nf = n as f64;
        let ln_tail = LN_2 + 0.5 * nf * y.ln() + ln_bessel_k(n, 2.0 * y.sqrt()).unwrap()
            - ln_gamma(nf).unwrap();
        1.0 - ln_tail.exp()
    }

    #[test]
    fn cdf_limits() {
        assert_eq!(product_cdf(0.0, 4, 4), 0.0);
        assert_eq!(product_cdf(f64::INFINITY, 4, 4), 1.0);
        assert!(product_cdf(1e6, 2, 1) > 1.0 - 1e-12);
        assert!((product_cdf(1e9, 20, 4) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn series_and_bessel_branches_agree_at_switch() {
        for n in 1..=80 {
            for &y in &[0.5 * SERIES_SWITCH, SERIES_SWITCH] {
                let a = product_cdf_series(y, n);
                let b = bessel_branch(y, n);
                assert!((a - b).abs() < 1e-10, "n = {n}, y = {y}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn cdf_small_argument_slope() {
        // F(x) ≈ m x / (Nm - 1) as x -> 0
        let x = 1e-9;
        let f = product_cdf(x, 4, 4);
        assert!((f / (4.0 * x / 15.0) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn cdf_single_antenna_rayleigh_closed_form() {
        // N = m = 1: F(x) = 1 - 2 sqrt(x) K_1(2 sqrt(x))
        for &x in &[0.01, 0.3, 1.0, 5.0] {
            let k1 = crate::specfun::bessel_k(1, 2.0 * f64::sqrt(x)).unwrap();
            let want = 1.0 - 2.0 * x.sqrt() * k1;
            assert!((product_cdf(x, 1, 1) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn cdf_against_conditional_quadrature() {
        // F(x) = E_H[1 - e^{-x/H}] with H ~ Gamma(Nm, rate m)
        for &(n_ant, m) in &[(1u32, 1u32), (2, 1), (4, 4), (8, 1)] {
            let n = (n_ant * m) as f64;
            let mf = m as f64;
            for &x in &[0.05, 0.7, 3.0, 20.0] {
                let dens = |h: f64| {
                    (n * mf.ln() + (n - 1.0) * h.ln() - mf * h - ln_gamma(n).unwrap()).exp()
                };
                let q = integrate_semi_infinite(
                    |h| dens(h) * (-(-x / h).exp_m1()),
                    &QuadratureSpec::default(),
                )
                .unwrap();
                assert!(
                    (product_cdf(x, n_ant, m) - q).abs() < 1e-9,
                    "N={n_ant} m={m} x={x}"
                );
            }
        }
    }

    #[test]
    fn cdf_nondecreasing() {
        let mut prev = 0.0;
        for i in 0..400 {
            let x = 10f64.powf(-6.0 + i as f64 * 0.025);
            let f = product_cdf(x, 3, 2);
            assert!(f >= prev && f < 1.0 + 1e-15);
            prev = f;
        }
    }

    #[test]
    fn throughput_dc_edges_and_cap() {
        let p = SystemParams::reference(4, 45.0);
        assert!(throughput_dc(ts(1.0 - 1e-9), &p).unwrap().value < 1e-8);
        assert!(throughput_dc(ts(1e-9), &p).unwrap().value < 1e-8);
        for i in 1..20 {
            let t = ts(i as f64 / 20.0);
            let r = throughput_dc(t, &p).unwrap();
            assert!(r.value <= p.rate * (1.0 - t.value()));
            assert!(r.value >= 0.0);
        }
    }

    #[test]
    fn high_power_approximation() {
        let p = SystemParams::reference(4, 60.0);
        let t = ts(0.5);
        let exact = throughput_dc(t, &p).unwrap().value;
        let approx = throughput_dc_high_power(t, &p).unwrap().value;
        assert!(((approx - exact) / exact).abs() < 0.01);
        let huge = SystemParams::reference(4, 200.0);
        assert!((throughput_dc_high_power(t, &huge).unwrap().value - 0.5).abs() < 1e-12);
        let single = SystemParams {
            nakagami_m: 1,
            ..SystemParams::reference(1, 60.0)
        };
        assert!(throughput_dc_high_power(t, &single).is_err());
        assert!(tau_star_high_power(&single).is_err());
    }

    #[test]
    fn high_power_tau_star_is_stationary() {
        let p = SystemParams::reference(4, 50.0);
        let r = tau_star_high_power(&p).unwrap();
        let t = r.tau_star.value();
        let h = 1e-5;
        let f = |x: f64| throughput_dc_high_power(ts(x), &p).unwrap().value;
        assert!(((f(t + h) - f(t - h)) / (2.0 * h)).abs() <= 1e-6);
        let g = grid_search(|x| Ok(f(x)), &GridSearch::default()).unwrap();
        assert!((g.tau_star.value() - t).abs() < 1e-4);
    }

    #[test]
    fn high_power_tau_star_equal_half() {
        // m c1 γ_th = Nm - 1 → 1/√2: choose P so that c1 = (Nm - 1)/m
        let base = SystemParams::reference(4, 0.0);
        let c1_at_0db = derive_constants(&base, None).unwrap().c1;
        let target = 15.0 / 4.0;
        let p = SystemParams {
            p_db: 10.0 * (c1_at_0db / target).log10(),
            ..base
        };
        let t = tau_star_high_power(&p).unwrap().tau_star.value();
        assert!((t - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(
            tau_star_high_power(&SystemParams::reference(4, 150.0))
                .unwrap()
                .tau_star
                .value()
                < 1e-4
        );
    }

    #[test]
    fn large_n_tau_star() {
        let p = SystemParams::reference(2, 45.0);
        let k = derive_constants(&p, None).unwrap();
        let b = k.c1 / 2.0;
        let want = ((b * b + 4.0 * b).sqrt() - b) / 2.0;
        assert!((tau_star_large_n(&p).unwrap().tau_star.value() - want).abs() < 1e-12);
        let big = SystemParams::reference(1_000_000, 45.0);
        assert!(tau_star_large_n(&big).unwrap().tau_star.value() < 0.01);
    }

    #[test]
    fn capacity_against_conditional_route() {
        // E ln(1 + a g) over g ~ Exp(1) is -e^{1/a} Ei(-1/a); average over
        // Z = m‖h‖² ~ Gamma(Nm, 1).
        for &(n_ant, m, p_db, tau) in &[
            (1u32, 1u32, 40.0, 0.5),
            (2, 4, 30.0, 0.3),
            (4, 4, 60.0, 0.2),
        ] {
            let p = SystemParams {
                nakagami_m: m,
                ..SystemParams::reference(n_ant, p_db)
            };
            let k = derive_constants(&p, None).unwrap();
            let c = (tau / (1.0 - tau)) / (m as f64 * k.c1);
            let n = (n_ant * m) as f64;
            let route = |z: f64| {
                let dens = ((n - 1.0) * z.ln() - z - ln_gamma(n).unwrap()).exp();
                let a = c * z;
                -expint_ei_scaled(-1.0 / a).unwrap() * dens
            };
            let oracle = LOG2_E
                * (integrate(route, 0.0, 50.0 * n, &QuadratureSpec::default()).unwrap()
                    + integrate(route, 50.0 * n, 400.0 * n, &QuadratureSpec::default()).unwrap());
            let got = ergodic_capacity(ts(tau), &p).unwrap();
            assert!(((got - oracle) / oracle).abs() < 1e-8, "{got} vs {oracle}");
        }
    }

    #[test]
    fn capacity_vanishes_at_small_tau() {
        let p = SystemParams::reference(2, 40.0);
        assert!(ergodic_capacity(ts(1e-9), &p).unwrap() < 1e-6);
        assert!(throughput_dt(ts(1.0 - 1e-9), &p).unwrap().value < 1e-6);
    }

    #[test]
    fn lower_bound_digamma_constant() {
        // mN = 1: exponent ψ(1) + ψ(1) = -2γ
        let p = SystemParams {
            nakagami_m: 1,
            ..SystemParams::reference(1, 40.0)
        };
        let k = derive_constants(&p, None).unwrap();
        let want = (-2.0 * crate::specfun::EULER_GAMMA).exp() / k.c1;
        assert!((lower_bound_gain(&p).unwrap() - want).abs() < 1e-14 * want);
    }

    #[test]
    fn lower_bound_below_exact() {
        for &(n, p_db) in &[(1u32, 20.0), (2, 40.0), (4, 50.0), (8, 70.0)] {
            let p = SystemParams::reference(n, p_db);
            for &t in &[0.1, 0.4, 0.8] {
                let lo = throughput_dt_lower(ts(t), &p).unwrap().value;
                let ex = throughput_dt(ts(t), &p).unwrap().value;
                assert!(lo <= ex, "N={n} P={p_db} tau={t}");
            }
        }
    }

    #[test]
    fn lower_bound_tau_star_unit_gain() {
        let t = optimize::lemma3(1.0).unwrap();
        assert!((t - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        // τ* -> 0 as the gain grows, roughly like 1/ln(a)
        let mut prev = 1.0;
        for p_db in [20.0, 50.0, 100.0, 200.0] {
            let t = tau_star_dt_lower(&SystemParams::reference(4, p_db))
                .unwrap()
                .tau_star
                .value();
            assert!(t < prev);
            prev = t;
        }
        assert!(optimize::lemma3(1e300).unwrap() < 0.002);
    }

    #[test]
    fn dt_lower_tau_star_matches_grid() {
        let p = SystemParams::reference(2, 40.0);
        let r = tau_star_dt_lower(&p).unwrap();
        let g = grid_search(
            |x| Ok(throughput_dt_lower(ts(x), &p)?.value),
            &GridSearch::default(),
        )
        .unwrap();
        assert!((r.tau_star.value() - g.tau_star.value()).abs() < 1e-4);
    }

    #[test]
    fn high_snr_tau_star_matches_grid() {
        for &a in &[2.0, 5.0, 10.0] {
            let t = optimize::lemma4(a).unwrap();
            let g = grid_search(
                |x| Ok(optimize::objective_lemma4(a, x)),
                &GridSearch::default(),
            )
            .unwrap();
            assert!((t - g.tau_star.value()).abs() < 1e-4);
        }
        let p = SystemParams::reference(4, 60.0);
        let r = tau_star_dt_high_snr(&p).unwrap();
        let g = grid_search(
            |x| Ok(throughput_dt_high_snr(ts(x), &p)?.value),
            &GridSearch::default(),
        )
        .unwrap();
        assert!((r.tau_star.value() - g.tau_star.value()).abs() < 1e-4);
        let hotter = SystemParams::reference(4, 120.0);
        assert!(tau_star_dt_high_snr(&hotter).unwrap().tau_star.value() < r.tau_star.value());
    }

    #[test]
    fn high_snr_approximation_accuracy() {
        let p = SystemParams::reference(4, 80.0);
        let t = ts(0.4);
        let ex = throughput_dt(t, &p).unwrap().value;
        let ap = throughput_dt_high_snr(t, &p).unwrap().value;
        assert!(((ap - ex) / ex).abs() < 0.02, "{ap} vs {ex}");
    }
}
