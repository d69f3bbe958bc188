//! Throughput with one dominant co-channel interferer.
//!
//! The SINR factors as `γ_I = b2 U V` with `U = |g|²/(|f2|² + b1)` and
//! `V = ‖h‖² ρ1 + |f1|² ρI`. `U` has the CDF `1 - e^{-b1 x}/(1 + x)`;
//! `V` is a gamma plus an exponential, whose density has a partial-fraction
//! form in the two rates. That form alternates in sign, so every closed-form
//! sum built on it is evaluated in the log domain with a cancellation
//! estimate, and falls back to quadrature when more than six digits are lost
//! or the two rates coincide.

use std::f64::consts::LOG2_E;

use crate::analytic_noise::{Kind, Mode, ThroughputResult};
use crate::error::{Error, Result};
use crate::model::{derive_constants, InterferenceParams, SystemParams, TimeSplit};
use crate::optimize::{self, Method, OptResult};
use crate::specfun::{
    digamma, expint_ei_scaled, integrate, integrate_semi_infinite, ln_gamma, QuadratureSpec,
};
use crate::sum::LogTerms;

/// Closed-form sums losing more digits than this are rejected.
pub const MAX_DIGITS_LOST: f64 = 6.0;

/// Relative gap between `ρ1/m` and `ρI` below which the partial fractions
/// are treated as singular.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Law of `V = ‖h‖² ρ1 + |f1|² ρI` with `‖h‖² ~ Gamma(Nm, 1/m)` and
/// `|f1|² ~ Exp(1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VDistribution {
    n_antennas: u32,
    m: u32,
    rho1: f64,
    rho_i: f64,
}

impl VDistribution {
    pub fn new(n_antennas: u32, m: u32, rho1: f64, rho_i: f64) -> Result<Self> {
        if n_antennas < 1 || m < 1 {
            return Err(Error::InvalidParameter {
                name: "Nm",
                value: (n_antennas * m) as f64,
                reason: "N and m must be >= 1",
            });
        }
        for (name, v) in [("rho1", rho1), ("rhoI", rho_i)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be positive and finite",
                });
            }
        }
        Ok(Self {
            n_antennas,
            m,
            rho1,
            rho_i,
        })
    }

    pub fn from_params(params: &SystemParams, interf: &InterferenceParams) -> Result<Self> {
        let k = derive_constants(params, Some(interf))?;
        Self::new(
            params.n_antennas,
            params.nakagami_m,
            k.rho1,
            k.rho_i.expect("interferer present"),
        )
    }

    /// Gamma shape `Nm`.
    pub fn shape(&self) -> u32 {
        self.n_antennas * self.m
    }

    pub fn n_antennas(&self) -> u32 {
        self.n_antennas
    }

    pub fn nakagami_m(&self) -> u32 {
        self.m
    }

    pub fn rho1(&self) -> f64 {
        self.rho1
    }

    pub fn rho_i(&self) -> f64 {
        self.rho_i
    }

    /// Rate of the gamma part, `m/ρ1`.
    fn alpha(&self) -> f64 {
        self.m as f64 / self.rho1
    }

    /// Rate of the exponential part, `1/ρI`.
    fn beta(&self) -> f64 {
        1.0 / self.rho_i
    }

    /// `E{V} = N ρ1 + ρI`.
    pub fn mean(&self) -> f64 {
        self.n_antennas as f64 * self.rho1 + self.rho_i
    }

    pub fn is_degenerate(&self) -> bool {
        let a = self.rho1 / self.m as f64;
        (a - self.rho_i).abs() < DEGENERACY_TOL * a.max(self.rho_i)
    }

    fn check_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::Degenerate {
                gamma_rate_inv: self.rho1 / self.m as f64,
                exp_mean: self.rho_i,
            })
        } else {
            Ok(())
        }
    }

    /// `ln(m^{Nm} / (ρ1^{Nm} ρI))`, the common prefactor.
    fn ln_prefactor(&self) -> f64 {
        self.shape() as f64 * self.alpha().ln() + self.beta().ln()
    }

    /// Sign and `ln|·|` of `(-1)^{t-1} (1/ρI - m/ρ1)^{-t}` for `t = 1..=Nm`.
    fn group_coefficient(&self, t: u32) -> (f64, f64) {
        let diff = self.beta() - self.alpha();
        let mut sign = if t % 2 == 1 { 1.0 } else { -1.0 };
        if diff < 0.0 && t % 2 == 1 {
            sign = -sign;
        }
        (sign, -(t as f64) * diff.abs().ln())
    }

    /// Sign and `ln|·|` of `(m/ρ1 - 1/ρI)^{-Nm}`.
    fn exp_coefficient(&self) -> (f64, f64) {
        let diff = self.alpha() - self.beta();
        let n = self.shape();
        let sign = if diff < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        (sign, -(n as f64) * diff.abs().ln())
    }

    fn partial_fraction_density(&self, x: f64) -> Result<f64> {
        self.check_nondegenerate()?;
        let n = self.shape();
        let (alpha, beta) = (self.alpha(), self.beta());
        let ln_c = self.ln_prefactor();
        let mut terms = LogTerms::default();
        for t in 1..=n {
            let (s, l) = self.group_coefficient(t);
            let j = (n - t) as f64;
            let power = if j == 0.0 { 0.0 } else { j * x.ln() };
            terms.push(s, ln_c + l - ln_gamma(j + 1.0)? + power - alpha * x);
        }
        let (s, l) = self.exp_coefficient();
        terms.push(s, ln_c + l - beta * x);
        let sum = terms.sum();
        if sum.digits_lost > MAX_DIGITS_LOST || sum.value < 0.0 {
            return Err(Error::Cancellation {
                what: "V density partial fractions",
                digits: sum.digits_lost,
            });
        }
        Ok(sum.value)
    }

    /// Density by direct convolution of the gamma and exponential parts,
    /// `∫_0^x f_Γ(y) β e^{-β(x-y)} dy`. Valid at any rates.
    pub fn density_convolution(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Ok(0.0);
        }
        let n = self.shape() as f64;
        let (alpha, beta) = (self.alpha(), self.beta());
        let ln_front = n * alpha.ln() - ln_gamma(n)? + beta.ln() - beta * x;
        let integrand = |y: f64| {
            let power = if n == 1.0 { 0.0 } else { (n - 1.0) * y.ln() };
            (ln_front + power + (beta - alpha) * y).exp()
        };
        integrate(integrand, 0.0, x, &QuadratureSpec::default())
    }

    /// Density of `V`, from the partial-fraction form where it is
    /// numerically sound and by convolution otherwise.
    pub fn density(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Ok(0.0);
        }
        if x.is_infinite() {
            return Ok(0.0);
        }
        match self.partial_fraction_density(x) {
            Ok(v) => Ok(v),
            Err(Error::Degenerate { .. }) | Err(Error::Cancellation { .. }) => {
                self.density_convolution(x)
            }
            Err(e) => Err(e),
        }
    }

    /// `E{φ(V)}` by quadrature against [`VDistribution::density`].
    pub fn expect<F: FnMut(f64) -> f64>(&self, mut phi: F) -> Result<f64> {
        let mut failure = None;
        let integrand = |v: f64| match self.density(v) {
            Ok(0.0) => 0.0,
            Ok(d) => phi(v) * d,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        };
        let spec = QuadratureSpec::default().with_pivot(self.mean());
        let value = integrate_semi_infinite(integrand, &spec)?;
        match failure {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }
}

/// Density of `V` in its partial-fraction form. Fails on coincident rates
/// (`ρ1/m ≈ ρI`); where the alternating sum cancels badly the value comes
/// from direct convolution instead.
pub fn pdf_v(x: f64, dist: &VDistribution) -> Result<f64> {
    dist.check_nondegenerate()?;
    dist.density(x)
}

/// CDF of `U = |g|²/(|f2|² + b1)`: `1 - e^{-b1 x}/(1 + x)`.
pub fn cdf_u(x: f64, b1: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    -(-(b1 * x + x.ln_1p())).exp_m1()
}

struct Setup {
    dist: VDistribution,
    b1: f64,
    /// `γ_th / b2(τ)`
    k: f64,
}

fn setup(tau: TimeSplit, params: &SystemParams, interf: &InterferenceParams) -> Result<Setup> {
    let c = derive_constants(params, Some(interf))?;
    Ok(Setup {
        dist: VDistribution::new(
            params.n_antennas,
            params.nakagami_m,
            c.rho1,
            c.rho_i.expect("interferer present"),
        )?,
        b1: c.b1.expect("interferer present"),
        k: c.gamma_th / c.b2(tau).expect("interferer present"),
    })
}

/// Exact outage `P_out = E{F_U(γ_th/(b2 V))}` by one quadrature over `V`.
pub fn outage_interference(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<f64> {
    let s = setup(tau, params, interf)?;
    let p = s.dist.expect(|v| cdf_u(s.k / v, s.b1))?;
    Ok(p.clamp(0.0, 1.0))
}

/// `1 - P_out = E{e^{-b1 k/V} / (1 + k/V)}`, accurate when outage is near 1.
fn success_interference(s: &Setup) -> Result<f64> {
    let p = s.dist.expect(|v| {
        let u = s.k / v;
        (-(s.b1 * u + u.ln_1p())).exp()
    })?;
    Ok(p.clamp(0.0, 1.0))
}

/// Exact delay-intolerant throughput `R_c (1 - τ)(1 - P_out)`.
pub fn throughput_dc_interference(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<ThroughputResult> {
    let s = setup(tau, params, interf)?;
    let outage = s.dist.expect(|v| cdf_u(s.k / v, s.b1))?.clamp(0.0, 1.0);
    let success = if outage > 0.5 {
        success_interference(&s)?
    } else {
        1.0 - outage
    };
    let value = params.rate * (1.0 - tau.value()) * success;
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayIntolerant,
        Kind::Exact,
    ))
}

/// Exact throughput through the expanded sum of `Nm + 1` integrals, each
/// weighted by a partial-fraction coefficient. Kept for cross-checking the
/// compact form at small `Nm`; fails on coincident rates.
pub fn throughput_dc_interference_expanded(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<ThroughputResult> {
    let s = setup(tau, params, interf)?;
    let d = &s.dist;
    d.check_nondegenerate()?;
    let n = d.shape();
    let (alpha, beta) = (d.alpha(), d.beta());
    let bk = s.b1 * s.k;
    let quad = QuadratureSpec::default().with_pivot(d.mean());
    let ln_c = d.ln_prefactor();
    let mut terms = LogTerms::default();
    for t in 1..=n {
        let j = (n - t) as f64;
        // ∫ x^{j+1}/(x + k) e^{-αx - b1 k/x} dx, scaled by α^{j+1} to stay O(1)
        let integral = integrate_semi_infinite(
            |x| {
                let z = x * alpha;
                ((j + 1.0) * z.ln() - z - bk / x - ln_gamma(j + 1.0).unwrap()).exp() / (x + s.k)
            },
            &quad,
        )?;
        let (sg, l) = d.group_coefficient(t);
        terms.push_scaled(sg, ln_c + l - (j + 1.0) * alpha.ln(), integral);
    }
    let tail = integrate_semi_infinite(|x| x * (-beta * x - bk / x).exp() / (x + s.k), &quad)?;
    let (sg, l) = d.exp_coefficient();
    terms.push_scaled(sg, ln_c + l, tail);
    let success = terms.sum().value.clamp(0.0, 1.0);
    let value = params.rate * (1.0 - tau.value()) * success;
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayIntolerant,
        Kind::Exact,
    ))
}

/// Closed form of the outage lower bound `P_out^l = E{k/(V + k)}` (the
/// outage of the interference-limited SIR `b2 |g|²/|f2|² V`) through the
/// exponential integral. Fails on coincident rates or heavy cancellation.
pub fn outage_lower_closed_form(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<f64> {
    let s = setup(tau, params, interf)?;
    let d = &s.dist;
    d.check_nondegenerate()?;
    let n = d.shape();
    let (alpha, beta) = (d.alpha(), d.beta());
    let k = s.k;
    let ln_k = k.ln();
    let ln_front = d.ln_prefactor() + ln_k;
    let ei_alpha = expint_ei_scaled(-k * alpha)?;
    let ei_beta = expint_ei_scaled(-k * beta)?;
    let mut terms = LogTerms::default();
    for t in 1..=n {
        let j = n - t;
        let jf = j as f64;
        let (sg, l) = d.group_coefficient(t);
        let base = ln_front + l - ln_gamma(jf + 1.0)?;
        // (-1)^{j-1} k^j e^{kα} Ei(-kα), with Ei(·) < 0
        let sign_a = if j % 2 == 1 { 1.0 } else { -1.0 };
        terms.push(-(sg * sign_a), base + jf * ln_k + ei_alpha.abs().ln());
        // Σ_{i=1}^{j} (i-1)! (-k)^{j-i} α^{-i}
        for i in 1..=j {
            let sign_b = if (j - i) % 2 == 0 { 1.0 } else { -1.0 };
            let fi = i as f64;
            terms.push(
                sg * sign_b,
                base + ln_gamma(fi)? + (jf - fi) * ln_k - fi * alpha.ln(),
            );
        }
    }
    let (sg, l) = d.exp_coefficient();
    terms.push(sg, ln_front + l + ei_beta.abs().ln());
    let sum = terms.sum();
    if sum.digits_lost > MAX_DIGITS_LOST {
        return Err(Error::Cancellation {
            what: "outage lower bound",
            digits: sum.digits_lost,
        });
    }
    Ok(sum.value.clamp(0.0, 1.0))
}

/// Outage lower bound, closed form when sound and quadrature otherwise.
pub fn outage_lower(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<f64> {
    match outage_lower_closed_form(tau, params, interf) {
        Ok(p) => Ok(p),
        Err(Error::Degenerate { .. }) | Err(Error::Cancellation { .. }) => {
            let s = setup(tau, params, interf)?;
            Ok(s.dist.expect(|v| s.k / (v + s.k))?.clamp(0.0, 1.0))
        }
        Err(e) => Err(e),
    }
}

/// Upper bound on the delay-intolerant throughput, `R_c (1 - τ)(1 - P_out^l)`.
pub fn throughput_dc_upper(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<ThroughputResult> {
    let p = outage_lower(tau, params, interf)?;
    let value = params.rate * (1.0 - tau.value()) * (1.0 - p);
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayIntolerant,
        Kind::UpperBound,
    ))
}

/// `E{ln(1 + c U)}` in nats. With `S(x) = e^x E1(x)` this is
/// `c/(1 - c) (S(b1) - S(b1/c))`; near `c = 1` the difference cancels and
/// the defining integral `∫ e^{-b1 u}/(1 + u) · c/(1 + cu) du` is used.
pub fn ln1p_moment_u(c: f64, b1: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Ok(0.0);
    }
    if (c - 1.0).abs() < 1e-3 {
        let f = |u: f64| (-(b1 * u + u.ln_1p())).exp() * c / (1.0 + c * u);
        return integrate_semi_infinite(f, &QuadratureSpec::default().with_pivot(1.0));
    }
    let s = |x: f64| -> Result<f64> {
        if x.is_infinite() {
            Ok(0.0)
        } else {
            Ok(-expint_ei_scaled(-x)?)
        }
    };
    Ok(c / (1.0 - c) * (s(b1)? - s(b1 / c)?))
}

/// Ergodic capacity `E{log2(1 + b2 U V)}`: the expectation over `U` in
/// closed form, then one quadrature over `V`.
pub fn ergodic_capacity_interference(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<f64> {
    let c = derive_constants(params, Some(interf))?;
    let b1 = c.b1.expect("interferer present");
    let b2 = c.b2(tau).expect("interferer present");
    let dist = VDistribution::from_params(params, interf)?;
    let mut failure = None;
    let value = dist.expect(|v| match ln1p_moment_u(b2 * v, b1) {
        Ok(x) => x,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(LOG2_E * value),
    }
}

/// Exact delay-tolerant throughput `(1 - τ) E{log2(1 + γ_I)}`.
pub fn throughput_dt_interference(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<ThroughputResult> {
    let value = (1.0 - tau.value()) * ergodic_capacity_interference(tau, params, interf)?;
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayTolerant,
        Kind::Exact,
    ))
}

/// `E{ln U} = ψ(1) - ln b1 + e^{b1} Ei(-b1)` for `U = |g|²/(|f2|² + b1)`.
pub fn ln_moment_u(b1: f64) -> Result<f64> {
    if !(b1 > 0.0 && b1.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "b1",
            value: b1,
            reason: "must be positive and finite",
        });
    }
    Ok(digamma(1.0)? - b1.ln() + expint_ei_scaled(-b1)?)
}

/// `E{ln V}` from the partial-fraction density. Fails on coincident rates
/// or heavy cancellation.
pub fn ln_moment_v_closed_form(dist: &VDistribution) -> Result<f64> {
    dist.check_nondegenerate()?;
    let n = dist.shape();
    let (alpha, beta) = (dist.alpha(), dist.beta());
    let ln_c = dist.ln_prefactor();
    let mut terms = LogTerms::default();
    for t in 1..=n {
        let p = (n - t + 1) as f64;
        let (sg, l) = dist.group_coefficient(t);
        // (ρ1/m)^p Γ(p)/(Nm - t)! = α^{-p}
        terms.push_scaled(sg, ln_c + l - p * alpha.ln(), digamma(p)? - alpha.ln());
    }
    let (sg, l) = dist.exp_coefficient();
    terms.push_scaled(sg, ln_c + l - beta.ln(), digamma(1.0)? - beta.ln());
    let sum = terms.sum();
    if sum.digits_lost > MAX_DIGITS_LOST {
        return Err(Error::Cancellation {
            what: "E{ln V}",
            digits: sum.digits_lost,
        });
    }
    Ok(sum.value)
}

/// `E{ln V}`, closed form when sound and quadrature otherwise.
pub fn ln_moment_v(dist: &VDistribution) -> Result<f64> {
    match ln_moment_v_closed_form(dist) {
        Ok(v) => Ok(v),
        Err(Error::Degenerate { .. }) | Err(Error::Cancellation { .. }) => dist.expect(f64::ln),
        Err(e) => Err(e),
    }
}

/// Effective gain `a = exp{E ln U + ln(η b1/d2^α) + E ln V}`, so that
/// `E{ln γ_I} = ln(τ/(1 - τ)) + ln a`.
pub fn interference_lower_bound_gain(
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<f64> {
    let c = derive_constants(params, Some(interf))?;
    let b1 = c.b1.expect("interferer present");
    let dist = VDistribution::from_params(params, interf)?;
    Ok((ln_moment_u(b1)? + (c.eta_over_d2a * b1).ln() + ln_moment_v(&dist)?).exp())
}

/// Jensen lower bound on the delay-tolerant throughput,
/// `(1 - τ) log2(1 + a τ/(1 - τ))`.
pub fn throughput_dt_lower_interference(
    tau: TimeSplit,
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<ThroughputResult> {
    let a = interference_lower_bound_gain(params, interf)?;
    let value = LOG2_E * optimize::objective_lemma3(a, tau.value());
    Ok(ThroughputResult::new(
        tau,
        value,
        Mode::DelayTolerant,
        Kind::LowerBound,
    ))
}

/// Maximizer of [`throughput_dt_lower_interference`].
pub fn tau_star_dt_interference(
    params: &SystemParams,
    interf: &InterferenceParams,
) -> Result<OptResult> {
    let tau = optimize::lemma3(interference_lower_bound_gain(params, interf)?)?;
    let value = throughput_dt_lower_interference(TimeSplit::new(tau)?, params, interf)?.value;
    OptResult::closed_form(tau, value, Method::Lemma3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_noise::{outage_noise, throughput_dc, throughput_dt_lower};
    use crate::optimize::{grid_search, GridSearch};

    fn ts(t: f64) -> TimeSplit {
        TimeSplit::new(t).unwrap()
    }

    fn interferer(pi_db: f64) -> InterferenceParams {
        InterferenceParams {
            pi_db,
            d3: 10.0,
            d4: 10.0,
        }
    }

    fn dists() -> Vec<VDistribution> {
        vec![
            VDistribution::new(1, 1, 1.0, 0.3).unwrap(),
            VDistribution::new(2, 2, 4.0, 1.0).unwrap(),
            VDistribution::new(4, 4, 10.0, 0.5).unwrap(),
            VDistribution::new(8, 4, 0.2, 3.0).unwrap(),
            VDistribution::new(16, 4, 1.0, 0.2501).unwrap(),
        ]
    }

    #[test]
    fn density_normalizes_with_right_mean() {
        for d in dists() {
            let total = d.expect(|_| 1.0).unwrap();
            let mean = d.expect(|v| v).unwrap();
            assert!((total - 1.0).abs() < 1e-8, "{d:?}: {total}");
            assert!((mean / d.mean() - 1.0).abs() < 1e-6, "{d:?}: {mean}");
        }
    }

    #[test]
    fn density_nonnegative_on_log_grid() {
        for d in dists() {
            for i in 0..=240 {
                let x = d.mean() * 10f64.powf(-6.0 + 12.0 * i as f64 / 240.0);
                let f = d.density(x).unwrap();
                assert!(f >= 0.0 && f.is_finite(), "{d:?} at {x}: {f}");
            }
        }
    }

    #[test]
    fn partial_fractions_match_convolution() {
        let d = VDistribution::new(2, 2, 4.0, 1.0).unwrap();
        for &x in &[0.05, 0.5, 2.0, 5.0, 20.0] {
            let a = pdf_v(x, &d).unwrap();
            let b = d.density_convolution(x).unwrap();
            assert!((a - b).abs() < 1e-9 * b.max(1e-300), "x = {x}: {a} vs {b}");
        }
    }

    #[test]
    fn degenerate_rates_error_then_fall_back() {
        let d = VDistribution::new(2, 2, 4.0, 2.0).unwrap();
        assert!(d.is_degenerate());
        assert!(matches!(pdf_v(1.0, &d), Err(Error::Degenerate { .. })));
        assert!(matches!(
            ln_moment_v_closed_form(&d),
            Err(Error::Degenerate { .. })
        ));
        // Gamma(5, 1/2) evaluated directly
        let x: f64 = 3.0;
        let exact = (5.0 * 0.5f64.ln() + 4.0 * x.ln() - 0.5 * x - ln_gamma(5.0).unwrap()).exp();
        assert!((d.density(x).unwrap() / exact - 1.0).abs() < 1e-10);
        let near = VDistribution::new(2, 2, 4.0, 2.0 * (1.0 + 1e-7)).unwrap();
        let a = ln_moment_v(&d).unwrap();
        let b = ln_moment_v(&near).unwrap();
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }

    #[test]
    fn cdf_u_limits() {
        assert_eq!(cdf_u(0.0, 1.0), 0.0);
        assert!((cdf_u(1e-12, 2.0) - 3e-12).abs() < 1e-20);
        assert!(cdf_u(1e3, 0.5) > 1.0 - 1e-12);
    }

    #[test]
    fn outage_limits_in_threshold() {
        let i = interferer(20.0);
        let mut p = SystemParams::reference(4, 40.0);
        p.rate = 1e-9;
        assert!(outage_interference(ts(0.4), &p, &i).unwrap() < 1e-7);
        p.rate = 40.0;
        assert!(outage_interference(ts(0.4), &p, &i).unwrap() > 1.0 - 1e-9);
    }

    #[test]
    fn outage_monotone() {
        let i = interferer(20.0);
        let mut prev = 0.0;
        for k in 1..=8 {
            let mut p = SystemParams::reference(2, 30.0);
            p.rate = 0.5 * k as f64;
            let o = outage_interference(ts(0.5), &p, &i).unwrap();
            assert!((0.0..=1.0).contains(&o) && o >= prev);
            prev = o;
        }
        let mut prev = 1.0;
        for db in [10.0, 20.0, 30.0, 40.0, 50.0] {
            let o = outage_interference(ts(0.5), &SystemParams::reference(2, db), &i).unwrap();
            assert!(o <= prev);
            prev = o;
        }
        let mut prev = 1.0;
        for t in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let o = outage_interference(ts(t), &SystemParams::reference(2, 30.0), &i).unwrap();
            assert!(o <= prev);
            prev = o;
        }
    }

    #[test]
    fn expanded_form_matches_compact() {
        for (n, m, db) in [(1, 1, 30.0), (2, 2, 40.0), (2, 4, 25.0)] {
            let mut p = SystemParams::reference(n, db);
            p.nakagami_m = m;
            let i = interferer(20.0);
            let a = throughput_dc_interference(ts(0.4), &p, &i).unwrap().value;
            let b = throughput_dc_interference_expanded(ts(0.4), &p, &i)
                .unwrap()
                .value;
            assert!((a - b).abs() < 1e-8, "N={n} m={m}: {a} vs {b}");
        }
    }

    #[test]
    fn vanishing_interferer_recovers_noise_results() {
        let i = interferer(-60.0);
        for (n, db) in [(1, 30.0), (4, 40.0), (8, 20.0)] {
            let p = SystemParams::reference(n, db);
            let a = throughput_dc_interference(ts(0.4), &p, &i).unwrap().value;
            let b = throughput_dc(ts(0.4), &p).unwrap().value;
            assert!((a / b - 1.0).abs() < 1e-3, "N={n}: {a} vs {b}");
            let a = throughput_dt_lower_interference(ts(0.4), &p, &i)
                .unwrap()
                .value;
            let b = throughput_dt_lower(ts(0.4), &p).unwrap().value;
            assert!((a / b - 1.0).abs() < 1e-3, "N={n}: {a} vs {b}");
        }
    }

    #[test]
    fn upper_bound_dominates_exact() {
        for (n, db, pi) in [
            (1, 20.0, 0.0),
            (2, 40.0, 20.0),
            (4, 30.0, 40.0),
            (8, 60.0, 10.0),
        ] {
            let p = SystemParams::reference(n, db);
            let i = interferer(pi);
            for t in [0.2, 0.5, 0.8] {
                let exact = throughput_dc_interference(ts(t), &p, &i).unwrap().value;
                let upper = throughput_dc_upper(ts(t), &p, &i).unwrap().value;
                assert!(upper >= exact - 1e-12, "{upper} < {exact}");
            }
        }
    }

    #[test]
    fn upper_bound_tight_under_strong_interference() {
        let p = SystemParams::reference(4, 80.0);
        let exact = throughput_dc_interference(ts(0.4), &p, &interferer(40.0))
            .unwrap()
            .value;
        let upper = throughput_dc_upper(ts(0.4), &p, &interferer(40.0))
            .unwrap()
            .value;
        assert!(upper / exact - 1.0 < 0.01, "{upper} vs {exact}");
        for db in [50.0, 60.0, 70.0] {
            let p = SystemParams::reference(4, db);
            let gap = |pi| {
                let i = interferer(pi);
                throughput_dc_upper(ts(0.4), &p, &i).unwrap().value
                    - throughput_dc_interference(ts(0.4), &p, &i).unwrap().value
            };
            assert!(gap(40.0) < gap(20.0), "P = {db}");
        }
    }

    #[test]
    fn lower_outage_closed_form_matches_quadrature() {
        for (n, db) in [(1, 60.0), (2, 60.0), (4, 70.0), (8, 80.0)] {
            let p = SystemParams::reference(n, db);
            let i = interferer(20.0);
            let s = setup(ts(0.3), &p, &i).unwrap();
            let quad = s.dist.expect(|v| s.k / (v + s.k)).unwrap();
            let closed = outage_lower_closed_form(ts(0.3), &p, &i).unwrap();
            assert!(
                (quad - closed).abs() < 1e-9 * quad,
                "N={n}: {quad} vs {closed}"
            );
        }
        // large k·m/ρ1 cancels catastrophically; the public entry falls back
        let p = SystemParams::reference(1, 20.0);
        let i = interferer(20.0);
        assert!(matches!(
            outage_lower_closed_form(ts(0.3), &p, &i),
            Err(Error::Cancellation { .. })
        ));
        let s = setup(ts(0.3), &p, &i).unwrap();
        let quad = s.dist.expect(|v| s.k / (v + s.k)).unwrap();
        assert!((outage_lower(ts(0.3), &p, &i).unwrap() - quad).abs() < 1e-12);
    }

    #[test]
    fn ln_moments() {
        for b1 in [1e3, 1e5] {
            let asym = digamma(1.0).unwrap() - f64::ln(b1);
            assert!((ln_moment_u(b1).unwrap() / asym - 1.0).abs() < 0.01);
        }
        // e^{1}Ei(-1) = -0.596347362323194...
        let u1 = ln_moment_u(1.0).unwrap();
        assert!((u1 - (-0.577_215_664_901_532_9 - 0.596_347_362_323_194)).abs() < 1e-13);
        for d in &dists()[..4] {
            let closed = ln_moment_v_closed_form(d).unwrap();
            let quad = d.expect(f64::ln).unwrap();
            assert!((closed - quad).abs() < 1e-8, "{d:?}: {closed} vs {quad}");
        }
    }

    #[test]
    fn ln1p_moment_u_against_quadrature() {
        for b1 in [0.03, 1.0, 30.0] {
            for c in [1e-6, 0.2, 0.9995, 1.0, 1.01, 7.0, 1e6] {
                let quad = integrate_semi_infinite(
                    |u| (-(b1 * u + f64::ln_1p(u))).exp() * c / (1.0 + c * u),
                    &QuadratureSpec::default(),
                )
                .unwrap();
                let v = ln1p_moment_u(c, b1).unwrap();
                assert!(
                    (v - quad).abs() < 1e-10 * quad,
                    "b1={b1} c={c}: {v} vs {quad}"
                );
            }
        }
    }

    #[test]
    fn dt_bound_below_exact() {
        for (n, db, pi) in [
            (1, 20.0, 0.0),
            (2, 40.0, 20.0),
            (4, 60.0, 40.0),
            (8, 30.0, 10.0),
        ] {
            let p = SystemParams::reference(n, db);
            let i = interferer(pi);
            for t in [0.2, 0.5, 0.8] {
                let exact = throughput_dt_interference(ts(t), &p, &i).unwrap().value;
                let lower = throughput_dt_lower_interference(ts(t), &p, &i)
                    .unwrap()
                    .value;
                assert!(lower <= exact, "{lower} > {exact}");
            }
        }
        let p = SystemParams::reference(4, 40.0);
        let a = throughput_dt_interference(ts(0.4), &p, &interferer(-60.0))
            .unwrap()
            .value;
        let b = crate::analytic_noise::throughput_dt(ts(0.4), &p)
            .unwrap()
            .value;
        assert!((a / b - 1.0).abs() < 1e-3, "{a} vs {b}");
    }

    #[test]
    fn dt_lower_optimum_matches_grid() {
        let p = SystemParams::reference(4, 40.0);
        let i = interferer(20.0);
        let closed = tau_star_dt_interference(&p, &i).unwrap();
        let grid = grid_search(
            |t| Ok(throughput_dt_lower_interference(ts(t), &p, &i)?.value),
            &GridSearch::default(),
        )
        .unwrap();
        assert!((closed.tau_star.value() - grid.tau_star.value()).abs() < 1e-4);
        assert!(optimize::lemma3(1.0).unwrap() - (1.0 - (-1f64).exp()) < 1e-12);
    }

    #[test]
    fn noise_outage_consistency_at_weak_interference() {
        let p = SystemParams::reference(2, 30.0);
        let a = outage_interference(ts(0.5), &p, &interferer(-60.0)).unwrap();
        let b = outage_noise(ts(0.5), &p).unwrap();
        assert!((a - b).abs() < 1e-3 * b.max(1e-3));
    }
}
