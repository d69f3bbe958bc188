//! Physical parameters, composite constants and instantaneous SNR/SINR.
//!
//! Powers enter in dB and are converted to linear ratios once, in
//! [`derive_constants`]. The block time is normalized to 1 and the
//! Nakagami spread is fixed at `Ω = 1`.

use crate::error::{Error, Result};

/// Convert a power ratio in dB to a linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Power beacon, source and destination parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Antennas at the power beacon, `N`.
    pub n_antennas: u32,
    /// Nakagami shape of the beacon-to-source link, `m`.
    pub nakagami_m: u32,
    /// Energy conversion efficiency `η`, in (0, 1).
    pub eta: f64,
    /// Path-loss exponent `α`.
    pub alpha: f64,
    /// Beacon-to-source distance in meters.
    pub d1: f64,
    /// Source-to-destination distance in meters.
    pub d2: f64,
    /// Beacon transmit power over noise power, `P/N0`, in dB.
    pub p_db: f64,
    /// Fixed transmission rate `R_c` in bits/s/Hz.
    pub rate: f64,
}

impl SystemParams {
    /// The reference setup used throughout the numerical experiments:
    /// `η = 0.4`, `α = 2.5`, `m = 4`, `d1 = 8 m`, `d2 = 15 m`, `R_c = 1`.
    pub fn reference(n_antennas: u32, p_db: f64) -> Self {
        Self {
            n_antennas,
            nakagami_m: 4,
            eta: 0.4,
            alpha: 2.5,
            d1: 8.0,
            d2: 15.0,
            p_db,
            rate: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_antennas < 1 {
            return Err(invalid("N", self.n_antennas as f64, "must be >= 1"));
        }
        if self.nakagami_m < 1 {
            return Err(invalid("m", self.nakagami_m as f64, "must be >= 1"));
        }
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(invalid("eta", self.eta, "must lie in (0, 1)"));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(invalid("alpha", self.alpha, "must be > 0"));
        }
        if !(self.d1 > 0.0 && self.d1.is_finite()) {
            return Err(invalid("d1", self.d1, "must be > 0"));
        }
        if !(self.d2 > 0.0 && self.d2.is_finite()) {
            return Err(invalid("d2", self.d2, "must be > 0"));
        }
        if !self.p_db.is_finite() {
            return Err(invalid("P_dB", self.p_db, "must be finite"));
        }
        if !(self.rate > 0.0 && self.rate.is_finite()) {
            return Err(invalid("Rc", self.rate, "must be > 0"));
        }
        Ok(())
    }

    /// Gamma shape of `‖h‖²`, `Nm`.
    pub fn shape(&self) -> u32 {
        self.n_antennas * self.nakagami_m
    }

    /// Outage threshold `γ_th = 2^{R_c} - 1`.
    pub fn gamma_th(&self) -> f64 {
        self.rate.exp2() - 1.0
    }
}

/// A single dominant co-channel interferer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceParams {
    /// Interferer power over noise power, `P_I/N0`, in dB.
    pub pi_db: f64,
    /// Interferer-to-source distance in meters.
    pub d3: f64,
    /// Interferer-to-destination distance in meters.
    pub d4: f64,
}

impl InterferenceParams {
    pub fn validate(&self) -> Result<()> {
        if !self.pi_db.is_finite() {
            return Err(invalid("PI_dB", self.pi_db, "must be finite"));
        }
        if !(self.d3 > 0.0 && self.d3.is_finite()) {
            return Err(invalid("d3", self.d3, "must be > 0"));
        }
        if !(self.d4 > 0.0 && self.d4.is_finite()) {
            return Err(invalid("d4", self.d4, "must be > 0"));
        }
        Ok(())
    }
}

fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}

/// Fraction `τ` of the block spent harvesting energy, `0 < τ < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TimeSplit(f64);

impl TimeSplit {
    pub fn new(tau: f64) -> Result<Self> {
        if tau > 0.0 && tau < 1.0 {
            Ok(Self(tau))
        } else {
            Err(invalid("tau", tau, "must lie in (0, 1)"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `τ / (1 - τ)`.
    pub fn odds(self) -> f64 {
        self.0 / (1.0 - self.0)
    }
}

/// Composite constants shared by the throughput expressions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// `c1 = d1^α d2^α N0 / (η P)`.
    pub c1: f64,
    /// `γ_th = 2^{R_c} - 1`.
    pub gamma_th: f64,
    /// `ρ1 = P / (N0 d1^α)`.
    pub rho1: f64,
    /// `η / d2^α`, the harvest-to-receive gain of the second hop.
    pub eta_over_d2a: f64,
    /// `ρI = P_I / (N0 d3^α)`; present only with an interferer.
    pub rho_i: Option<f64>,
    /// `b1 = N0 d4^α / P_I`; present only with an interferer.
    pub b1: Option<f64>,
}

impl DerivedConstants {
    /// `b2(τ) = τ η b1 / ((1 - τ) d2^α)`, strictly increasing in `τ`.
    pub fn b2(&self, tau: TimeSplit) -> Option<f64> {
        self.b1.map(|b1| tau.odds() * self.eta_over_d2a * b1)
    }
}

/// Assemble the composite constants; dB inputs become linear ratios here.
pub fn derive_constants(
    params: &SystemParams,
    interf: Option<&InterferenceParams>,
) -> Result<DerivedConstants> {
    params.validate()?;
    let p = db_to_linear(params.p_db);
    let d1a = params.d1.powf(params.alpha);
    let d2a = params.d2.powf(params.alpha);
    let (rho_i, b1) = match interf {
        Some(i) => {
            i.validate()?;
            let pi = db_to_linear(i.pi_db);
            (
                Some(pi / i.d3.powf(params.alpha)),
                Some(i.d4.powf(params.alpha) / pi),
            )
        }
        None => (None, None),
    };
    Ok(DerivedConstants {
        c1: d1a * d2a / (params.eta * p),
        gamma_th: params.gamma_th(),
        rho1: p / d1a,
        eta_over_d2a: params.eta / d2a,
        rho_i,
        b1,
    })
}

/// One realization of every channel gain in the block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelDraw {
    /// `‖h‖²`, beacon-to-source beamforming gain.
    pub h2: f64,
    /// `|g|²`, source-to-destination gain.
    pub g2: f64,
    /// `|f1|²`, interferer-to-source gain.
    pub f1sq: f64,
    /// `|f2|²`, interferer-to-destination gain.
    pub f2sq: f64,
}

/// End-to-end SNR without interference:
/// `γ_N = τ ‖h‖² |g|² / ((1 - τ) c1)`.
pub fn snr_noise(tau: TimeSplit, h2: f64, g2: f64, k: &DerivedConstants) -> f64 {
    tau.odds() * h2 * g2 / k.c1
}

/// End-to-end SINR with one interferer:
/// `γ_I = [τ η |g|² / ((1 - τ) d2^α)] (‖h‖² ρ1 + |f1|² ρI) / (1 + |f2|² / b1)`.
///
/// Without interference constants this reduces to [`snr_noise`].
pub fn sinr_interference(tau: TimeSplit, draw: &ChannelDraw, k: &DerivedConstants) -> f64 {
    let (rho_i, b1) = match (k.rho_i, k.b1) {
        (Some(r), Some(b)) => (r, b),
        _ => return snr_noise(tau, draw.h2, draw.g2, k),
    };
    let harvested = draw.h2 * k.rho1 + draw.f1sq * rho_i;
    tau.odds() * k.eta_over_d2a * draw.g2 * harvested / (1.0 + draw.f2sq / b1)
}
