//! Plain-text `key=value` parameter files.
//!
//! Recognized keys: `N, m, eta, alpha, d1, d2, d3, d4, P_dB, PI_dB, Rc`.
//! Blank lines and `#` comments are ignored. Keys that are absent take the
//! values of [`SystemParams::reference`] (with `N = 2`, `P_dB = 40`). An
//! interferer is configured when `PI_dB` is present; `d3` and `d4` then
//! default to 10 m.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{InterferenceParams, SystemParams};

const KEYS: [&str; 11] = [
    "N", "m", "eta", "alpha", "d1", "d2", "d3", "d4", "P_dB", "PI_dB", "Rc",
];

/// Parameters read from a config file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub system: SystemParams,
    pub interference: Option<InterferenceParams>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            system: SystemParams::reference(2, 40.0),
            interference: None,
        }
    }
}

fn parse_number(key: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Config(format!("`{key}`: cannot parse `{raw}` as a number")))
}

fn parse_count(key: &str, raw: &str) -> Result<u32> {
    raw.parse::<u32>()
        .ok()
        .filter(|&v| v >= 1)
        .ok_or_else(|| Error::Config(format!("`{key}`: expected a positive integer, got `{raw}`")))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Config(format!(
                    "line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
            if entries.insert(key, value.trim()).is_some() {
                return Err(Error::Config(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }
        let mut cfg = Self::default();
        let s = &mut cfg.system;
        for (&key, &raw) in &entries {
            match key {
                "N" => s.n_antennas = parse_count(key, raw)?,
                "m" => s.nakagami_m = parse_count(key, raw)?,
                "eta" => s.eta = parse_number(key, raw)?,
                "alpha" => s.alpha = parse_number(key, raw)?,
                "d1" => s.d1 = parse_number(key, raw)?,
                "d2" => s.d2 = parse_number(key, raw)?,
                "P_dB" => s.p_db = parse_number(key, raw)?,
                "Rc" => s.rate = parse_number(key, raw)?,
                _ => {}
            }
        }
        if let Some(raw) = entries.get("PI_dB") {
            let mut interf = InterferenceParams {
                pi_db: parse_number("PI_dB", raw)?,
                d3: 10.0,
                d4: 10.0,
            };
            if let Some(raw) = entries.get("d3") {
                interf.d3 = parse_number("d3", raw)?;
            }
            if let Some(raw) = entries.get("d4") {
                interf.d4 = parse_number("d4", raw)?;
            }
            interf.validate()?;
            cfg.interference = Some(interf);
        } else if entries.contains_key("d3") || entries.contains_key("d4") {
            return Err(Error::Config("`d3`/`d4` given without `PI_dB`".into()));
        }
        cfg.system.validate()?;
        Ok(cfg)
    }

    /// Render as a config file that [`Config::parse`] reads back exactly.
    pub fn to_text(&self) -> String {
        let s = &self.system;
        let mut out = format!(
            "N={}\nm={}\neta={}\nalpha={}\nd1={}\nd2={}\nP_dB={}\nRc={}\n",
            s.n_antennas, s.nakagami_m, s.eta, s.alpha, s.d1, s.d2, s.p_db, s.rate
        );
        if let Some(i) = &self.interference {
            out.push_str(&format!("PI_dB={}\nd3={}\nd4={}\n", i.pi_db, i.d3, i.d4));
        }
        out
    }
}
