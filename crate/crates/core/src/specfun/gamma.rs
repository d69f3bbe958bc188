//! Log-gamma and digamma on the positive real axis.

use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Euler–Mascheroni constant, `-psi(1)`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Arguments below these are shifted upward by recurrence before the
// asymptotic series is applied.
const LN_GAMMA_SHIFT: f64 = 15.0;
const DIGAMMA_SHIFT: f64 = 10.0;

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "ln_gamma",
            value: x,
            expected: "x > 0",
        });
    }
    let mut z = x;
    let mut ln_prod = 0.0;
    // Accumulate the product in linear space and take its log only when it
    // threatens to overflow.
    let mut prod = 1.0;
    while z < LN_GAMMA_SHIFT {
        prod *= z;
        if prod > 1e280 {
            ln_prod += prod.ln();
            prod = 1.0;
        }
        z += 1.0;
    }
    ln_prod += prod.ln();
    Ok(stirling(z) - ln_prod)
}

fn stirling(z: f64) -> f64 {
    let r = 1.0 / z;
    let r2 = r * r;
    let series = r
        * (1.0 / 12.0
            - r2 * (1.0 / 360.0
                - r2 * (1.0 / 1260.0
                    - r2 * (1.0 / 1680.0
                        - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360_360.0 - r2 / 156.0))))));
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// `Γ(x)` for `x > 0`. Overflows to `inf` for `x > ~171.6`.
pub fn gamma(x: f64) -> Result<f64> {
    ln_gamma(x).map(f64::exp)
}

/// Digamma `ψ(x) = d/dx ln Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "digamma",
            value: x,
            expected: "x > 0",
        });
    }
    let mut z = x;
    let mut shift = 0.0;
    while z < DIGAMMA_SHIFT {
        shift += 1.0 / z;
        z += 1.0;
    }
    let r2 = 1.0 / (z * z);
    let tail = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0
                        - r2 * (1.0 / 132.0 - r2 * (691.0 / 32_760.0 - r2 / 12.0))))));
    Ok(z.ln() - 0.5 / z - tail - shift)
}
