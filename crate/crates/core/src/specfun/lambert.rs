//! Principal branch of the Lambert W function.

use std::f64::consts::E;

use crate::error::{Error, Result};

const BRANCH_POINT: f64 = -1.0 / E;
const MAX_ITER: usize = 64;

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        // expansion about the branch point in p = sqrt(2(ex + 1))
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0))
    } else if x < 3.0 {
        x.ln_1p() * (1.0 - 0.2 * x.ln_1p() / (1.0 + x.ln_1p()))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

/// `W_0(x)` for `x >= -1/e`, solved by Halley iteration.
pub fn lambert_w0(x: f64) -> Result<f64> {
    // tolerate the rounding of -1/e itself
    if !(x >= BRANCH_POINT - 4.0 * f64::EPSILON) {
        return Err(Error::Domain {
            function: "lambert_w0",
            value: x,
            expected: "x >= -1/e",
        });
    }
    if x <= BRANCH_POINT {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut w = initial_guess(x);
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

/// `W_0(e^z)` for any real `z`; stays finite when `e^z` would overflow.
pub fn lambert_w0_exp(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(Error::Domain {
            function: "lambert_w0_exp",
            value: z,
            expected: "finite z",
        });
    }
    if z < 500.0 {
        return lambert_w0(z.exp());
    }
    // w + ln w = z, Newton from the two-term asymptote
    let mut w = z - z.ln();
    for _ in 0..MAX_ITER {
        let step = (w + w.ln() - z) / (1.0 + 1.0 / w);
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w {
            break;
        }
    }
    Ok(w)
}
