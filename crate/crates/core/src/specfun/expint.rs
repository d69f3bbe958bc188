//! Exponential integral `Ei(x)` for negative arguments.

use super::gamma::EULER_GAMMA;
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// `e^b E1(b)` for `b > 0`: power series for `b <= 1`, Lentz continued
/// fraction beyond.
fn e1_scaled(b: f64) -> f64 {
    if b <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..100 {
            let kf = k as f64;
            term *= -b / kf;
            let del = term / kf;
            sum += del;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        (-EULER_GAMMA - b.ln() - sum) * b.exp()
    } else {
        let mut bb = b + 1.0;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / bb;
        let mut h = d;
        for i in 1..10_000 {
            let a = -((i * i) as f64);
            bb += 2.0;
            d = 1.0 / (a * d + bb);
            c = bb + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        h
    }
}

fn check(function: &'static str, x: f64) -> Result<()> {
    if !(x < 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function,
            value: x,
            expected: "x < 0",
        });
    }
    Ok(())
}

/// `Ei(x)` for `x < 0` (equal to `-E1(-x)`).
pub fn expint_ei(x: f64) -> Result<f64> {
    check("expint_ei", x)?;
    let b = -x;
    if b <= 1.0 {
        Ok(-e1_scaled(b) * x.exp())
    } else {
        Ok(-e1_scaled(b) * (-b).exp())
    }
}

/// `e^{-x} Ei(x)` for `x < 0`; finite for arbitrarily large `|x|`.
pub fn expint_ei_scaled(x: f64) -> Result<f64> {
    check("expint_ei_scaled", x)?;
    Ok(-e1_scaled(-x))
}
