//! Modified Bessel functions of the second kind, integer order.
//!
//! `K_0` and `K_1` come from Temme's series for `x <= 2` and Steed's
//! continued fraction for `x > 2`; higher orders use upward recurrence,
//! which is stable for `K`. The recurrence runs on ratios so that large
//! orders at small arguments do not overflow before the final scaling.

use std::f64::consts::PI;

use super::gamma::EULER_GAMMA;
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

fn check(function: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function,
            value: x,
            expected: "x > 0",
        });
    }
    Ok(())
}

/// Temme's series for `K_0(x)` and `K_1(x)`, valid for small `x`.
fn k01_series(x: f64) -> (f64, f64) {
    let x2 = 0.5 * x;
    let d = -x2.ln();
    let mut ff = d - EULER_GAMMA;
    let mut sum = ff;
    let mut p = 0.5;
    let mut q = 0.5;
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi);
        c *= dd / fi;
        p /= fi;
        q /= fi;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

/// Steed's continued fraction for `e^x K_0(x)` and `e^x K_1(x)`, `x >= 2`.
fn k01_scaled_cf(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// `(e^x K_0(x), e^x K_1(x))`.
fn k01_scaled(x: f64) -> (f64, f64) {
    if x <= 2.0 {
        let (k0, k1) = k01_series(x);
        let ex = x.exp();
        (k0 * ex, k1 * ex)
    } else {
        k01_scaled_cf(x)
    }
}

/// `ln(e^x K_n(x))`, computed without intermediate overflow.
fn ln_scaled(order: u32, x: f64) -> f64 {
    let (k0, k1) = k01_scaled(x);
    if order == 0 {
        return k0.ln();
    }
    // ratio r_k = K_k / K_{k-1}; r_{k+1} = 1/r_k + 2k/x
    let mut ratio = k1 / k0;
    let mut prod = ratio;
    let mut ln_acc = k0.ln();
    for k in 1..order {
        ratio = 1.0 / ratio + 2.0 * k as f64 / x;
        prod *= ratio;
        if prod > 1e250 {
            ln_acc += prod.ln();
            prod = 1.0;
        }
    }
    ln_acc + prod.ln()
}

/// `K_n(x)` for integer `n >= 0` and `x > 0`. Over/underflows to `inf`/`0`
/// outside the f64 range; use [`ln_bessel_k`] or [`bessel_k_scaled`] there.
pub fn bessel_k(order: u32, x: f64) -> Result<f64> {
    check("bessel_k", x)?;
    Ok((ln_scaled(order, x) - x).exp())
}

/// Exponentially scaled `e^x K_n(x)`.
pub fn bessel_k_scaled(order: u32, x: f64) -> Result<f64> {
    check("bessel_k_scaled", x)?;
    if order <= 1 {
        let (k0, k1) = k01_scaled(x);
        return Ok(if order == 0 { k0 } else { k1 });
    }
    Ok(ln_scaled(order, x).exp())
}

/// `ln K_n(x)`.
pub fn ln_bessel_k(order: u32, x: f64) -> Result<f64> {
    check("ln_bessel_k", x)?;
    Ok(ln_scaled(order, x) - x)
}
