//! Closed-form time-split maximizers and a generic 1-D search.
//!
//! Each `lemmaN` returns the maximizer on `(0, 1)` of a fixed objective
//! family (see the matching `objective_lemmaN`). [`grid_search`] handles
//! everything without a closed form and serves as the oracle for the rest.

use std::f64::consts::E;

use crate::error::{Error, Result};
use crate::model::TimeSplit;
use crate::specfun::{lambert_w0, lambert_w0_exp};

/// Search interval edge; `τ ∈ {0, 1}` degenerates every objective.
pub const TAU_EPS: f64 = 1e-6;

/// How an optimal time split was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Grid,
    Golden,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Lemma1 => "lemma1",
            Method::Lemma2 => "lemma2",
            Method::Lemma3 => "lemma3",
            Method::Lemma4 => "lemma4",
            Method::Grid => "grid",
            Method::Golden => "golden",
        }
    }
}

/// An optimal time split with the objective value it achieves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptResult {
    pub tau_star: TimeSplit,
    pub objective_value: f64,
    pub method: Method,
    /// Set by [`grid_search`] when the objective is constant over the grid.
    pub flat: bool,
}

impl OptResult {
    pub fn closed_form(tau: f64, objective_value: f64, method: Method) -> Result<Self> {
        Ok(Self {
            tau_star: TimeSplit::new(tau)?,
            objective_value,
            method,
            flat: false,
        })
    }
}

fn positive(name: &'static str, b: f64) -> Result<()> {
    if b > 0.0 && b.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: b,
            reason: "must be positive and finite",
        })
    }
}

/// `g(x) = (1 - x)(1 - b(1 - x)/x)`.
pub fn objective_lemma1(b: f64, x: f64) -> f64 {
    (1.0 - x) * (1.0 - b * (1.0 - x) / x)
}

/// `g(x) = (1 - x) exp(-b/x)`.
pub fn objective_lemma2(b: f64, x: f64) -> f64 {
    (1.0 - x) * (-b / x).exp()
}

/// `g(x) = (1 - x) ln(1 + b x/(1 - x))`.
pub fn objective_lemma3(b: f64, x: f64) -> f64 {
    (1.0 - x) * (b * x / (1.0 - x)).ln_1p()
}

/// `g(x) = (1 - x)(ln(x/(1 - x)) + a)`.
pub fn objective_lemma4(a: f64, x: f64) -> f64 {
    (1.0 - x) * ((x / (1.0 - x)).ln() + a)
}

/// Maximizer of [`objective_lemma1`]: `sqrt(b/(b + 1))`.
pub fn lemma1(b: f64) -> Result<f64> {
    positive("b", b)?;
    Ok((b / (b + 1.0)).sqrt())
}

/// Maximizer of [`objective_lemma2`]: `(sqrt(b² + 4b) - b)/2`.
///
/// Written as `2b/(sqrt(b² + 4b) + b)` to avoid cancellation at large `b`.
pub fn lemma2(b: f64) -> Result<f64> {
    positive("b", b)?;
    Ok(2.0 * b / ((b * b + 4.0 * b).sqrt() + b))
}

/// Inflection point `b/(b + 2)` of [`objective_lemma2`]; the objective is
/// convex below it and concave above.
pub fn lemma2_inflection(b: f64) -> f64 {
    b / (b + 2.0)
}

/// Maximizer of [`objective_lemma3`]:
/// `(y - 1)/(b + y - 1)` with `y = exp(W((b - 1)/e) + 1)`.
pub fn lemma3(b: f64) -> Result<f64> {
    positive("b", b)?;
    let y = (lambert_w0((b - 1.0) / E)? + 1.0).exp();
    Ok((y - 1.0) / (b + y - 1.0))
}

/// Maximizer of [`objective_lemma4`]:
/// `e^s/(e^s + 1)` with `s = W(e^{a-1}) + 1 - a`.
///
/// Since `e^{-s} = W(e^{a-1})` this equals `1/(1 + W(e^{a-1}))`, which is
/// what is evaluated; it stays finite for any real `a`.
pub fn lemma4(a: f64) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "must be finite",
        });
    }
    let w = lambert_w0_exp(a - 1.0)?;
    Ok(1.0 / (1.0 + w))
}

/// Coarse-grid plus golden-section maximizer on `[TAU_EPS, 1 - TAU_EPS]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSearch {
    /// Coarse grid size.
    pub points: usize,
    /// Golden-section iterations on the bracket around the best grid point;
    /// zero disables refinement.
    pub golden_iterations: usize,
}

impl Default for GridSearch {
    fn default() -> Self {
        Self {
            points: 2048,
            golden_iterations: 100,
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn checked<F: FnMut(f64) -> Result<f64>>(f: &mut F, x: f64) -> Result<f64> {
    let v = f(x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

/// Maximize `objective` over `τ ∈ [1e-6, 1 - 1e-6]`.
///
/// The coarse grid locates the best cell even for multimodal objectives;
/// golden-section refinement then assumes unimodality inside the
/// bracketing cells.
pub fn grid_search<F>(mut objective: F, search: &GridSearch) -> Result<OptResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = search.points.max(3);
    let lo = TAU_EPS;
    let hi = 1.0 - TAU_EPS;
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    let mut worst = f64::INFINITY;
    for i in 0..n {
        let x = lo + step * i as f64;
        let v = checked(&mut objective, x)?;
        if v > best.1 {
            best = (i, v);
        }
        worst = worst.min(v);
    }
    let (i, v) = best;
    let x_grid = lo + step * i as f64;
    if best.1 - worst <= 1e-15 * best.1.abs().max(1e-300) {
        return Ok(OptResult {
            tau_star: TimeSplit::new(x_grid)?,
            objective_value: v,
            method: Method::Grid,
            flat: true,
        });
    }
    if search.golden_iterations == 0 {
        return Ok(OptResult {
            tau_star: TimeSplit::new(x_grid)?,
            objective_value: v,
            method: Method::Grid,
            flat: false,
        });
    }
    let mut a = lo + step * i.saturating_sub(1) as f64;
    let mut b = (lo + step * (i + 1).min(n - 1) as f64).min(hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = checked(&mut objective, c)?;
    let mut fd = checked(&mut objective, d)?;
    for _ in 0..search.golden_iterations {
        if (b - a).abs() <= 1e-13 {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = checked(&mut objective, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = checked(&mut objective, d)?;
        }
    }
    let (x_ref, v_ref) = if fc >= fd { (c, fc) } else { (d, fd) };
    // keep the grid point if refinement did not improve on it
    let (x, v, method) = if v_ref >= v {
        (x_ref, v_ref, Method::Golden)
    } else {
        (x_grid, v, Method::Grid)
    };
    Ok(OptResult {
        tau_star: TimeSplit::new(x)?,
        objective_value: v,
        method,
        flat: false,
    })
}

/// [`grid_search`] for an infallible objective.
pub fn maximize<F: FnMut(f64) -> f64>(mut objective: F, search: &GridSearch) -> Result<OptResult> {
    grid_search(|x| Ok(objective(x)), search)
}
