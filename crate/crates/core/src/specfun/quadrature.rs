//! Globally adaptive Gauss–Kronrod (7/15) quadrature, with a
//! semi-infinite driver for integrands on `(0, ∞)`.
//!
//! The half-line is split at a pivot `p`. The head `[0, p]` is mapped by
//! `x = p·u²`, which flattens `x^{-1/2}` and logarithmic endpoint
//! singularities; the tail `[p, ∞)` is mapped by `x = p/t`. Both pieces
//! share one priority list so effort goes wherever the error is.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and effort limits for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Split point for the semi-infinite driver. `None` picks one by
    /// scanning `|x f(x)|` on a log grid.
    pub pivot: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_subdivisions: 2000,
            pivot: None,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: rel_tol,
                reason: "must be > 0",
            });
        }
        if !(abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "abs_tol",
                value: abs_tol,
                reason: "must be > 0",
            });
        }
        if max_subdivisions == 0 {
            return Err(Error::InvalidParameter {
                name: "max_subdivisions",
                value: 0.0,
                reason: "must be >= 1",
            });
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            pivot: None,
        })
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_pivot(mut self, pivot: f64) -> Self {
        self.pivot = Some(pivot);
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * res_abs);
    }
    e
}

fn eval<F: FnMut(f64) -> f64>(f: &mut F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

fn kronrod15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let error = rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale);
    Ok(Segment {
        a,
        b,
        value: res_k * half,
        error,
    })
}

/// Globally adaptive integration over the union of `pieces`.
fn adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    pieces: &[(f64, f64)],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let mut segs = Vec::with_capacity(spec.max_subdivisions + pieces.len());
    for &(a, b) in pieces {
        segs.push(kronrod15(&mut f, a, b)?);
    }
    let mut subdivisions = 0;
    loop {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        if error <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(total);
        }
        let (idx, worst) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, s)| (i, *s))
            .expect("at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        let too_narrow = mid <= worst.a || mid >= worst.b;
        if subdivisions >= spec.max_subdivisions || too_narrow {
            // Accept if the remaining error sits at the roundoff floor.
            let floor = 1e3 * f64::EPSILON * segs.iter().map(|s| s.value.abs()).sum::<f64>();
            if error <= floor {
                return Ok(total);
            }
            return Err(Error::NonConvergence {
                estimate: total,
                error,
                subdivisions,
            });
        }
        let left = kronrod15(&mut f, worst.a, mid)?;
        let right = kronrod15(&mut f, mid, worst.b)?;
        segs[idx] = left;
        segs.push(right);
        subdivisions += 1;
    }
}

/// `∫_a^b f(x) dx` on a finite interval.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    adaptive(f, &[(a, b)], spec)
}

fn auto_pivot<F: FnMut(f64) -> f64>(f: &mut F) -> f64 {
    let mut best = (0.0, 1.0);
    for k in -40..=40 {
        let x = 10f64.powf(k as f64 * 0.25);
        let v = (x * f(x)).abs();
        if v.is_finite() && v > best.0 {
            best = (v, x);
        }
    }
    best.1
}

/// `∫_0^∞ f(x) dx`.
///
/// `f` must be finite at every interior point it is sampled at; for
/// arguments far in the tail the integrand should underflow to zero
/// rather than produce `0·∞`.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let pivot = match spec.pivot {
        Some(p) if p > 0.0 && p.is_finite() => p,
        Some(p) => {
            return Err(Error::InvalidParameter {
                name: "pivot",
                value: p,
                reason: "must be positive and finite",
            })
        }
        None => auto_pivot(&mut f),
    };
    // s in (0,1]: head, x = p s^2; s in (1,2): tail, x = p / (2 - s)
    let g = |s: f64| {
        if s <= 1.0 {
            let x = pivot * s * s;
            if x == 0.0 {
                0.0
            } else {
                2.0 * pivot * s * f(x)
            }
        } else {
            let t = 2.0 - s;
            let x = pivot / t;
            if x.is_infinite() {
                0.0
            } else {
                let v = f(x);
                // exponentially decaying tails underflow before 1/t^2 blows up
                if v == 0.0 {
                    0.0
                } else {
                    pivot * v / (t * t)
                }
            }
        }
    };
    adaptive(g, &[(0.0, 1.0), (1.0, 2.0)], spec)
}
