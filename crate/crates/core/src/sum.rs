//! Compensated summation helpers.

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Signed terms held as `(sign, ln|term|)`, summed after rescaling by the
/// largest magnitude so that neither overflow nor underflow of individual
/// terms corrupts the result.
#[derive(Debug, Clone, Default)]
pub(crate) struct LogTerms {
    terms: Vec<(f64, f64)>,
}

/// Outcome of a [`LogTerms`] sum.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSum {
    pub value: f64,
    /// Decimal digits lost to cancellation, `log10(Σ|t| / |Σ t|)`.
    pub digits_lost: f64,
}

impl LogTerms {
    pub fn push(&mut self, sign: f64, ln_mag: f64) {
        if sign != 0.0 && ln_mag > f64::NEG_INFINITY {
            self.terms.push((sign.signum(), ln_mag));
        }
    }

    /// Push `sign · e^{ln_mag} · factor` for a finite real `factor`.
    pub fn push_scaled(&mut self, sign: f64, ln_mag: f64, factor: f64) {
        if factor != 0.0 {
            self.push(sign * factor.signum(), ln_mag + factor.abs().ln());
        }
    }

    pub fn sum(&self) -> LogSum {
        let top = self
            .terms
            .iter()
            .map(|t| t.1)
            .fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return LogSum {
                value: 0.0,
                digits_lost: 0.0,
            };
        }
        let mut signed = Neumaier::default();
        let mut magnitude = Neumaier::default();
        for &(s, l) in &self.terms {
            let v = (l - top).exp();
            signed.add(s * v);
            magnitude.add(v);
        }
        let s = signed.value();
        let digits_lost = if s == 0.0 {
            f64::INFINITY
        } else {
            (magnitude.value() / s.abs()).log10()
        };
        LogSum {
            value: s.signum() * (s.abs().ln() + top).exp(),
            digits_lost,
        }
    }
}
