//! Bounds on the span of a real-rooted monic polynomial from its two leading coefficients.
//!
//! For `x^n + a1 x^(n-1) + a2 x^(n-2) + ...` the zeros have mean `-a1/n` and variance
//! `((n-1) a1² - 2n a2) / n²`, so the real-sample inequalities apply to the zero set.

use crate::error::{Error, Result};
use crate::report::{BoundReport, Evidence};

/// `x^n + a1 x^(n-1) + ... + an`, stored as `[a1, ..., an]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<f64>,
}

impl MonicPoly {
    /// From `[a1, ..., an]`; degree is the length.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial(format!("degree must be at least 2, got {}", coeffs.len())));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidPolynomial(format!("coefficient a{} is not finite", i + 1)));
        }
        Ok(MonicPoly { coeffs })
    }

    /// From `[1, a1, ..., an]`; the leading coefficient must be exactly 1.
    pub fn from_full(c: &[f64]) -> Result<Self> {
        match c.first() {
            Some(1.0) => Self::new(c[1..].to_vec()),
            Some(&lead) => Err(Error::InvalidPolynomial(format!("leading coefficient must be 1, got {lead}"))),
            None => Err(Error::InvalidPolynomial("no coefficients".into())),
        }
    }

    /// Expands `prod (x - r)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut c = vec![1.0];
        for &r in roots {
            c.push(0.0);
            for k in (1..c.len()).rev() {
                c[k] -= r * c[k - 1];
            }
        }
        MonicPoly { coeffs: c[1..].to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_k` for `k >= 1`.
    pub fn a(&self, k: usize) -> f64 {
        self.coeffs[k - 1]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// `[1, a1, ..., an]`.
    pub fn full_coefficients(&self) -> Vec<f64> {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(1.0);
        c.extend_from_slice(&self.coeffs);
        c
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(1.0, |acc, &k| acc * x + k)
    }

    /// `p(x + t)`, whose zeros are those of `p` shifted by `-t`.
    pub fn translated(&self, t: f64) -> Self {
        // Repeated synthetic division (Taylor shift).
        let mut c = self.full_coefficients();
        let n = c.len() - 1;
        for i in 0..n {
            for k in 1..=n - i {
                c[k] += t * c[k - 1];
            }
        }
        MonicPoly { coeffs: c[1..].to_vec() }
    }

    /// With real zeros, all zeros are nonnegative iff the coefficients alternate in sign
    /// (`(-1)^k a_k >= 0`).
    pub fn alternating_signs(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, &c)| if i % 2 == 0 { c <= 0.0 } else { c >= 0.0 })
    }
}

/// Mean and variance of the zeros.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootMoments {
    pub mean: f64,
    pub variance: f64,
}

pub fn coeff_moments(p: &MonicPoly) -> RootMoments {
    let n = p.degree() as f64;
    let (a1, a2) = (p.a(1), p.a(2));
    RootMoments {
        mean: -a1 / n,
        variance: ((n - 1.0) * a1 * a1 - 2.0 * n * a2) / (n * n),
    }
}

/// `(n-1) a1² - 2n a2`, clamped at zero when negative only by round-off.
fn variance_radicand(p: &MonicPoly) -> Result<f64> {
    let n = p.degree() as f64;
    let (a1, a2) = (p.a(1), p.a(2));
    let q = (n - 1.0) * a1 * a1 - 2.0 * n * a2;
    let scale = (n - 1.0) * a1 * a1 + 2.0 * n * a2.abs();
    if q >= 0.0 {
        Ok(q)
    } else if q >= -1e-12 * scale {
        Ok(0.0)
    } else {
        Err(Error::NotRealRooted(format!(
            "zero variance would be negative ({q:e}); a real-rooted polynomial needs (n-1) a1^2 >= 2n a2"
        )))
    }
}

/// `2s <= span <= sqrt(2n) s` with `s` the standard deviation of the zeros.
pub fn span_bounds(p: &MonicPoly) -> Result<BoundReport> {
    let q = variance_radicand(p)?;
    let n = p.degree() as f64;
    Ok(BoundReport::new("span", "popoviciu-nagy-roots", "span")
        .lower(2.0 / n * q.sqrt())
        .upper((2.0 * q / n).sqrt())
        .precondition("zeros are real", true, Evidence::CallerAsserted))
}

/// Refined span bounds for polynomials whose zeros are nonnegative with mean at most their
/// standard deviation. Three reports: the square-root lower form, the raw-moment lower form,
/// and the upper bound.
pub fn refined_span_bounds(p: &MonicPoly) -> Result<Vec<BoundReport>> {
    let q = variance_radicand(p)?;
    let n = p.degree();
    let nf = n as f64;
    let (a1, a2) = (p.a(1), p.a(2));
    let nonneg = p.alternating_signs();

    if a1 == 0.0 && nonneg {
        // Nonnegative zeros summing to zero are all zero.
        let zero = |r: BoundReport| {
            r.value(0.0)
                .precondition("zeros are real", true, Evidence::CallerAsserted)
                .require("zeros >= 0", true)
                .note("degenerate: every zero is 0")
        };
        return Ok(vec![
            zero(BoundReport::new("span-lower-sqrt-form", "positive-mean-roots", "span").lower(0.0)),
            zero(BoundReport::new("span-lower", "positive-mean-roots", "span").lower(0.0)),
            zero(BoundReport::new("span-upper", "positive-mean-roots", "span").upper(0.0)),
        ]);
    }

    let gate = |r: BoundReport| {
        let r = r
            .precondition("zeros are real", true, Evidence::CallerAsserted)
            .require("n >= 3", n >= 3)
            .require("zeros >= 0", nonneg)
            .require("a1 != 0", a1 != 0.0)
            .require("zeros not all equal", q > 0.0)
            .require("mean <= std dev: (n-2) a1^2 >= 2n a2", (nf - 2.0) * a1 * a1 >= 2.0 * nf * a2)
            .precondition("n a2 <= (n-2) a1^2", nf * a2 <= (nf - 2.0) * a1 * a1, Evidence::Informational);
        if r.applicable {
            r
        } else {
            r.note("advisory: preconditions not met; values are not guaranteed bounds")
        }
    };

    let raw = (2.0 * a2 - a1 * a1) / a1;
    let sqrt_form = BoundReport::new("span-lower-sqrt-form", "positive-mean-roots", "span")
        .lower(raw.sqrt())
        .inapplicable("square root of the raw-moment ratio; not scale invariant, kept for comparison only");
    let lower = gate(BoundReport::new("span-lower", "positive-mean-roots", "span").lower(raw));
    let upper = if n >= 3 {
        let w = (2.0 * nf * a2 - (nf - 2.0) * a1 * a1) / a1;
        (2.0 / nf * q - w * w / (nf * (nf - 2.0))).max(0.0)
    } else {
        f64::NAN
    };
    let upper = gate(BoundReport::new("span-upper", "positive-mean-roots", "span").upper(upper.sqrt()));
    Ok(vec![sqrt_form, lower, upper])
}
