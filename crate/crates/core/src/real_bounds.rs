//! Variance inequalities for finite real samples.
//!
//! Every function returns [`BoundReport`]s whose `value` is the bounded quantity computed from
//! the sample, so `report.holds()` is the verdict. Preconditions are recorded per report; when
//! they fail the values are still filled in where arithmetically defined, but the report is
//! marked inapplicable.

use crate::complex_stats::validate_subset;
use crate::error::{Error, Result};
use crate::report::{BoundReport, Evidence};

/// A real sample with its moments cached (all moments use the `1/n` convention).
#[derive(Clone, Debug, PartialEq)]
pub struct RealSample {
    values: Vec<f64>,
    min: f64,
    max: f64,
    mean: f64,
    var: f64,
    m4: f64,
}

impl RealSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let n = values.len() as f64;
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        // Clamp guards against the rounded mean escaping [min, max].
        let mean = (values.iter().sum::<f64>() / n).clamp(min, max);
        let (mut var, mut m4) = (0.0, 0.0);
        for x in &values {
            let d2 = (x - mean) * (x - mean);
            var += d2;
            m4 += d2 * d2;
        }
        Ok(RealSample {
            values,
            min,
            max,
            mean,
            var: var / n,
            m4: m4 / n,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn range(&self) -> f64 {
        self.max - self.min
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.var
    }

    pub fn std_dev(&self) -> f64 {
        self.var.sqrt()
    }

    /// Fourth central moment.
    pub fn m4(&self) -> f64 {
        self.m4
    }

    /// Raw second moment `s² + mean²`.
    pub fn m2_raw(&self) -> f64 {
        self.var + self.mean * self.mean
    }

    /// `m4 / s⁴`; `None` when the variance is zero.
    pub fn kurtosis(&self) -> Option<f64> {
        (self.var > 0.0).then(|| self.m4 / (self.var * self.var))
    }
}

/// Popoviciu and Nagy bounds plus the two-sided refinement in terms of the mean's position.
pub fn classic_bounds(sample: &RealSample) -> Vec<BoundReport> {
    let n = sample.len();
    let nf = n as f64;
    let (a, b, m, s2) = (sample.min, sample.max, sample.mean, sample.var);
    let r2 = (b - a) * (b - a);
    let offset = m - (a + b) / 2.0;
    let refined_lower = if n >= 3 {
        r2 / (2.0 * nf) + 2.0 / (nf - 2.0) * offset * offset
    } else {
        f64::NAN
    };
    vec![
        BoundReport::new("popoviciu", "popoviciu", "variance")
            .upper(r2 / 4.0)
            .value(s2)
            .require("n >= 2", n >= 2),
        BoundReport::new("nagy", "nagy", "variance")
            .lower(r2 / (2.0 * nf))
            .value(s2)
            .require("n >= 2", n >= 2),
        BoundReport::new("mean-position-lower", "refined-nagy", "variance")
            .lower(refined_lower)
            .value(s2)
            .require("n >= 3", n >= 3),
        BoundReport::new("mean-position-upper", "bhatia-davis", "variance")
            .upper((b - m) * (m - a))
            .value(s2)
            .require("n >= 2", n >= 2),
    ]
}

/// Refinements for samples with `0 <= min < mean <= s`.
pub fn refined_bounds_positive_mean(sample: &RealSample) -> Vec<BoundReport> {
    let n = sample.len();
    let nf = n as f64;
    let (a, b, m, s2) = (sample.min, sample.max, sample.mean, sample.var);
    let r2 = (b - a) * (b - a);
    let c = (s2 - m * m) / (2.0 * m);
    let with_pre = |r: BoundReport| {
        let r = r
            .require("min >= 0", a >= 0.0)
            .require("min < mean", a < m)
            .require("mean <= s", m <= sample.std_dev());
        if m == 0.0 {
            r.inapplicable("mean is zero")
        } else {
            r
        }
    };
    vec![
        with_pre(
            BoundReport::new("positive-mean-upper", "positive-mean-refinement", "range^2/4")
                .lower(s2 + c * c)
                .value(r2 / 4.0),
        ),
        with_pre(
            BoundReport::new("positive-mean-lower", "positive-mean-refinement", "range^2/(2n)")
                .upper(if n >= 3 { s2 - 2.0 / (nf - 2.0) * c * c } else { f64::NAN })
                .value(r2 / (2.0 * nf))
                .require("n >= 3", n >= 3),
        ),
        with_pre(
            BoundReport::new("raw-moment-range", "positive-mean-refinement", "range")
                .lower(sample.m2_raw() / m)
                .value(b - a),
        ),
    ]
}

/// Refinements for samples with a negative minimum and a mean that dominates the spread:
/// `min < 0`, `mean > 0`, `mean² >= (n/2) s²`.
pub fn refined_bounds_negative_min(sample: &RealSample) -> Vec<BoundReport> {
    let n = sample.len();
    let nf = n as f64;
    let (a, b, m, s2) = (sample.min, sample.max, sample.mean, sample.var);
    let r2 = (b - a) * (b - a);
    let c = (m * m - nf / 2.0 * s2) / (2.0 * m);
    let with_pre = |r: BoundReport| {
        r.require("min < 0", a < 0.0)
            .require("mean > 0", m > 0.0)
            .require("mean^2 >= (n/2) s^2", m * m >= nf / 2.0 * s2)
            .precondition("2 mean >= n s", 2.0 * m >= nf * sample.std_dev(), Evidence::Informational)
    };
    vec![
        with_pre(
            BoundReport::new("negative-min-upper", "negative-min-refinement", "range^2/4")
                .lower(s2 + c * c)
                .value(r2 / 4.0),
        ),
        with_pre(
            BoundReport::new("negative-min-lower", "negative-min-refinement", "range^2/(2n)")
                .upper(if n >= 3 { s2 - 2.0 / (nf - 2.0) * c * c } else { f64::NAN })
                .value(r2 / (2.0 * nf))
                .require("n >= 3", n >= 3),
        ),
    ]
}

/// Tighter Popoviciu-type bound for samples with kurtosis at least 3, plus the unconditional
/// fourth-moment inequality it rests on.
pub fn kurtosis_gated_bound(sample: &RealSample) -> Vec<BoundReport> {
    let (a, b, m, s2) = (sample.min, sample.max, sample.mean, sample.var);
    let spread = b - a;
    let inner = (m - a) * (b - m);
    let gate = |r: BoundReport| match sample.kurtosis() {
        Some(k) => r.require("s^2 > 0", true).require("m4 / s^4 >= 3", k >= 3.0 * (1.0 - 1e-12)),
        None => r.require("s^2 > 0", false).note("kurtosis undefined for zero variance"),
    };
    vec![
        gate(
            BoundReport::new("kurtosis-gated", "kurtosis-refinement", "variance")
                .upper(spread * (inner / 6.0).sqrt())
                .value(s2),
        ),
        gate(
            BoundReport::new("kurtosis-gated-range", "kurtosis-refinement", "variance")
                .upper(spread * spread / (2.0 * 6f64.sqrt()))
                .value(s2),
        ),
        BoundReport::new("fourth-moment", "fourth-moment", "m4 + 3 s^4")
            .upper(spread * spread * inner)
            .value(sample.m4 + 3.0 * s2 * s2),
    ]
}

/// Samuelson-type location bounds for the extreme observations.
pub fn extreme_value_bounds(sample: &RealSample) -> Result<Vec<BoundReport>> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let (m, s) = (sample.mean, sample.std_dev());
    let k = ((n - 1) as f64).sqrt();
    Ok(vec![
        BoundReport::new("sample-min", "samuelson", "min")
            .lower(m - k * s)
            .upper(m - s / k)
            .value(sample.min)
            .require("n >= 2", true),
        BoundReport::new("sample-max", "samuelson", "max")
            .lower(m + s / k)
            .upper(m + k * s)
            .value(sample.max)
            .require("n >= 2", true),
    ])
}

/// `s² >= (r / (n - r)) (subset_mean - mean)²` for a subset of size `r < n`.
pub fn mallows_richter(sample: &RealSample, subset: &[usize]) -> Result<BoundReport> {
    let n = sample.len();
    validate_subset(subset, n)?;
    let r = subset.len();
    let report = BoundReport::new("mallows-richter", "mallows-richter", "variance").value(sample.var);
    if r == n {
        return Ok(report.require("r <= n - 1", false));
    }
    let alpha = subset.iter().map(|&i| sample.values[i]).sum::<f64>() / r as f64;
    let d = alpha - sample.mean;
    Ok(report
        .lower(r as f64 / (n - r) as f64 * d * d)
        .require("r <= n - 1", true))
}
