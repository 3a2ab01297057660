//! Dispersion statistics of finite sets of complex numbers.
//!
//! For points `z_1..z_n` with mean `m`:
//!
//! * `sz2 = (1/n) Σ |z_i - m|²` (variance),
//! * `s2 = (1/n) Σ (z_i - m)²` (pseudo-variance, complex),
//! * `sigma_z2 = (|s2| + sz2) / 2`.
//!
//! All sums run left to right in index order; tests compare with relative tolerances.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::report::{le_tol, BoundReport};

/// Default relative tolerance for [`collinearity_test`].
pub const DEFAULT_COLLINEARITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSample {
    points: Vec<Complex64>,
}

impl ComplexSample {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(i) = points.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(ComplexSample { points })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    pub fn from_reals(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &ComplexSample) -> ComplexSample {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        ComplexSample { points }
    }

    /// Largest squared pairwise distance, `max |z_j - z_k|²`.
    pub fn max_gap2(&self) -> f64 {
        let mut best = 0.0f64;
        for (j, a) in self.points.iter().enumerate() {
            for b in &self.points[j + 1..] {
                best = best.max((a - b).norm_sqr());
            }
        }
        best
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DispersionSummary {
    pub mean: Complex64,
    pub sz2: f64,
    pub s2: Complex64,
    pub sigma_z2: f64,
}

pub fn mean(points: &[Complex64]) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for z in points {
        sum += z;
    }
    sum / points.len() as f64
}

pub fn dispersion(sample: &ComplexSample) -> DispersionSummary {
    let points = sample.points();
    let n = points.len() as f64;
    let m = mean(points);
    let mut sz2 = 0.0;
    let mut s2 = Complex64::new(0.0, 0.0);
    for z in points {
        let d = z - m;
        sz2 += d.norm_sqr();
        s2 += d * d;
    }
    let sz2 = sz2 / n;
    let s2 = s2 / n;
    DispersionSummary {
        mean: m,
        sz2,
        s2,
        sigma_z2: 0.5 * (s2.norm() + sz2),
    }
}

/// Variance of the union of two samples from their individual means and variances.
pub fn pooled_variance(a: &ComplexSample, b: &ComplexSample) -> f64 {
    let (da, db) = (dispersion(a), dispersion(b));
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let n = n1 + n2;
    (n1 / n) * da.sz2 + (n2 / n) * db.sz2 + (n1 * n2 / (n * n)) * (da.mean - db.mean).norm_sqr()
}

/// Checks that `indices` is a nonempty set of distinct positions below `n`.
pub(crate) fn validate_subset(indices: &[usize], n: usize) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::InvalidSubset("subset is empty".into()));
    }
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n {
            return Err(Error::InvalidSubset(format!("index {i} out of range for {n} points")));
        }
        if seen[i] {
            return Err(Error::InvalidSubset(format!("duplicate index {i}")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// `|mean(subset) - mean|² <= ((n - r) / r) sigma_z2` for any subset of size `r`.
pub fn subset_mean_bound(sample: &ComplexSample, subset: &[usize]) -> Result<BoundReport> {
    let n = sample.len();
    validate_subset(subset, n)?;
    let r = subset.len();
    let d = dispersion(sample);
    let chosen: Vec<Complex64> = subset.iter().map(|&i| sample.points()[i]).collect();
    let lhs = (mean(&chosen) - d.mean).norm_sqr();
    let rhs = ((n - r) as f64 / r as f64) * d.sigma_z2;
    Ok(BoundReport::new("subset-mean", "mallows-richter-complex", "squared subset-mean deviation")
        .upper(rhs)
        .value(lhs)
        .require("1 <= r <= n", true))
}

/// `sigma_z2 >= max |z_j - z_k|² / (2n)`.
pub fn pairwise_gap_bound(sample: &ComplexSample) -> BoundReport {
    let n = sample.len();
    let d = dispersion(sample);
    let report = BoundReport::new("pairwise-gap", "nagy-complex", "sigma_z^2")
        .lower(sample.max_gap2() / (2.0 * n as f64))
        .value(d.sigma_z2);
    report.require("n >= 2", n >= 2)
}

/// Popoviciu analogue: `sigma_z2 <= max |z_i - z_j|² / 4`. The same bound for `sz2` is
/// reported alongside for comparison; it is not valid in general and is flagged inapplicable.
pub fn popoviciu_analogue(sample: &ComplexSample) -> Vec<BoundReport> {
    let n = sample.len();
    let d = dispersion(sample);
    let cap = sample.max_gap2() / 4.0;
    vec![
        BoundReport::new("popoviciu-complex", "popoviciu-complex", "sigma_z^2")
            .upper(cap)
            .value(d.sigma_z2)
            .require("n >= 2", n >= 2),
        BoundReport::new("popoviciu-complex-sz2", "popoviciu-complex", "S_z^2")
            .upper(cap)
            .value(d.sz2)
            .inapplicable("S_z^2 <= max|z_i - z_j|^2/4 does not hold for every point set; shown for comparison"),
    ]
}

/// Samuelson-type bound for every point: `sigma_z2 >= |z_j - mean|² / (n - 1)`.
pub fn samuelson_bounds(sample: &ComplexSample) -> Vec<BoundReport> {
    let n = sample.len();
    let d = dispersion(sample);
    sample
        .points()
        .iter()
        .enumerate()
        .map(|(j, z)| {
            let lower = if n >= 2 { (z - d.mean).norm_sqr() / (n - 1) as f64 } else { f64::NAN };
            BoundReport::new(&format!("samuelson[{j}]"), "samuelson-complex", "sigma_z^2")
                .lower(lower)
                .value(d.sigma_z2)
                .require("n >= 2", n >= 2)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Collinearity {
    pub collinear: bool,
    pub summary: DispersionSummary,
}

/// Points are collinear iff `sz2 = |s2|`; decided as `sz2 - |s2| <= tol * max(sz2, 1)`.
pub fn collinearity_test(sample: &ComplexSample, tol: f64) -> Result<Collinearity> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::NegativeTolerance(tol));
    }
    let summary = dispersion(sample);
    let collinear = sample.len() <= 2 || summary.sz2 - summary.s2.norm() <= tol * summary.sz2.max(1.0);
    Ok(Collinearity { collinear, summary })
}

/// Ordering facts every summary satisfies: `|s2| <= sigma_z2 <= sz2`.
pub fn summary_is_ordered(d: &DispersionSummary, rel: f64) -> bool {
    le_tol(d.s2.norm(), d.sigma_z2, rel) && le_tol(d.sigma_z2, d.sz2, rel)
}
