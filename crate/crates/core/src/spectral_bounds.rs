//! Eigenvalue and spread localization for matrices with real spectra, using only
//! `n`, `tr A` and `tr A²`.
//!
//! With `B = A - (tr A / n) I`, the eigenvalues have mean `tr A / n` and variance
//! `tr B² / n`, so every real-sample inequality turns into a statement about the spectrum.

use num_complex::Complex64;

use crate::complex_stats::ComplexSample;
use crate::enclosing_disk::{min_enclosing_disk, Disk};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DenseMatrix};
use crate::oracle;
use crate::report::{BoundReport, Evidence};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralSummary {
    pub n: usize,
    pub tr_a: f64,
    /// Trace of `A²`.
    pub tr_a2: f64,
    /// Trace of `B²`, `tr A² - (tr A)² / n`.
    pub tr_b2: f64,
    pub mean: f64,
    /// Variance of the eigenvalues, `tr B² / n`.
    pub s_lambda2: f64,
}

impl SpectralSummary {
    pub fn from_traces(n: usize, tr_a: f64, tr_a2: f64) -> Self {
        let nf = n as f64;
        let tr_b2 = tr_a2 - tr_a * tr_a / nf;
        SpectralSummary {
            n,
            tr_a,
            tr_a2,
            tr_b2,
            mean: tr_a / nf,
            s_lambda2: tr_b2 / nf,
        }
    }

    /// `tr B²` with round-off negatives clamped; errors when clearly negative.
    fn real_tr_b2(&self) -> Result<f64> {
        if self.tr_b2 >= 0.0 {
            Ok(self.tr_b2)
        } else if self.tr_b2 >= -1e-12 * self.tr_a2.abs().max(f64::MIN_POSITIVE) {
            Ok(0.0)
        } else {
            Err(Error::SpectrumNotReal(self.tr_b2))
        }
    }
}

/// Trace summary; `tr A²` is `Σ a_ij a_ji`, no eigendecomposition involved.
pub fn summarize(m: &DenseMatrix) -> SpectralSummary {
    let n = m.dim();
    let mut tr_a = 0.0;
    let mut tr_a2 = 0.0;
    for i in 0..n {
        tr_a += m.get(i, i);
        for j in 0..n {
            tr_a2 += m.get(i, j) * m.get(j, i);
        }
    }
    let mut s = SpectralSummary::from_traces(n, tr_a, tr_a2);
    if s.tr_b2 < 0.0 && m.is_symmetric(1e-12) {
        // Symmetric input has a real spectrum; a negative value is round-off.
        s.tr_b2 = 0.0;
        s.s_lambda2 = 0.0;
    }
    s
}

/// `sqrt(4 tr B² / n) <= spread <= sqrt(2 tr B²)`.
pub fn spread_sandwich(s: &SpectralSummary) -> Result<BoundReport> {
    let b2 = s.real_tr_b2()?;
    let nf = s.n as f64;
    Ok(BoundReport::new("spread-sandwich", "popoviciu-nagy-spectral", "spread")
        .lower((4.0 * b2 / nf).sqrt())
        .upper((2.0 * b2).sqrt())
        .require("n >= 2", s.n >= 2))
}

/// What is known about the sign of the smallest eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumSign {
    Nonnegative(Evidence),
    HasNegative(Evidence),
    Unknown,
}

/// Decides the sign of the smallest eigenvalue of a symmetric matrix by a diagonally
/// pivoted Cholesky factorization (semidefinite up to a relative tolerance).
pub fn spectrum_sign_symmetric(m: &DenseMatrix) -> Result<SpectrumSign> {
    let n = m.dim();
    if !m.is_symmetric(1e-12) {
        return Err(Error::NotSymmetric(m.max_asymmetry()));
    }
    let tol = 1e-12 * m.max_abs().max(f64::MIN_POSITIVE) * n as f64;
    let mut a: Vec<f64> = m.data().to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let (pos, &p) = active
            .iter()
            .enumerate()
            .max_by(|x, y| a[x.1 * n + x.1].total_cmp(&a[y.1 * n + y.1]))
            .expect("nonempty");
        let pivot = a[p * n + p];
        if pivot <= tol {
            // Remaining Schur complement must vanish for semidefiniteness.
            let residual = active
                .iter()
                .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                .fold(0.0f64, |w, (i, j)| w.max(a[i * n + j].abs()));
            let sign = if pivot < -tol || residual > tol {
                SpectrumSign::HasNegative(Evidence::Computed)
            } else {
                SpectrumSign::Nonnegative(Evidence::Computed)
            };
            return Ok(sign);
        }
        active.swap_remove(pos);
        for &i in &active {
            let f = a[i * n + p] / pivot;
            for &j in &active {
                a[i * n + j] -= f * a[p * n + j];
            }
        }
    }
    Ok(SpectrumSign::Nonnegative(Evidence::Computed))
}

fn sign_precondition(r: BoundReport, label: &str, sign: SpectrumSign, want_nonneg: bool) -> BoundReport {
    match (sign, want_nonneg) {
        (SpectrumSign::Nonnegative(ev), true) | (SpectrumSign::HasNegative(ev), false) => r.precondition(label, true, ev),
        (SpectrumSign::Nonnegative(ev), false) | (SpectrumSign::HasNegative(ev), true) => r.precondition(label, false, ev),
        (SpectrumSign::Unknown, _) => r
            .precondition(label, false, Evidence::CallerAsserted)
            .note("spectrum sign unknown; assert it or supply a symmetric matrix"),
    }
}

/// Refined spread bounds for spectra that are nonnegative, or that have a negative minimum
/// but a dominant mean. All four are always emitted; failing preconditions make them advisory.
pub fn refined_spread_bounds(s: &SpectralSummary, sign: SpectrumSign) -> Vec<BoundReport> {
    let n = s.n;
    let nf = n as f64;
    let (t, t2, b2) = (s.tr_a, s.tr_a2, s.tr_b2);
    let tt = t * t;
    let na = |r: BoundReport| {
        if t == 0.0 {
            r.inapplicable("trace is zero")
        } else {
            r
        }
    };

    let nonneg = |r: BoundReport| {
        let r = sign_precondition(r, "eigenvalues >= 0", sign, true)
            .require("tr A > 0", t > 0.0)
            .require("tr A <= sqrt(n tr B^2)", t <= (nf * b2).sqrt())
            .require("tr B^2 > 0", b2 > 0.0);
        na(r)
    };
    let q = nf * b2 - tt;
    let raw_moment = nonneg(BoundReport::new("nonneg-spread-lower", "positive-mean-refinement", "spread").lower(t2 / t));
    let nonneg_upper = nonneg(
        BoundReport::new("nonneg-spread-upper", "positive-mean-refinement", "spread")
            .upper(if n >= 3 { (2.0 * b2 * tt - q * q / (nf * (nf - 2.0))).sqrt() / t } else { f64::NAN })
            .require("n >= 3", n >= 3),
    );

    let negmin = |r: BoundReport| {
        let r = sign_precondition(r, "min eigenvalue < 0", sign, false)
            .require("tr A > 0", t > 0.0)
            .require("2 (tr A)^2 >= n^2 tr B^2", 2.0 * tt >= nf * nf * b2)
            .precondition("0 < 2 tr A <= sqrt(n^3 tr B^2)", t > 0.0 && 2.0 * t <= (nf.powi(3) * b2).sqrt(), Evidence::Informational);
        na(r)
    };
    let w = 2.0 * tt - nf * nf * b2;
    let neg_lower = negmin(
        BoundReport::new("negative-min-spread-lower", "negative-min-refinement", "spread")
            .lower((16.0 * nf * b2 * tt + w * w).sqrt() / (2.0 * nf * t)),
    );
    let neg_upper = negmin(
        BoundReport::new("negative-min-spread-upper", "negative-min-refinement", "spread")
            .upper(if n >= 3 { (2.0 * b2 * tt - w * w / (4.0 * nf * (nf - 2.0))).sqrt() / t } else { f64::NAN })
            .require("n >= 3", n >= 3),
    );

    vec![raw_moment, nonneg_upper, neg_lower, neg_upper]
        .into_iter()
        .map(|r| if r.applicable { r } else { r.note("advisory: preconditions not met; values are not guaranteed bounds") })
        .collect()
}

/// Wolkowicz-Styan intervals for the smallest and largest eigenvalue.
pub fn eigen_interval(s: &SpectralSummary) -> Result<Vec<BoundReport>> {
    let b2 = s.real_tr_b2()?;
    let nf = s.n as f64;
    let wide = ((nf - 1.0) / nf * b2).sqrt();
    let narrow = (b2 / (nf * (nf - 1.0))).sqrt();
    Ok(vec![
        BoundReport::new("lambda-min", "wolkowicz-styan", "lambda_min")
            .lower(s.mean - wide)
            .upper(s.mean - narrow)
            .require("n >= 2", s.n >= 2),
        BoundReport::new("lambda-max", "wolkowicz-styan", "lambda_max")
            .lower(s.mean + narrow)
            .upper(s.mean + wide)
            .require("n >= 2", s.n >= 2),
    ])
}

/// Mean and variance of the `n - 1` eigenvalues left after removing a known eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeflatedMoments {
    pub mean: f64,
    pub variance: f64,
}

pub fn deflated_moments(s: &SpectralSummary, nu: f64) -> Result<DeflatedMoments> {
    let n = s.n;
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let b2 = s.real_tr_b2()?;
    let nf = n as f64;
    let m = nf - 1.0;
    let first = nf / m * (b2 / nf);
    let second = nf / (m * m) * (s.mean - nu) * (s.mean - nu);
    let mut variance = first - second;
    if variance < -1e-9 * first.max(second).max(f64::MIN_POSITIVE) {
        return Err(Error::InconsistentEigenvalue(variance));
    }
    // Below the rounding noise of the trace formula the remaining eigenvalues coincide.
    let noise = 64.0 * f64::EPSILON * (s.tr_a2.abs() / m + second);
    if variance <= noise {
        variance = 0.0;
    }
    Ok(DeflatedMoments {
        mean: (s.tr_a - nu) / m,
        variance,
    })
}

/// Bounds on the remaining spectrum once one eigenvalue `nu` is known: its extremes and its
/// spread.
pub fn deflated_bounds(s: &SpectralSummary, nu: f64) -> Result<Vec<BoundReport>> {
    let d = deflated_moments(s, nu)?;
    let sd = d.variance.sqrt();
    let k = ((s.n - 2) as f64).sqrt();
    let m = (s.n - 1) as f64;
    let pre = "nu is an eigenvalue (caller-supplied)";
    Ok(vec![
        BoundReport::new("deflated-min", "wolkowicz-styan-deflated", "remaining_min")
            .lower(d.mean - k * sd)
            .upper(d.mean - sd / k)
            .precondition(pre, true, Evidence::CallerAsserted),
        BoundReport::new("deflated-max", "wolkowicz-styan-deflated", "remaining_max")
            .lower(d.mean + sd / k)
            .upper(d.mean + k * sd)
            .precondition(pre, true, Evidence::CallerAsserted),
        BoundReport::new("deflated-spread", "popoviciu-nagy-deflated", "remaining_spread")
            .lower(2.0 * sd)
            .upper((2.0 * m).sqrt() * sd)
            .precondition(pre, true, Evidence::CallerAsserted),
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryVerdict {
    pub unitary: bool,
    pub trace_zero: bool,
    pub applicable: bool,
    pub eigenvalues: Vec<Complex64>,
    /// Largest pairwise distance between eigenvalues.
    pub spread: Option<f64>,
    pub disk: Option<Disk>,
    /// `spread >= sqrt(3) - tol`.
    pub spread_ok: bool,
    /// Smallest enclosing disk is the unit disk.
    pub disk_ok: bool,
}

/// For a unitary matrix with zero trace the unit circle is the smallest circle enclosing the
/// spectrum, so its spread is at least `sqrt(3)`.
pub fn unitary_trace_zero_check(u: &ComplexMatrix, tol: f64) -> Result<UnitaryVerdict> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::NegativeTolerance(tol));
    }
    let unitary = u.unitarity_defect() <= tol;
    let trace_zero = u.trace().norm() <= tol * (u.dim() as f64).max(1.0);
    let mut v = UnitaryVerdict {
        unitary,
        trace_zero,
        applicable: unitary && trace_zero,
        eigenvalues: Vec::new(),
        spread: None,
        disk: None,
        spread_ok: false,
        disk_ok: false,
    };
    if !v.applicable {
        return Ok(v);
    }
    let eig = oracle::eigenvalues_complex(u)?;
    let sample = ComplexSample::new(eig.clone())?;
    let spread = sample.max_gap2().sqrt();
    let disk = min_enclosing_disk(&sample);
    v.spread_ok = spread >= 3f64.sqrt() - tol;
    v.disk_ok = (disk.radius - 1.0).abs() <= tol && disk.center.norm() <= tol;
    v.eigenvalues = eig;
    v.spread = Some(spread);
    v.disk = Some(disk);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    pub(crate) fn example3() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            vec![1.0, 2.0, 9.0, 4.0],
            vec![2.0, 10.0, 0.0, 4.0],
            vec![9.0, 0.0, 5.0, 2.0],
            vec![4.0, 4.0, 2.0, 6.0],
        ])
        .unwrap()
    }

    pub(crate) fn example2() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            vec![1.0, 1.0, 1.0, 1.0],
            vec![1.0, 4.0, 1.0, 1.0],
            vec![1.0, 1.0, 16.0, 1.0],
            vec![1.0, 1.0, 1.0, 15.0],
        ])
        .unwrap()
    }

    #[test]
    fn summaries() {
        let s = summarize(&example3());
        assert_eq!((s.tr_a, s.tr_a2, s.tr_b2, s.mean), (22.0, 404.0, 283.0, 5.5));
        let s = summarize(&example2());
        assert_eq!((s.tr_a, s.tr_a2, s.tr_b2), (36.0, 510.0, 186.0));
        let s = summarize(&DenseMatrix::identity(3));
        assert_eq!((s.tr_a, s.tr_a2, s.tr_b2), (3.0, 3.0, 0.0));
    }

    #[test]
    fn sandwich_examples() {
        let r = spread_sandwich(&summarize(&example3())).unwrap();
        assert_relative_eq!(r.lower.unwrap(), 283f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(r.upper.unwrap(), 566f64.sqrt(), max_relative = 1e-15);
        let r = spread_sandwich(&summarize(&example2())).unwrap();
        assert!((r.lower.unwrap() - 13.638).abs() < 1e-3);
        assert!((r.upper.unwrap() - 19.287).abs() < 1e-3);
        let r = spread_sandwich(&summarize(&DenseMatrix::identity(3))).unwrap();
        assert_eq!((r.lower, r.upper), (Some(0.0), Some(0.0)));
    }

    #[test]
    fn complex_spectrum_is_rejected() {
        // Rotation by 90 degrees: eigenvalues ±i, tr A² = -2.
        let rot = DenseMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let s = summarize(&rot);
        assert!(matches!(spread_sandwich(&s), Err(Error::SpectrumNotReal(_))));
        assert!(matches!(eigen_interval(&s), Err(Error::SpectrumNotReal(_))));
    }

    #[test]
    fn interval_examples() {
        let r = eigen_interval(&summarize(&example3())).unwrap();
        assert!((r[0].lower.unwrap() + 9.0688).abs() < 5e-5);
        assert!((r[0].upper.unwrap() - 0.644).abs() < 5e-4);
        assert!((r[1].lower.unwrap() - 10.356).abs() < 5e-4);
        assert!((r[1].upper.unwrap() - 20.069).abs() < 5e-4);
        let r = eigen_interval(&summarize(&DenseMatrix::identity(5))).unwrap();
        assert!(r.iter().all(|b| b.lower == Some(1.0) && b.upper == Some(1.0)));
    }

    #[test]
    fn deflation_examples() {
        let s = summarize(&example3());
        let d = deflated_moments(&s, 16.0).unwrap();
        assert_relative_eq!(d.mean, 2.0, max_relative = 1e-15);
        assert_relative_eq!(d.variance, 136.0 / 3.0, max_relative = 1e-14);
        let r = deflated_bounds(&s, 16.0).unwrap();
        assert!((r[0].lower.unwrap() + 7.521).abs() < 5e-3);
        assert!((r[0].upper.unwrap() + 2.761).abs() < 5e-4);
        assert!((r[1].lower.unwrap() - 6.761).abs() < 5e-4);
        assert!((r[1].upper.unwrap() - 11.522).abs() < 5e-4);

        let r = deflated_bounds(&summarize(&DenseMatrix::diag(&[1.0, 1.0, 5.0])), 5.0).unwrap();
        // Zero remaining variance; exact up to the cancellation in the trace formula.
        assert!((r[0].lower.unwrap() - 1.0).abs() < 1e-7 && (r[0].upper.unwrap() - 1.0).abs() < 1e-7);

        assert!(matches!(deflated_bounds(&s, 1000.0), Err(Error::InconsistentEigenvalue(_))));
        assert!(matches!(
            deflated_bounds(&summarize(&DenseMatrix::identity(2)), 1.0),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn refined_bounds_on_a_rank_one_diagonal() {
        let s = summarize(&DenseMatrix::diag(&[0.0, 0.0, 0.0, 2.0]));
        assert_eq!((s.tr_a, s.tr_a2, s.tr_b2), (2.0, 4.0, 3.0));
        let r = refined_spread_bounds(&s, SpectrumSign::Nonnegative(Evidence::Computed));
        assert!(r[0].applicable && r[1].applicable);
        assert_relative_eq!(r[0].lower.unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(r[1].upper.unwrap(), 2.0, max_relative = 1e-15);
        assert!(!r[2].applicable && !r[3].applicable);
    }

    #[test]
    fn refined_bounds_on_example2_are_advisory() {
        let s = summarize(&example2());
        let sign = spectrum_sign_symmetric(&example2()).unwrap();
        assert_eq!(sign, SpectrumSign::Nonnegative(Evidence::Computed));
        let r = refined_spread_bounds(&s, sign);
        assert!(!r[0].applicable && !r[1].applicable);
        let failed: Vec<_> = r[0].diagnostics.iter().filter(|d| !d.satisfied).map(|d| d.condition.as_str()).collect();
        assert_eq!(failed, vec!["tr A <= sqrt(n tr B^2)"]);
        assert!(r[0].notes.iter().any(|n| n.starts_with("advisory")));
    }

    #[test]
    fn unknown_sign_is_not_applicable() {
        let s = summarize(&DenseMatrix::diag(&[0.0, 0.0, 0.0, 2.0]));
        let r = refined_spread_bounds(&s, SpectrumSign::Unknown);
        assert!(r.iter().all(|b| !b.applicable));
    }

    #[test]
    fn zero_trace_is_inapplicable() {
        let s = summarize(&DenseMatrix::diag(&[-1.0, 0.0, 1.0]));
        let r = refined_spread_bounds(&s, SpectrumSign::HasNegative(Evidence::Computed));
        assert!(r.iter().all(|b| !b.applicable));
    }

    #[test]
    fn sign_detection() {
        assert_eq!(spectrum_sign_symmetric(&example3()).unwrap(), SpectrumSign::HasNegative(Evidence::Computed));
        assert_eq!(
            spectrum_sign_symmetric(&DenseMatrix::diag(&[0.0, 0.0, 2.0])).unwrap(),
            SpectrumSign::Nonnegative(Evidence::Computed)
        );
        let indefinite = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(spectrum_sign_symmetric(&indefinite).unwrap(), SpectrumSign::HasNegative(Evidence::Computed));
        let psd_rank_one = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(spectrum_sign_symmetric(&psd_rank_one).unwrap(), SpectrumSign::Nonnegative(Evidence::Computed));
        let not_sym = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 4.0]]).unwrap();
        assert!(spectrum_sign_symmetric(&not_sym).is_err());
    }

    #[test]
    fn unitary_examples() {
        let v = unitary_trace_zero_check(&ComplexMatrix::basic_circulant(3), 1e-9).unwrap();
        assert!(v.applicable && v.spread_ok && v.disk_ok);
        assert_relative_eq!(v.spread.unwrap(), 3f64.sqrt(), max_relative = 1e-12);

        let v = unitary_trace_zero_check(&ComplexMatrix::basic_circulant(4), 1e-9).unwrap();
        assert!(v.applicable && v.spread_ok && v.disk_ok);
        assert_relative_eq!(v.spread.unwrap(), 2.0, max_relative = 1e-12);

        let v = unitary_trace_zero_check(&ComplexMatrix::from_real(&DenseMatrix::diag(&[1.0, -1.0])), 1e-9).unwrap();
        assert!(v.applicable && v.spread_ok && v.disk_ok);

        let v = unitary_trace_zero_check(&ComplexMatrix::from_real(&DenseMatrix::identity(2)), 1e-9).unwrap();
        assert!(v.unitary && !v.trace_zero && !v.applicable);
        let v = unitary_trace_zero_check(&ComplexMatrix::from_real(&DenseMatrix::diag(&[2.0, -2.0])), 1e-9).unwrap();
        assert!(!v.unitary && !v.applicable);
    }
}
