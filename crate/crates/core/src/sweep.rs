//! Seeded random-instance sweeps: generate many inputs per family, evaluate every bound, and
//! check each applicable one against ground truth.
//!
//! Instance `i` draws from its own generator seeded from `(seed, i)`, so results do not depend
//! on the execution mode or thread count.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::batch::{self, ExecMode};
use crate::complex_stats::{self, ComplexSample};
use crate::enclosing_disk;
use crate::error::Result;
use crate::matrix::DenseMatrix;
use crate::oracle::{self, Status, Truths, Verification};
use crate::poly_span::{self, MonicPoly};
use crate::real_bounds::{self, RealSample};
use crate::report::BoundReport;
use crate::spectral_bounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Real samples, `n` in `[2, 50]`.
    RealSamples,
    /// Symmetric matrices, `n` in `[3, 12]`.
    SymmetricMatrices,
    /// Polynomials with real zeros, degree in `[2, 8]`.
    RealRootedPolys,
    /// Complex point clouds, `n` in `[2, 50]`.
    ComplexClouds,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::RealSamples,
        Family::SymmetricMatrices,
        Family::RealRootedPolys,
        Family::ComplexClouds,
    ];
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub family: Family,
    pub instances: usize,
    /// Per bound name.
    pub tallies: BTreeMap<String, Tally>,
    /// Instances whose evaluation returned an error.
    pub errors: Vec<String>,
    /// Descriptions of the first few failed checks.
    pub failures: Vec<String>,
}

impl SweepOutcome {
    pub fn violations(&self) -> usize {
        self.tallies.values().map(|t| t.failed).sum()
    }

    pub fn checked(&self) -> usize {
        self.tallies.values().map(|t| t.passed + t.failed).sum()
    }
}

const MAX_REPORTED_FAILURES: usize = 10;

pub fn instance_rng(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn sweep(family: Family, instances: usize, seed: u64, mode: ExecMode) -> SweepOutcome {
    let per_instance = batch::map_range(mode, instances, |i| {
        let mut rng = instance_rng(seed, i);
        match family {
            Family::RealSamples => check_real_sample(&random_real_sample(&mut rng, i), &mut rng),
            Family::SymmetricMatrices => {
                let m = random_symmetric(&mut rng, i);
                check_symmetric(&m, &mut rng)
            }
            Family::RealRootedPolys => check_poly(&random_roots(&mut rng, i)),
            Family::ComplexClouds => check_cloud(&random_cloud(&mut rng, i), &mut rng),
        }
    });

    let mut out = SweepOutcome {
        family,
        instances,
        tallies: BTreeMap::new(),
        errors: Vec::new(),
        failures: Vec::new(),
    };
    for (i, res) in per_instance.into_iter().enumerate() {
        let checks = match res {
            Ok(c) => c,
            Err(e) => {
                out.errors.push(format!("instance {i}: {e}"));
                continue;
            }
        };
        for v in checks {
            let key = v.name.split('[').next().unwrap_or(&v.name).to_string();
            let t = out.tallies.entry(key).or_default();
            match v.status {
                Status::Pass => {
                    t.applicable += 1;
                    t.passed += 1;
                }
                Status::Fail => {
                    t.applicable += 1;
                    t.failed += 1;
                    if out.failures.len() < MAX_REPORTED_FAILURES {
                        out.failures.push(format!(
                            "instance {i}: {} truth={:?} lower_margin={:?} upper_margin={:?}",
                            v.name, v.truth, v.lower_margin, v.upper_margin
                        ));
                    }
                }
                Status::Skipped => t.skipped += 1,
            }
        }
    }
    out
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let r = rng.random_range(1..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    for k in 0..r {
        let j = rng.random_range(k..n);
        idx.swap(k, j);
    }
    idx.truncate(r);
    idx
}

/// Real samples drawn from several shapes so that every gated bound gets exercised.
pub fn random_real_sample(rng: &mut ChaCha8Rng, variant: usize) -> RealSample {
    let n = rng.random_range(2..=50);
    let values: Vec<f64> = match variant % 6 {
        0 => (0..n).map(|_| rng.random_range(-10.0..10.0)).collect(),
        1 => (0..n).map(|_| rng.random_range(0.0..10.0)).collect(),
        // Mostly zeros with a few large values: nonnegative, mean below the standard deviation,
        // heavy kurtosis.
        2 => (0..n).map(|_| if rng.random_bool(0.75) { 0.0 } else { rng.random_range(0.0..10.0) }).collect(),
        // A dominant positive mean and one slightly negative value.
        3 => {
            let c = rng.random_range(3.0..20.0);
            let mut v: Vec<f64> = (0..n).map(|_| c + rng.random_range(-0.5..0.5)).collect();
            v[0] = -rng.random_range(0.0..1.0);
            v
        }
        // Small integers with ties.
        4 => (0..n).map(|_| rng.random_range(-3..=3) as f64).collect(),
        // Two-point samples, where several bounds are attained.
        _ => {
            let (a, b) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            let k = rng.random_range(1..n.max(2));
            (0..n).map(|j| if j < k { a } else { b }).collect()
        }
    };
    RealSample::new(values).expect("finite")
}

fn check_real_sample(s: &RealSample, rng: &mut ChaCha8Rng) -> Result<Vec<Verification>> {
    let mut reports = real_bounds::classic_bounds(s);
    reports.extend(real_bounds::refined_bounds_positive_mean(s));
    reports.extend(real_bounds::refined_bounds_negative_min(s));
    reports.extend(real_bounds::kurtosis_gated_bound(s));
    reports.extend(real_bounds::extreme_value_bounds(s)?);
    reports.push(real_bounds::mallows_richter(s, &random_subset(rng, s.len()))?);
    Ok(oracle::verify_all(&reports, &Truths::new()))
}

/// `H2 H1 diag(d) H1 H2` for random Householder reflections `H1`, `H2`.
pub fn with_spectrum(rng: &mut ChaCha8Rng, d: &[f64]) -> DenseMatrix {
    let n = d.len();
    let mut m = DenseMatrix::diag(d);
    for _ in 0..2 {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv < 1e-3 {
            continue;
        }
        let mut h = DenseMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                h.set(i, j, h.get(i, j) - 2.0 * v[i] * v[j] / vv);
            }
        }
        m = h.mul(&m).mul(&h);
    }
    // Restore exact symmetry lost to round-off.
    for i in 0..n {
        for j in i + 1..n {
            let x = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    m
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, variant: usize) -> DenseMatrix {
    let n = rng.random_range(3..=12);
    match variant % 4 {
        0 | 1 => {
            let mut m = DenseMatrix::identity(n);
            for i in 0..n {
                for j in i..n {
                    let x = rng.random_range(-10.0..10.0);
                    m.set(i, j, x);
                    m.set(j, i, x);
                }
            }
            m
        }
        // Positive semidefinite, often singular, with a skewed spectrum.
        2 => {
            let d: Vec<f64> = (0..n)
                .map(|_| if rng.random_bool(0.6) { 0.0 } else { rng.random_range(0.0..10.0) })
                .collect();
            with_spectrum(rng, &d)
        }
        // A dominant mean with one negative eigenvalue.
        _ => {
            let c = rng.random_range(5.0..20.0);
            let mut d: Vec<f64> = (0..n).map(|_| c + rng.random_range(-1.0..1.0)).collect();
            d[0] = -rng.random_range(0.0..1.0);
            with_spectrum(rng, &d)
        }
    }
}

fn check_symmetric(m: &DenseMatrix, rng: &mut ChaCha8Rng) -> Result<Vec<Verification>> {
    let s = spectral_bounds::summarize(m);
    let spec = oracle::eigenvalues_symmetric(m)?;
    let nu = spec.values()[rng.random_range(0..spec.len())];
    let sign = spectral_bounds::spectrum_sign_symmetric(m)?;
    let mut reports = vec![spectral_bounds::spread_sandwich(&s)?];
    reports.extend(spectral_bounds::eigen_interval(&s)?);
    reports.extend(spectral_bounds::refined_spread_bounds(&s, sign));
    reports.extend(spectral_bounds::deflated_bounds(&s, nu)?);
    Ok(oracle::verify_all(&reports, &Truths::from_spectrum(&spec, Some(nu))))
}

pub fn random_roots(rng: &mut ChaCha8Rng, variant: usize) -> Vec<f64> {
    let n = rng.random_range(2..=8);
    let mut roots: Vec<f64> = match variant % 4 {
        0 => (0..n).map(|_| rng.random_range(-5.0..5.0)).collect(),
        1 => (0..n).map(|_| rng.random_range(0.0..5.0)).collect(),
        // Nonnegative and skewed toward zero, so the mean can fall below the deviation.
        2 => (0..n).map(|_| if rng.random_bool(0.6) { 0.0 } else { rng.random_range(0.0..5.0) }).collect(),
        // Repeated roots. Multiples of 1/8 keep the expanded coefficients exact; otherwise
        // their rounding moves the zero variance by about eps * a1², which the square root
        // turns into an error of order 1e-8 near a fully repeated root.
        _ => {
            let k = rng.random_range(1..=n.min(3));
            let pool: Vec<f64> = (0..k).map(|_| rng.random_range(-24..=24) as f64 / 8.0).collect();
            (0..n).map(|_| pool[rng.random_range(0..k)]).collect()
        }
    };
    roots.sort_by(f64::total_cmp);
    roots
}

/// Bounds for the polynomial with the given zeros. The truth is the span of the generating
/// zeros; the coefficients carry only rounding error, while a computed root of multiplicity
/// `k` is only accurate to about `eps^(1/k)`.
pub fn check_poly(roots: &[f64]) -> Result<Vec<Verification>> {
    let p = MonicPoly::from_roots(roots);
    let mut reports = vec![poly_span::span_bounds(&p)?];
    reports.extend(poly_span::refined_span_bounds(&p)?);
    Ok(oracle::verify_all(&reports, &Truths::from_roots(roots)))
}

pub fn random_cloud(rng: &mut ChaCha8Rng, variant: usize) -> ComplexSample {
    let n = rng.random_range(2..=50);
    let pts: Vec<Complex64> = match variant % 5 {
        0 => (0..n).map(|_| Complex64::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0))).collect(),
        // On a line.
        1 => {
            let (a, dir) = (
                Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)),
                Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)),
            );
            (0..n).map(|_| a + dir * rng.random_range(-5.0..5.0)).collect()
        }
        // Vertices of a regular polygon: equidistant from the mean.
        2 => {
            let r = rng.random_range(0.1..10.0);
            let phase = rng.random_range(0.0..std::f64::consts::TAU);
            (0..n).map(|k| Complex64::from_polar(r, phase + std::f64::consts::TAU * k as f64 / n as f64)).collect()
        }
        // Two tight clusters.
        3 => (0..n)
            .map(|k| {
                let c = if k % 2 == 0 { Complex64::new(-3.0, 1.0) } else { Complex64::new(4.0, -2.0) };
                c + Complex64::new(rng.random_range(-0.01..0.01), rng.random_range(-0.01..0.01))
            })
            .collect(),
        // Few distinct points, many duplicates.
        _ => {
            let pool: Vec<Complex64> =
                (0..3).map(|_| Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect();
            (0..n).map(|_| pool[rng.random_range(0..3)]).collect()
        }
    };
    ComplexSample::new(pts).expect("finite")
}

fn check_cloud(s: &ComplexSample, rng: &mut ChaCha8Rng) -> Result<Vec<Verification>> {
    let mut reports: Vec<BoundReport> = vec![complex_stats::pairwise_gap_bound(s)];
    reports.extend(complex_stats::popoviciu_analogue(s));
    reports.extend(complex_stats::samuelson_bounds(s));
    reports.push(complex_stats::subset_mean_bound(s, &random_subset(rng, s.len()))?);
    reports.extend(enclosing_disk::disk_inequality_chain(s)?);
    let b = oracle::min_disk_brute(s)?;
    let t = Truths::new().with("r_z", b.radius).with("r_z^2", b.radius * b.radius);
    Ok(oracle::verify_all(&reports, &t))
}
