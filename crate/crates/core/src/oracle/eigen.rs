#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use super::{Spectrum, MAX_DIM};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DenseMatrix};

const MAX_SWEEPS: usize = 100;

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn eigenvalues_symmetric(m: &DenseMatrix) -> Result<Spectrum> {
    let n = m.dim();
    if n > MAX_DIM {
        return Err(Error::DimensionCap { got: n, cap: MAX_DIM });
    }
    let asym = m.max_asymmetry();
    if asym > 1e-12 * m.max_abs() {
        return Err(Error::NotSymmetric(asym));
    }
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (m.get(i, j) + m.get(j, i));
        }
    }
    let norm = m.frobenius();
    let off = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off(&a) <= 1e-15 * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    if !converged && off(&a) > 1e-12 * norm {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    Ok(Spectrum::new((0..n).map(|i| a[i * n + i]).collect()))
}

/// All eigenvalues of a general complex matrix: Householder reduction to Hessenberg form,
/// then single-shift QR with Wilkinson shifts. Order is unspecified.
pub fn eigenvalues_complex(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = m.dim();
    if n > MAX_DIM {
        return Err(Error::DimensionCap { got: n, cap: MAX_DIM });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut h: Vec<Vec<Complex64>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();

    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[i][k]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let mut v = x;
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- (I - 2vv*) H
        for j in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[k + 1 + t][j]).sum();
            for (t, vi) in v.iter().enumerate() {
                h[k + 1 + t][j] -= 2.0 * vi * s;
            }
        }
        // H <- H (I - 2vv*)
        for row in h.iter_mut() {
            let s: Complex64 = v.iter().enumerate().map(|(t, vj)| row[k + 1 + t] * vj).sum();
            for (t, vj) in v.iter().enumerate() {
                row[k + 1 + t] -= 2.0 * s * vj.conj();
            }
        }
        for row in h.iter_mut().skip(k + 2) {
            row[k] = zero;
        }
    }

    let scale = h.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let mut eig = vec![zero; n];
    if n == 0 {
        return Ok(eig);
    }
    let max_iter = 60 * n.max(1);
    let mut hi = n - 1;
    let mut iter = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let sub = h[l][l - 1].norm();
            let diag = h[l][l].norm() + h[l - 1][l - 1].norm();
            if sub <= f64::EPSILON * diag || sub <= f64::EPSILON * 1e-3 * scale {
                h[l][l - 1] = zero;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > max_iter {
            return Err(Error::NoConvergence(max_iter));
        }
        let mu = if iter.is_multiple_of(11) {
            h[hi][hi] + Complex64::new(0.75, 0.5) * h[hi][hi - 1].norm()
        } else {
            wilkinson(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        for k in l..=hi {
            h[k][k] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..=hi {
                let (a, b) = (h[k][j], h[k + 1][j]);
                h[k][j] = c * a + s * b;
                h[k + 1][j] = -s.conj() * a + c * b;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = l + idx;
            for row in h.iter_mut().take((k + 2).min(hi) + 1).skip(l) {
                let (a, b) = (row[k], row[k + 1]);
                row[k] = c * a + s.conj() * b;
                row[k + 1] = -s * a + c * b;
            }
        }
        for k in l..=hi {
            h[k][k] += mu;
        }
    }
    Ok(eig)
}

// Rotation [c s; -conj(s) c] mapping (f, g) to (r, 0), with c real.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let (af, ag) = (f.norm(), g.norm());
    if ag == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if af == 0.0 {
        return (0.0, g.conj() / ag);
    }
    let r = af.hypot(ag);
    (af / r, (f / af) * g.conj() / r)
}

// Eigenvalue of [[a, b], [c, d]] nearest to d.
fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (e1, e2) = (mid + disc, mid - disc);
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}
