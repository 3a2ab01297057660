use num_complex::Complex64;

use crate::complex_stats::ComplexSample;
use crate::enclosing_disk::{distinct_points, Disk};
use crate::error::{Error, Result};

pub const MAX_BRUTE_POINTS: usize = 50;

fn covers_all(d: &Disk, pts: &[Complex64]) -> bool {
    let lim = d.radius * (1.0 + 1e-12) + 1e-300;
    pts.iter().all(|p| (p - d.center).norm() <= lim)
}

/// Smallest enclosing disk by enumeration: every pair as a diameter and every
/// non-degenerate triple as a circumcircle.
pub fn min_disk_brute(sample: &ComplexSample) -> Result<Disk> {
    if sample.len() > MAX_BRUTE_POINTS {
        return Err(Error::DimensionCap { got: sample.len(), cap: MAX_BRUTE_POINTS });
    }
    let pts = distinct_points(sample.points());
    if pts.len() == 1 {
        return Ok(Disk::new(pts[0], 0.0));
    }
    let mut best: Option<Disk> = None;
    let mut consider = |d: Disk| {
        if best.is_none_or(|b| d.radius < b.radius) && covers_all(&d, &pts) {
            best = Some(d);
        }
    };
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            consider(Disk::diameter(pts[i], pts[j]));
            for k in j + 1..pts.len() {
                if let Some(d) = Disk::circumcircle(pts[i], pts[j], pts[k]) {
                    consider(d);
                }
            }
        }
    }
    best.ok_or_else(|| Error::InvalidMatrix("no enclosing disk candidate".into()))
}
