//! Smallest enclosing disk of a planar point set and the relations tying its radius to the
//! dispersion statistics: `sz2 <= r² <= max_gap²/3` and Jung's `max_gap/2 <= r <= max_gap/√3`.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex_stats::{dispersion, ComplexSample};
use crate::error::{Error, Result};
use crate::report::BoundReport;

const SHUFFLE_SEED: u64 = 0x5eed_d15c;
/// Multiplicative slack used while building the disk.
const BUILD_SLACK: f64 = 1.0 + 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Disk { center, radius }
    }

    /// Containment with slack `1e-9 * max(radius, 1)`.
    pub fn contains(&self, p: Complex64) -> bool {
        (p - self.center).norm() <= self.radius + 1e-9 * self.radius.max(1.0)
    }

    fn covers(&self, p: Complex64) -> bool {
        (p - self.center).norm() <= self.radius * BUILD_SLACK + 1e-300
    }

    pub fn diameter(a: Complex64, b: Complex64) -> Disk {
        let center = (a + b) * 0.5;
        Disk::new(center, (a - center).norm().max((b - center).norm()))
    }

    /// Circle through three points; `None` when they are (numerically) collinear.
    pub fn circumcircle(a: Complex64, b: Complex64, c: Complex64) -> Option<Disk> {
        // Work relative to the bounding-box center to limit cancellation.
        let ox = (a.re.min(b.re).min(c.re) + a.re.max(b.re).max(c.re)) / 2.0;
        let oy = (a.im.min(b.im).min(c.im) + a.im.max(b.im).max(c.im)) / 2.0;
        let (ax, ay) = (a.re - ox, a.im - oy);
        let (bx, by) = (b.re - ox, b.im - oy);
        let (cx, cy) = (c.re - ox, c.im - oy);
        let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        let scale = (b - a).norm_sqr().max((c - a).norm_sqr()).max((c - b).norm_sqr());
        if d.abs() <= 1e-14 * scale {
            return None;
        }
        let (a2, b2, c2) = (ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy);
        let x = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
        let y = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
        let center = Complex64::new(ox + x, oy + y);
        let r = (center - a).norm().max((center - b).norm()).max((center - c).norm());
        Some(Disk::new(center, r))
    }
}

fn cross(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

/// Exact duplicates removed; order otherwise unspecified.
pub(crate) fn distinct_points(points: &[Complex64]) -> Vec<Complex64> {
    let mut v = points.to_vec();
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v.dedup();
    v
}

/// Smallest disk containing every point (randomized incremental, expected linear time).
/// The shuffle uses a fixed seed, so results are deterministic.
pub fn min_enclosing_disk(sample: &ComplexSample) -> Disk {
    let mut pts = distinct_points(sample.points());
    let mut rng = ChaCha8Rng::seed_from_u64(SHUFFLE_SEED);
    pts.shuffle(&mut rng);

    let mut disk: Option<Disk> = None;
    for i in 0..pts.len() {
        let p = pts[i];
        if disk.is_none_or(|d| !d.covers(p)) {
            disk = Some(disk_with_one(&pts[..i], p));
        }
    }
    disk.expect("sample is nonempty")
}

// `p` is on the boundary.
fn disk_with_one(pts: &[Complex64], p: Complex64) -> Disk {
    let mut d = Disk::new(p, 0.0);
    for i in 0..pts.len() {
        let q = pts[i];
        if !d.covers(q) {
            d = if d.radius == 0.0 {
                Disk::diameter(p, q)
            } else {
                disk_with_two(&pts[..i], p, q)
            };
        }
    }
    d
}

// `p` and `q` are on the boundary.
fn disk_with_two(pts: &[Complex64], p: Complex64, q: Complex64) -> Disk {
    let base = Disk::diameter(p, q);
    let mut left: Option<Disk> = None;
    let mut right: Option<Disk> = None;
    for &r in pts {
        if base.covers(r) {
            continue;
        }
        let side = cross(p, q, r);
        let Some(c) = Disk::circumcircle(p, q, r) else {
            continue;
        };
        let c_side = cross(p, q, c.center);
        if side > 0.0 {
            if left.is_none_or(|l| c_side > cross(p, q, l.center)) {
                left = Some(c);
            }
        } else if side < 0.0 && right.is_none_or(|rt| c_side < cross(p, q, rt.center)) {
            right = Some(c);
        }
    }
    match (left, right) {
        (None, None) => base,
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => {
            if l.radius <= r.radius {
                l
            } else {
                r
            }
        }
    }
}

/// `sz2 <= r² <= max_gap²/3` and `max_gap/2 <= r <= max_gap/√3`.
pub fn disk_inequality_chain(sample: &ComplexSample) -> Result<Vec<BoundReport>> {
    let n = sample.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let d = dispersion(sample);
    let disk = min_enclosing_disk(sample);
    let gap2 = sample.max_gap2();
    let gap = gap2.sqrt();
    Ok(vec![
        BoundReport::new("disk-chain", "variance-disk", "r_z^2")
            .lower(d.sz2)
            .upper(gap2 / 3.0)
            .value(disk.radius * disk.radius)
            .require("n >= 2", true),
        BoundReport::new("jung", "jung", "r_z")
            .lower(gap / 2.0)
            .upper(gap / 3f64.sqrt())
            .value(disk.radius)
            .require("n >= 2", true),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleOnMean {
    /// All points are equidistant from their mean.
    pub on_circle: bool,
    /// The largest distance from the mean.
    pub distance: f64,
    pub disk: Disk,
    /// When `on_circle`: the smallest disk is the circle about the mean.
    pub disk_matches: Option<bool>,
}

/// Detects points lying on a circle centred at their mean; such a circle is the smallest
/// enclosing one, which is confirmed against [`min_enclosing_disk`].
pub fn circle_on_mean_check(sample: &ComplexSample, tol: f64) -> Result<CircleOnMean> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::NegativeTolerance(tol));
    }
    let m = dispersion(sample).mean;
    let dists: Vec<f64> = sample.points().iter().map(|z| (z - m).norm()).collect();
    let far = dists.iter().cloned().fold(0.0, f64::max);
    let near = dists.iter().cloned().fold(f64::INFINITY, f64::min);
    let on_circle = far - near <= tol * far;
    let disk = min_enclosing_disk(sample);
    let disk_matches = on_circle.then(|| {
        let slack = tol * far.max(f64::MIN_POSITIVE);
        (disk.radius - far).abs() <= slack && (disk.center - m).norm() <= slack.max(1e-12 * far)
    });
    Ok(CircleOnMean {
        on_circle,
        distance: far,
        disk,
        disk_matches,
    })
}
