use crate::error::{Error, Result};
use crate::poly_span::MonicPoly;

pub const MAX_DEGREE: usize = 16;

/// All zeros of a real-rooted monic polynomial, ascending, with multiplicity.
///
/// The zeros of `p'` interlace those of `p`, so the critical points (found recursively)
/// split the line into `n` intervals on which `p` is monotone, each holding exactly one zero.
/// A zero inside an interval is found by bisection; a zero at a critical point (a multiple
/// zero) shows up as a vanishing endpoint. An interval with neither proves a complex pair.
pub fn real_roots(p: &MonicPoly) -> Result<Vec<f64>> {
    if p.degree() > MAX_DEGREE {
        return Err(Error::InvalidPolynomial(format!("degree {} exceeds {MAX_DEGREE}", p.degree())));
    }
    roots_of(&p.full_coefficients())
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

/// Compensated Horner: `p(x)` as if evaluated in twice the working precision, with a bound
/// on the remaining error. A value inside the bound has no reliable sign.
fn horner(c: &[f64], x: f64) -> (f64, f64) {
    let mut s = c[0];
    let mut err = 0.0;
    for &k in &c[1..] {
        let p = s * x;
        let pe = s.mul_add(x, -p);
        let (t, se) = two_sum(p, k);
        s = t;
        err = err * x + (pe + se);
    }
    let v = s + err;
    let u = f64::EPSILON / 2.0;
    let m = 2.0 * c.len() as f64 * u;
    let gamma = m / (1.0 - m);
    (v, 2.0 * u * v.abs() + 4.0 * gamma * gamma * horner_abs(c, x))
}

/// Magnitude of the terms summed when evaluating at `x`; the natural round-off scale.
fn horner_abs(c: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    c.iter().fold(0.0, |acc, &k| acc * ax + k.abs())
}

fn derivative(c: &[f64]) -> Vec<f64> {
    let deg = c.len() - 1;
    c[..deg].iter().enumerate().map(|(i, &k)| k * (deg - i) as f64).collect()
}

fn roots_of(c: &[f64]) -> Result<Vec<f64>> {
    let deg = c.len() - 1;
    match deg {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-c[1] / c[0]]),
        _ => {}
    }
    let crit = roots_of(&derivative(c))?;
    let bound = 1.0 + c[1..].iter().map(|k| (k / c[0]).abs()).fold(0.0, f64::max);
    let mut marks = Vec::with_capacity(deg + 1);
    marks.push(-bound);
    marks.extend(crit.iter().map(|x| x.clamp(-bound, bound)));
    marks.push(bound);

    let mut roots = Vec::with_capacity(deg);
    for w in marks.windows(2) {
        let (l, r) = (w[0], w[1]);
        let ((fl, el), (fr, er)) = (horner(c, l), horner(c, r));
        let root = if fl.abs() <= el {
            l
        } else if fr.abs() <= er {
            r
        } else if (fl < 0.0) != (fr < 0.0) {
            bisect(c, l, r, fl)
        } else {
            let (x, fx) = if fl.abs() <= fr.abs() { (l, fl) } else { (r, fr) };
            if fx.abs() <= 1e-9 * horner_abs(c, x) {
                x
            } else {
                return Err(Error::NotRealRooted(format!(
                    "no zero between {l} and {r} (degree {deg})"
                )));
            }
        };
        roots.push(root);
    }
    Ok(roots)
}

fn bisect(c: &[f64], mut l: f64, mut r: f64, mut fl: f64) -> f64 {
    for _ in 0..2000 {
        let mid = 0.5 * (l + r);
        if mid <= l || mid >= r {
            break;
        }
        let (fm, em) = horner(c, mid);
        if fm.abs() <= em {
            return mid;
        }
        if (fm < 0.0) == (fl < 0.0) {
            l = mid;
            fl = fm;
        } else {
            r = mid;
        }
    }
    0.5 * (l + r)
}
