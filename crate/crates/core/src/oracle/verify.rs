use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Spectrum;
use crate::report::{sig17, BoundReport};

/// Relative slack used when comparing a bound against oracle truth.
pub const VERIFY_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub name: String,
    pub quantity: String,
    pub status: Status,
    #[serde(with = "sig17::option")]
    pub truth: Option<f64>,
    /// `truth - lower`; negative means the lower bound is violated.
    #[serde(with = "sig17::option")]
    pub lower_margin: Option<f64>,
    /// `upper - truth`; negative means the upper bound is violated.
    #[serde(with = "sig17::option")]
    pub upper_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Checks `lower <= truth <= upper` with relative slack [`VERIFY_TOL`].
/// Inapplicable reports and reports without a known truth are skipped.
pub fn verify_report(report: &BoundReport, truth: Option<f64>) -> Verification {
    let truth = truth.or(report.value);
    let mut v = Verification {
        name: report.name.clone(),
        quantity: report.quantity.clone(),
        status: Status::Skipped,
        truth,
        lower_margin: None,
        upper_margin: None,
        reason: None,
    };
    let Some(t) = truth else {
        v.reason = Some("no ground truth for this quantity".into());
        return v;
    };
    v.lower_margin = report.lower.map(|lo| t - lo);
    v.upper_margin = report.upper.map(|hi| hi - t);
    if !report.applicable {
        v.reason = Some("preconditions not met".into());
        return v;
    }
    v.status = if report.brackets(t, VERIFY_TOL) { Status::Pass } else { Status::Fail };
    v
}

/// Ground-truth values keyed by report quantity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Truths(BTreeMap<String, f64>);

impl Truths {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, quantity: &str, value: f64) -> Self {
        self.0.insert(quantity.to_string(), value);
        self
    }

    pub fn get(&self, quantity: &str) -> Option<f64> {
        self.0.get(quantity).copied()
    }

    /// Extremes and spread of a spectrum and, given a known eigenvalue, of what remains
    /// after removing it.
    pub fn from_spectrum(s: &Spectrum, nu: Option<f64>) -> Self {
        let mut t = Truths::new()
            .with("lambda_min", s.min())
            .with("lambda_max", s.max())
            .with("spread", s.spread());
        if let Some(nu) = nu {
            let rest = s.without_nearest(nu);
            if !rest.is_empty() {
                t = t
                    .with("remaining_min", rest.min())
                    .with("remaining_max", rest.max())
                    .with("remaining_spread", rest.spread());
            }
        }
        t
    }

    /// Span of a root multiset.
    pub fn from_roots(roots: &[f64]) -> Self {
        let lo = roots.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = roots.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Truths::new().with("span", hi - lo)
    }
}

pub fn verify_all(reports: &[BoundReport], truths: &Truths) -> Vec<Verification> {
    reports.iter().map(|r| verify_report(r, truths.get(&r.quantity))).collect()
}
