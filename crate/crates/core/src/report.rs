//! The common result type of every bound: what was bounded, the bound values, and whether the
//! bound's preconditions were met on the given input.

use serde::{Deserialize, Serialize};

/// Relative slack used by [`BoundReport::holds`].
pub const VERDICT_TOL: f64 = 1e-9;

/// `x <= y` with slack `rel * max(|x|, |y|, 1)`.
pub fn le_tol(x: f64, y: f64, rel: f64) -> bool {
    x <= y + rel * x.abs().max(y.abs()).max(1.0)
}

/// `|x - y| <= rel * max(|x|, |y|, 1)`.
pub fn eq_tol(x: f64, y: f64, rel: f64) -> bool {
    le_tol(x, y, rel) && le_tol(y, x, rel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Lower,
    Upper,
    TwoSided,
}

/// Where a precondition's truth value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// Evaluated from the input.
    Computed,
    /// Taken on the caller's word.
    CallerAsserted,
    /// Recorded for reference; does not gate applicability.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Precondition {
    pub condition: String,
    pub satisfied: bool,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    /// Short tag naming the inequality family.
    pub reference: String,
    /// What is being bounded, e.g. `variance` or `spread`.
    pub quantity: String,
    pub kind: BoundKind,
    #[serde(with = "sig17::option")]
    pub lower: Option<f64>,
    #[serde(with = "sig17::option")]
    pub upper: Option<f64>,
    /// The bounded quantity itself, when it is known from the input.
    #[serde(with = "sig17::option")]
    pub value: Option<f64>,
    pub applicable: bool,
    pub diagnostics: Vec<Precondition>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(name: &str, reference: &str, quantity: &str) -> Self {
        BoundReport {
            name: name.to_string(),
            reference: reference.to_string(),
            quantity: quantity.to_string(),
            kind: BoundKind::TwoSided,
            lower: None,
            upper: None,
            value: None,
            applicable: true,
            diagnostics: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn lower(mut self, x: f64) -> Self {
        self.lower = finite(x);
        self.kind = if self.upper.is_some() { BoundKind::TwoSided } else { BoundKind::Lower };
        self
    }

    pub fn upper(mut self, x: f64) -> Self {
        self.upper = finite(x);
        self.kind = if self.lower.is_some() { BoundKind::TwoSided } else { BoundKind::Upper };
        self
    }

    pub fn value(mut self, x: f64) -> Self {
        self.value = finite(x);
        self
    }

    /// Records a gating precondition evaluated from the input.
    pub fn require(self, condition: &str, satisfied: bool) -> Self {
        self.precondition(condition, satisfied, Evidence::Computed)
    }

    pub fn precondition(mut self, condition: &str, satisfied: bool, evidence: Evidence) -> Self {
        if evidence != Evidence::Informational && !satisfied {
            self.applicable = false;
        }
        self.diagnostics.push(Precondition {
            condition: condition.to_string(),
            satisfied,
            evidence,
        });
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Marks the report as not applicable; its values, if any, are advisory.
    pub fn inapplicable(mut self, reason: &str) -> Self {
        self.applicable = false;
        self.notes.push(reason.to_string());
        self
    }

    /// Whether the known value lies inside the bounds (with [`VERDICT_TOL`] slack).
    /// `None` when the bounded quantity is not known from the input.
    pub fn holds(&self) -> Option<bool> {
        self.holds_within(VERDICT_TOL)
    }

    pub fn holds_within(&self, rel: f64) -> Option<bool> {
        let v = self.value?;
        Some(self.brackets(v, rel))
    }

    /// Whether `truth` lies between the bounds with relative slack `rel`.
    pub fn brackets(&self, truth: f64, rel: f64) -> bool {
        self.lower.is_none_or(|lo| le_tol(lo, truth, rel))
            && self.upper.is_none_or(|hi| le_tol(truth, hi, rel))
    }

    /// Whether every side that is present equals the value (saturation).
    pub fn is_tight(&self, rel: f64) -> bool {
        let Some(v) = self.value else { return false };
        self.lower.is_none_or(|lo| eq_tol(lo, v, rel)) && self.upper.is_none_or(|hi| eq_tol(hi, v, rel))
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Serialize floats with 17 significant digits, which round-trips every `f64` exactly.
pub(crate) mod sig17 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::{Number, Value};
    use std::str::FromStr;

    pub fn to_value(x: f64) -> Value {
        if !x.is_finite() {
            return Value::Null;
        }
        let text = format!("{x:.16e}");
        Number::from_str(&text).map(Value::Number).unwrap_or(Value::Null)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => to_value(*v).serialize(s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Option::<f64>::deserialize(d)
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
            xs.iter().map(|x| to_value(*x)).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Vec::<f64>::deserialize(d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_follows_sides() {
        assert_eq!(BoundReport::new("a", "r", "q").lower(1.0).kind, BoundKind::Lower);
        assert_eq!(BoundReport::new("a", "r", "q").upper(1.0).kind, BoundKind::Upper);
        assert_eq!(BoundReport::new("a", "r", "q").upper(1.0).lower(0.0).kind, BoundKind::TwoSided);
    }

    #[test]
    fn informational_preconditions_do_not_gate() {
        let r = BoundReport::new("a", "r", "q")
            .precondition("printed form", false, Evidence::Informational)
            .require("x > 0", true);
        assert!(r.applicable);
        let r = r.require("y > 0", false);
        assert!(!r.applicable);
    }

    #[test]
    fn holds_uses_relative_slack() {
        let r = BoundReport::new("a", "r", "q").lower(1.0).upper(2.0).value(2.0 + 1e-10);
        assert_eq!(r.holds(), Some(true));
        let r = r.value(2.1);
        assert_eq!(r.holds(), Some(false));
        assert_eq!(BoundReport::new("a", "r", "q").lower(0.0).holds(), None);
    }

    #[test]
    fn non_finite_values_are_dropped() {
        let r = BoundReport::new("a", "r", "q").lower(f64::NAN).upper(f64::INFINITY);
        assert_eq!(r.lower, None);
        assert_eq!(r.upper, None);
    }

    #[test]
    fn json_uses_seventeen_digits_and_round_trips() {
        let r = BoundReport::new("a", "r", "q").lower(0.1).upper(1.0 / 3.0).value(-0.25);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("1.0000000000000001e-1"), "{text}");
        assert!(text.contains("3.3333333333333331e-1"), "{text}");
        let back: BoundReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
