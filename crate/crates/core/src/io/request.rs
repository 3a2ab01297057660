//! Analysis requests, the report document they produce, and dispatch to the bound modules.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::parse::{self, MatrixFormat, PointFormat};
use crate::batch::{self, ExecMode};
use crate::complex_stats::{self, ComplexSample, DEFAULT_COLLINEARITY_TOL};
use crate::enclosing_disk;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::oracle::{self, Truths, Verification, MAX_BRUTE_POINTS, MAX_DIM};
use crate::poly_span::{self, MonicPoly};
use crate::real_bounds::{self, RealSample};
use crate::report::{sig17, BoundReport, Evidence};
use crate::spectral_bounds::{self, SpectrumSign};

pub const TOOL: &str = "varbounds";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Dispersion of a complex point set.
    Stats,
    /// Smallest enclosing disk of a complex point set.
    Disk,
    /// Variance inequalities for a real sample.
    RealBounds,
    /// Eigenvalue and spread localization from traces.
    EigenBounds,
    /// Span of a real-rooted polynomial.
    Span,
    /// Eigenvalue bounds checked against the oracle spectrum.
    Verify,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    File(PathBuf),
    /// Inline text with a label used in diagnostics.
    Text { label: String, text: String },
}

impl Input {
    fn load(&self) -> Result<(String, String)> {
        match self {
            Input::File(p) => Ok((p.display().to_string(), parse::read_text(p)?)),
            Input::Text { label, text } => Ok((label.clone(), text.clone())),
        }
    }

    fn path_hint(&self) -> PathBuf {
        match self {
            Input::File(p) => p.clone(),
            Input::Text { label, .. } => PathBuf::from(label),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    /// A known eigenvalue, enabling the deflated bounds.
    pub nu: Option<f64>,
    /// Take a nonnegative spectrum on the caller's word (non-symmetric input).
    pub assert_nonneg_spectrum: bool,
    /// Tolerance for the collinearity and circle checks.
    pub tol: Option<f64>,
    /// Attach oracle verification.
    pub oracle: bool,
    /// Subset indices for the subset-mean bounds.
    pub subset: Option<Vec<usize>>,
    pub matrix_format: Option<MatrixFormat>,
    pub point_format: Option<PointFormat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisRequest {
    pub kind: Kind,
    pub input: Input,
    pub options: Options,
}

impl AnalysisRequest {
    pub fn new(kind: Kind, input: Input) -> Self {
        AnalysisRequest { kind, input, options: Options::default() }
    }

    pub fn with_options(mut self, options: Options) -> Self {
        self.options = options;
        self
    }

    /// Checks option combinations before any input is read.
    pub fn validate(&self) -> Result<()> {
        let o = &self.options;
        if let Some(t) = o.tol {
            if t.is_nan() || t < 0.0 {
                return Err(Error::NegativeTolerance(t));
            }
        }
        if o.nu.is_some_and(|x| !x.is_finite()) {
            return Err(Error::Request("--nu must be finite".into()));
        }
        let matrix_kind = matches!(self.kind, Kind::EigenBounds | Kind::Verify);
        if o.nu.is_some() && !matrix_kind {
            return Err(Error::Request("a known eigenvalue applies to eigen-bounds and verify only".into()));
        }
        if o.assert_nonneg_spectrum && !matrix_kind {
            return Err(Error::Request("the spectrum assertion applies to eigen-bounds and verify only".into()));
        }
        if o.subset.is_some() && !matches!(self.kind, Kind::Stats | Kind::RealBounds) {
            return Err(Error::Request("a subset applies to stats and real-bounds only".into()));
        }
        Ok(())
    }
}

/// A named scalar computed from the input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    #[serde(with = "sig17::option")]
    pub value: Option<f64>,
}

fn q(name: &str, value: f64) -> Quantity {
    Quantity { name: name.to_string(), value: value.is_finite().then_some(value) }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationBlock {
    pub oracle: String,
    pub truths: Vec<Quantity>,
    pub results: Vec<Verification>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerificationBlock {
    fn new(oracle: &str, truths: Vec<Quantity>, results: Vec<Verification>) -> Self {
        let passed = results.iter().filter(|v| v.passed()).count();
        let failed = results.iter().filter(|v| v.failed()).count();
        VerificationBlock {
            oracle: oracle.to_string(),
            truths,
            skipped: results.len() - passed - failed,
            results,
            passed,
            failed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub kind: Kind,
    pub input: String,
    /// SHA-256 of the input text, hex.
    pub input_digest: String,
    pub summary: Vec<Quantity>,
    pub reports: Vec<BoundReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReportDocument {
    /// 0 when every attempted verification passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match &self.verification {
            Some(v) if v.failed > 0 => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse("<report>", e.line(), e.column(), e.to_string()))
    }

    /// Plain-text rendering, one line per bound.
    pub fn to_text(&self) -> String {
        let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
        let mut out = format!("{} {}  {:?}  {}\n", self.tool, self.version, self.kind, self.input);
        for s in &self.summary {
            out.push_str(&format!("  {:<24} {}\n", s.name, fmt(s.value)));
        }
        for r in &self.reports {
            let status = if r.applicable { "applicable" } else { "advisory" };
            out.push_str(&format!(
                "  {:<28} {:>14} <= {:<20} <= {:<14} {}\n",
                r.name,
                fmt(r.lower),
                r.quantity,
                fmt(r.upper),
                status
            ));
        }
        if let Some(v) = &self.verification {
            out.push_str(&format!("  verification ({}): {} passed, {} failed, {} skipped\n", v.oracle, v.passed, v.failed, v.skipped));
            for r in v.results.iter().filter(|r| r.failed()) {
                out.push_str(&format!("    FAIL {} ({})\n", r.name, r.quantity));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Process exit status for a failed request: input and request errors map to 2.
pub fn error_exit_code(_: &Error) -> i32 {
    2
}

pub fn run(request: &AnalysisRequest) -> Result<ReportDocument> {
    request.validate()?;
    let (label, text) = request.input.load()?;
    let hint = request.input.path_hint();
    let o = &request.options;
    let mut doc = ReportDocument {
        tool: TOOL.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        kind: request.kind,
        input: label.clone(),
        input_digest: digest(&text),
        summary: Vec::new(),
        reports: Vec::new(),
        verification: None,
        notes: Vec::new(),
    };
    match request.kind {
        Kind::Stats => {
            let fmt = o.point_format.unwrap_or_else(|| parse::point_format_for(&hint, &text));
            stats(&mut doc, &parse::parse_points_str(&text, &label, fmt)?, o)?
        }
        Kind::Disk => {
            let fmt = o.point_format.unwrap_or_else(|| parse::point_format_for(&hint, &text));
            disk(&mut doc, &parse::parse_points_str(&text, &label, fmt)?, o)?
        }
        Kind::RealBounds => real(&mut doc, &parse::parse_sample_str(&text, &label)?, o)?,
        Kind::EigenBounds | Kind::Verify => {
            let fmt = o.matrix_format.unwrap_or_else(|| parse::matrix_format_for(&hint, &text));
            let oracle = o.oracle || request.kind == Kind::Verify;
            eigen(&mut doc, &parse::parse_matrix_str(&text, &label, fmt)?, o, oracle)?
        }
        Kind::Span => span(&mut doc, &parse::parse_poly_str(&text, &label)?, o)?,
    }
    Ok(doc)
}

/// Runs independent requests, concurrently under [`ExecMode::Parallel`]; results keep input order.
pub fn run_batch(requests: &[AnalysisRequest], mode: ExecMode) -> Vec<Result<ReportDocument>> {
    batch::map(mode, requests, run)
}

/// Verification against the report's own known values; used where the bounded quantity is
/// computed exactly from the input.
fn self_check(doc: &mut ReportDocument, label: &str, truths: Vec<Quantity>, t: &Truths) {
    let results = oracle::verify_all(&doc.reports, t);
    doc.verification = Some(VerificationBlock::new(label, truths, results));
}

fn stats(doc: &mut ReportDocument, s: &ComplexSample, o: &Options) -> Result<()> {
    let tol = o.tol.unwrap_or(DEFAULT_COLLINEARITY_TOL);
    let c = complex_stats::collinearity_test(s, tol)?;
    let d = c.summary;
    doc.summary = vec![
        q("n", s.len() as f64),
        q("mean.re", d.mean.re),
        q("mean.im", d.mean.im),
        q("S_z^2", d.sz2),
        q("S^2.re", d.s2.re),
        q("S^2.im", d.s2.im),
        q("sigma_z^2", d.sigma_z2),
        q("collinear", if c.collinear { 1.0 } else { 0.0 }),
    ];
    if s.len() >= 2 {
        doc.reports.push(complex_stats::pairwise_gap_bound(s));
        doc.reports.extend(complex_stats::popoviciu_analogue(s));
        doc.reports.extend(complex_stats::samuelson_bounds(s));
    } else {
        doc.notes.push("a single point has no dispersion bounds".into());
    }
    if let Some(sub) = &o.subset {
        doc.reports.push(complex_stats::subset_mean_bound(s, sub)?);
    }
    if o.oracle {
        self_check(doc, "exact values", Vec::new(), &Truths::new());
    }
    Ok(())
}

fn disk(doc: &mut ReportDocument, s: &ComplexSample, o: &Options) -> Result<()> {
    let tol = o.tol.unwrap_or(DEFAULT_COLLINEARITY_TOL);
    let d = enclosing_disk::min_enclosing_disk(s);
    let c = enclosing_disk::circle_on_mean_check(s, tol)?;
    doc.summary = vec![
        q("n", s.len() as f64),
        q("center.re", d.center.re),
        q("center.im", d.center.im),
        q("radius", d.radius),
        q("on_circle_about_mean", if c.on_circle { 1.0 } else { 0.0 }),
    ];
    if let Some(m) = c.disk_matches {
        doc.summary.push(q("circle_about_mean_is_minimal", if m { 1.0 } else { 0.0 }));
    }
    if s.len() >= 2 {
        doc.reports = enclosing_disk::disk_inequality_chain(s)?;
    } else {
        doc.notes.push("a single point has radius 0; no chain to report".into());
    }
    if o.oracle {
        if s.len() <= MAX_BRUTE_POINTS {
            let b = oracle::min_disk_brute(s)?;
            let t = Truths::new().with("r_z", b.radius).with("r_z^2", b.radius * b.radius);
            self_check(doc, "exhaustive disk", vec![q("r_z", b.radius)], &t);
        } else {
            doc.notes.push(format!("oracle skipped: exhaustive disk limited to {MAX_BRUTE_POINTS} points"));
        }
    }
    Ok(())
}

fn real(doc: &mut ReportDocument, s: &RealSample, o: &Options) -> Result<()> {
    doc.summary = vec![
        q("n", s.len() as f64),
        q("min", s.min()),
        q("max", s.max()),
        q("mean", s.mean()),
        q("variance", s.variance()),
        q("m4", s.m4()),
    ];
    if let Some(k) = s.kurtosis() {
        doc.summary.push(q("kurtosis", k));
    }
    if s.len() < 2 {
        doc.notes.push("a single value has no variance bounds".into());
    } else {
        doc.reports.extend(real_bounds::classic_bounds(s));
        doc.reports.extend(real_bounds::refined_bounds_positive_mean(s));
        doc.reports.extend(real_bounds::refined_bounds_negative_min(s));
        doc.reports.extend(real_bounds::kurtosis_gated_bound(s));
        doc.reports.extend(real_bounds::extreme_value_bounds(s)?);
    }
    if let Some(sub) = &o.subset {
        doc.reports.push(real_bounds::mallows_richter(s, sub)?);
    }
    if o.oracle {
        self_check(doc, "exact values", Vec::new(), &Truths::new());
    }
    Ok(())
}

fn eigen(doc: &mut ReportDocument, m: &DenseMatrix, o: &Options, oracle: bool) -> Result<()> {
    let s = spectral_bounds::summarize(m);
    doc.summary = vec![
        q("n", s.n as f64),
        q("tr A", s.tr_a),
        q("tr A^2", s.tr_a2),
        q("tr B^2", s.tr_b2),
        q("eigenvalue mean", s.mean),
        q("eigenvalue variance", s.s_lambda2),
    ];
    let symmetric = m.is_symmetric(1e-12);
    let sign = if symmetric {
        spectral_bounds::spectrum_sign_symmetric(m)?
    } else if o.assert_nonneg_spectrum {
        SpectrumSign::Nonnegative(Evidence::CallerAsserted)
    } else {
        SpectrumSign::Unknown
    };
    if symmetric && o.assert_nonneg_spectrum && matches!(sign, SpectrumSign::HasNegative(_)) {
        doc.notes.push("asserted nonnegative spectrum contradicts the computed factorization; assertion ignored".into());
    }
    if s.n >= 2 {
        doc.reports.push(spectral_bounds::spread_sandwich(&s)?);
        doc.reports.extend(spectral_bounds::eigen_interval(&s)?);
    }
    doc.reports.extend(spectral_bounds::refined_spread_bounds(&s, sign));
    if let Some(nu) = o.nu {
        doc.reports.extend(spectral_bounds::deflated_bounds(&s, nu)?);
    }
    if !symmetric {
        doc.notes.push("input is not symmetric: a real spectrum is assumed".into());
    }
    if oracle {
        if !symmetric {
            doc.notes.push("oracle skipped: the eigensolver needs symmetric input".into());
        } else if s.n > MAX_DIM {
            doc.notes.push(format!("oracle skipped: dimension above {MAX_DIM}"));
        } else {
            let spec = oracle::eigenvalues_symmetric(m)?;
            let t = Truths::from_spectrum(&spec, o.nu);
            let mut truths = vec![q("lambda_min", spec.min()), q("lambda_max", spec.max()), q("spread", spec.spread())];
            if let Some(nu) = o.nu {
                let nearest = spec.values().iter().map(|x| (x - nu).abs()).fold(f64::INFINITY, f64::min);
                if nearest > 1e-7 * spec.values().iter().map(|x| x.abs()).fold(1.0, f64::max) {
                    doc.notes.push(format!("supplied eigenvalue {nu} is {nearest:e} from the nearest computed eigenvalue"));
                }
                for k in ["remaining_min", "remaining_max", "remaining_spread"] {
                    if let Some(v) = t.get(k) {
                        truths.push(q(k, v));
                    }
                }
            }
            let results = oracle::verify_all(&doc.reports, &t);
            doc.verification = Some(VerificationBlock::new("symmetric eigensolver", truths, results));
        }
    }
    Ok(())
}

fn span(doc: &mut ReportDocument, p: &MonicPoly, o: &Options) -> Result<()> {
    let m = poly_span::coeff_moments(p);
    doc.summary = vec![q("degree", p.degree() as f64), q("zero mean", m.mean), q("zero variance", m.variance)];
    doc.reports.push(poly_span::span_bounds(p)?);
    doc.reports.extend(poly_span::refined_span_bounds(p)?);
    if p.alternating_signs() {
        doc.notes.push("coefficient signs alternate: if the zeros are real they are nonnegative".into());
    }
    if o.oracle {
        if p.degree() > oracle::MAX_DEGREE {
            doc.notes.push(format!("oracle skipped: degree above {}", oracle::MAX_DEGREE));
        } else {
            let roots = oracle::real_roots(p)?;
            let t = Truths::from_roots(&roots);
            let results = oracle::verify_all(&doc.reports, &t);
            let span = t.get("span").unwrap_or(f64::NAN);
            doc.verification = Some(VerificationBlock::new("real root finder", vec![q("span", span)], results));
        }
    }
    Ok(())
}
