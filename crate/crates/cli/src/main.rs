use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use varbounds::io::{self, AnalysisRequest, Input, Kind, MatrixFormat, Options, PointFormat, ReportDocument};
use varbounds::ExecMode;

/// Variance-based bounds for point sets, samples, matrix spectra and polynomial zeros.
#[derive(Parser, Debug)]
#[command(name = "varbounds", version, about, long_about = None)]
#[command(after_help = "Exit status: 0 on success, 1 if any oracle verification failed, 2 on input or usage errors.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dispersion statistics of a complex point set (CSV re,im rows or JSON [{re, im}]).
    Stats {
        #[command(flatten)]
        points: PointArgs,
        /// Zero-based indices of a subset for the subset-mean bound, e.g. 0,2.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest enclosing disk of a complex point set and its variance relations.
    Disk {
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Variance inequalities for a real sample (one value per line or comma-separated).
    RealBounds {
        /// Sample files; several are evaluated concurrently and reported in order.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Zero-based indices of a subset for the subset-mean bound, e.g. 0,2.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalue and spread bounds from the traces of a matrix (Matrix Market or CSV).
    EigenBounds {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Span bounds for the zeros of x^n + a1 x^(n-1) + ... + an.
    Span {
        /// Coefficients "1,a1,...,an" inline, or files holding them on one line.
        #[arg(required = true)]
        polys: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalue bounds checked against the reference eigensolver.
    Verify {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Tolerance for the collinearity and circle checks [default: 1e-9].
    #[arg(long, value_name = "REAL", allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Attach verification against the built-in reference computation.
    #[arg(long)]
    oracle: bool,
    /// Evaluate multiple inputs one after another instead of concurrently.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Point files; several are evaluated concurrently and reported in order.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Point file format [default: from the extension or content].
    #[arg(long, value_enum)]
    points_format: Option<PointFmt>,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Matrix files; several are evaluated concurrently and reported in order.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// A known eigenvalue; adds bounds on the rest of the spectrum.
    #[arg(long, value_name = "REAL", allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Treat the spectrum as nonnegative (for non-symmetric input).
    #[arg(long)]
    assert_nonneg_spectrum: bool,
    /// Matrix file format [default: from the extension or header].
    #[arg(long, value_enum)]
    matrix_format: Option<MatrixFmt>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PointFmt {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixFmt {
    #[value(name = "mtx")]
    MatrixMarket,
    Csv,
}

impl From<PointFmt> for PointFormat {
    fn from(f: PointFmt) -> Self {
        match f {
            PointFmt::Csv => PointFormat::Csv,
            PointFmt::Json => PointFormat::Json,
        }
    }
}

impl From<MatrixFmt> for MatrixFormat {
    fn from(f: MatrixFmt) -> Self {
        match f {
            MatrixFmt::MatrixMarket => MatrixFormat::MatrixMarket,
            MatrixFmt::Csv => MatrixFormat::Csv,
        }
    }
}

fn options(common: &Common) -> Options {
    Options { tol: common.tol, oracle: common.oracle, ..Options::default() }
}

fn files(kind: Kind, inputs: &[PathBuf], opts: Options) -> Vec<AnalysisRequest> {
    inputs
        .iter()
        .map(|p| AnalysisRequest::new(kind, Input::File(p.clone())).with_options(opts.clone()))
        .collect()
}

fn matrix_requests(kind: Kind, m: &MatrixArgs, common: &Common) -> Vec<AnalysisRequest> {
    let opts = Options {
        nu: m.nu,
        assert_nonneg_spectrum: m.assert_nonneg_spectrum,
        matrix_format: m.matrix_format.map(Into::into),
        ..options(common)
    };
    files(kind, &m.inputs, opts)
}

fn requests(cmd: &Command) -> (Vec<AnalysisRequest>, &Common) {
    match cmd {
        Command::Stats { points, subset, common } => {
            let opts = Options {
                subset: subset.clone(),
                point_format: points.points_format.map(Into::into),
                ..options(common)
            };
            (files(Kind::Stats, &points.inputs, opts), common)
        }
        Command::Disk { points, common } => {
            let opts = Options { point_format: points.points_format.map(Into::into), ..options(common) };
            (files(Kind::Disk, &points.inputs, opts), common)
        }
        Command::RealBounds { inputs, subset, common } => {
            let opts = Options { subset: subset.clone(), ..options(common) };
            (files(Kind::RealBounds, inputs, opts), common)
        }
        Command::EigenBounds { matrix, common } => (matrix_requests(Kind::EigenBounds, matrix, common), common),
        Command::Verify { matrix, common } => (matrix_requests(Kind::Verify, matrix, common), common),
        Command::Span { polys, common } => {
            let reqs = polys
                .iter()
                .map(|arg| {
                    let path = PathBuf::from(arg);
                    let input = if path.is_file() {
                        Input::File(path)
                    } else {
                        Input::Text { label: "<coefficients>".into(), text: arg.clone() }
                    };
                    AnalysisRequest::new(Kind::Span, input).with_options(options(common))
                })
                .collect();
            (reqs, common)
        }
    }
}

/// One input gives a single document; several give an array in input order.
fn render(docs: &[ReportDocument], format: OutputFormat, batch: bool) -> String {
    match format {
        OutputFormat::Text => docs.iter().map(ReportDocument::to_text).collect::<Vec<_>>().join("\n"),
        OutputFormat::Json if !batch => docs[0].to_json() + "\n",
        OutputFormat::Json => serde_json::to_string_pretty(docs).expect("reports serialize") + "\n",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (reqs, common) = requests(&cli.command);
    let mode = if common.sequential { ExecMode::Sequential } else { ExecMode::Parallel };

    let mut status = 0;
    let mut docs = Vec::new();
    for res in io::run_batch(&reqs, mode) {
        match res {
            Ok(doc) => {
                status = status.max(doc.exit_code());
                docs.push(doc);
            }
            Err(e) => {
                eprintln!("varbounds: {e}");
                status = status.max(io::error_exit_code(&e));
            }
        }
    }

    if !docs.is_empty() {
        let out = render(&docs, common.format, reqs.len() > 1);
        match &common.out {
            Some(path) => {
                if let Err(e) = fs::write(path, out) {
                    eprintln!("varbounds: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => print!("{out}"),
        }
    }
    ExitCode::from(status as u8)
}
