//! Variance-based bounds for complex point sets, real samples, matrix spectra and
//! polynomial spans. Every bound is returned as a [`BoundReport`] that records whether its
//! preconditions held on the input; the [`oracle`] module supplies brute-force ground truth.

pub mod batch;
pub mod complex_stats;
pub mod enclosing_disk;
pub mod error;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod poly_span;
pub mod real_bounds;
pub mod report;
pub mod spectral_bounds;
pub mod sweep;

pub use batch::ExecMode;
pub use complex_stats::ComplexSample;
pub use enclosing_disk::Disk;
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, DenseMatrix};
pub use poly_span::MonicPoly;
pub use real_bounds::RealSample;
pub use report::{BoundKind, BoundReport, Evidence, Precondition};
pub use spectral_bounds::SpectralSummary;
