//! Brute-force ground truth for checking bounds: eigensolvers, a real-root finder,
//! an exhaustive smallest-disk search, and report verification.

mod disk;
mod eigen;
mod roots;
mod verify;

use serde::{Deserialize, Serialize};

use crate::report::sig17;

pub use disk::{min_disk_brute, MAX_BRUTE_POINTS};
pub use eigen::{eigenvalues_complex, eigenvalues_symmetric};
pub use roots::{real_roots, MAX_DEGREE};
pub use verify::{verify_all, verify_report, Status, Truths, Verification, VERIFY_TOL};

/// Largest matrix dimension the eigensolvers accept.
pub const MAX_DIM: usize = 64;

/// Real eigenvalues in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    #[serde(with = "sig17::vec")]
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Spectrum { eigenvalues }
    }

    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn spread(&self) -> f64 {
        self.max() - self.min()
    }

    /// The spectrum with the eigenvalue nearest to `nu` removed.
    pub fn without_nearest(&self, nu: f64) -> Spectrum {
        let mut rest = self.eigenvalues.clone();
        if let Some(i) = (0..rest.len()).min_by(|&i, &j| (rest[i] - nu).abs().total_cmp(&(rest[j] - nu).abs())) {
            rest.remove(i);
        }
        Spectrum { eigenvalues: rest }
    }
}
