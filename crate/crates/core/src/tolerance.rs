use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Thresholds governing every approximate decision in the crate.
///
/// `rank_rtol` is a relative singular-value cutoff. The effective cutoff for an
/// `m x n` matrix is `rank_rtol * max(m, n) * sigma_max`. `eq_atol` bounds the
/// normalized Frobenius residual used by [`crate::approx_eq`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rank_rtol: f64,
    pub eq_atol: f64,
}

impl Tolerance {
    pub const DEFAULT_RANK_RTOL: f64 = 1e-10;
    pub const DEFAULT_EQ_ATOL: f64 = 1e-9;

    pub fn new(rank_rtol: f64, eq_atol: f64) -> Result<Self> {
        for (name, v) in [("rank_rtol", rank_rtol), ("eq_atol", eq_atol)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        Ok(Self { rank_rtol, eq_atol })
    }

    /// Singular values at or below this value are treated as zero.
    pub fn rank_cutoff(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.rank_rtol * rows.max(cols) as f64 * sigma_max
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_rtol: Self::DEFAULT_RANK_RTOL,
            eq_atol: Self::DEFAULT_EQ_ATOL,
        }
    }
}
