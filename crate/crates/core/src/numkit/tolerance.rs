use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by every routine.
///
/// * `abs_eps` – absolute tolerance for identities such as unitarity and covariance.
/// * `rank_eps` – singular values at or below `rank_eps * s_max` count as zero.
/// * `eig_sep` – eigenvalues closer than this are treated as one cluster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rank_eps: f64,
    pub eig_sep: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_eps: 1e-9, rank_eps: 1e-8, eig_sep: 1e-6 }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rank_eps: f64, eig_sep: f64) -> Result<Self> {
        let t = Tolerance { abs_eps, rank_eps, eig_sep };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("abs_eps", self.abs_eps), ("rank_eps", self.rank_eps), ("eig_sep", self.eig_sep)] {
            if !(v.is_finite() && v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        if self.abs_eps >= self.eig_sep {
            return Err(Error::InvalidTolerance(format!(
                "abs_eps = {} must be smaller than eig_sep = {}",
                self.abs_eps, self.eig_sep
            )));
        }
        Ok(())
    }
}
