use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Recovery thresholds for the two-class regular stochastic block model
/// with within-class degree `d1` and between-class degree `d2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RsbmThresholds {
    pub d1: usize,
    pub d2: usize,
    /// `(d1 - d2)^2`.
    pub gap_squared: f64,
    /// `4 (d1 + d2 - 1)`.
    pub brito_rhs: f64,
    /// `4 (d2 - 1) ((d1 + d2) / d2)^2`.
    pub spectral_rhs: f64,
    pub brito_holds: bool,
    pub spectral_holds: bool,
    pub brito_margin: f64,
    pub spectral_margin: f64,
}

/// Compare the known exact-recovery threshold `(d1-d2)^2 > 4(d1+d2-1)` with
/// the one implied by the spectral gap, `(d1-d2)^2 > 4(d2-1)((d1+d2)/d2)^2`.
///
/// ```
/// use bireg::clustering::rsbm_thresholds;
/// let t = rsbm_thresholds(14, 2).unwrap();
/// assert!(t.brito_holds && !t.spectral_holds);
/// ```
pub fn rsbm_thresholds(d1: usize, d2: usize) -> Result<RsbmThresholds> {
    if d2 == 0 {
        return Err(Error::InvalidParameters("between-class degree must be at least 1".into()));
    }
    let (a, b) = (d1 as f64, d2 as f64);
    let gap_squared = (a - b).powi(2);
    let brito_rhs = 4.0 * (a + b - 1.0);
    let spectral_rhs = 4.0 * (b - 1.0) * ((a + b) / b).powi(2);
    Ok(RsbmThresholds {
        d1,
        d2,
        gap_squared,
        brito_rhs,
        spectral_rhs,
        brito_holds: gap_squared > brito_rhs,
        spectral_holds: gap_squared > spectral_rhs,
        brito_margin: gap_squared - brito_rhs,
        spectral_margin: gap_squared - spectral_rhs,
    })
}
