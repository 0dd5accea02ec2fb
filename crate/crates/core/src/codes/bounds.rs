use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rate and distance guarantees for a Tanner code on a `(d1, d2)`-biregular graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceBoundReport {
    pub n: usize,
    pub d1: usize,
    pub d2: usize,
    pub delta1: f64,
    pub delta2: f64,
    pub eta_used: f64,
    /// `k1/d1 + k2/d2 - 1`, when the component dimensions are known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_lb: Option<f64>,
    pub distance_lb: f64,
    /// `distance_lb / (n d1)`.
    pub relative_distance_lb: f64,
}

impl DistanceBoundReport {
    pub fn with_rate(mut self, k1: usize, k2: usize) -> Self {
        self.rate_lb = Some(rate_lower_bound(self.d1, self.d2, k1, k2));
        self
    }
}

/// `k1/d1 + k2/d2 - 1`. May be negative, in which case it says nothing.
///
/// ```
/// use bireg::codes::rate_lower_bound;
/// assert!((rate_lower_bound(14, 9, 8, 4) - 0.015873).abs() < 1e-6);
/// ```
pub fn rate_lower_bound(d1: usize, d2: usize, k1: usize, k2: usize) -> f64 {
    k1 as f64 / d1 as f64 + k2 as f64 / d2 as f64 - 1.0
}

/// Minimum-distance lower bound `(n/d2) (delta1 delta2 - (eta/2)(delta1 + delta2))`,
/// valid when `delta1 >= delta2 > eta/2`.
pub fn janwa_lal_bound(n: usize, d1: usize, d2: usize, delta1: f64, delta2: f64, eta: f64) -> Result<DistanceBoundReport> {
    if n == 0 || d1 == 0 || d2 == 0 {
        return Err(Error::InvalidParameters("n, d1, d2 must be positive".into()));
    }
    if !eta.is_finite() || eta < 0.0 {
        return Err(Error::InvalidParameters(format!("eta must be finite and nonnegative, got {eta}")));
    }
    if delta1 < delta2 {
        return Err(Error::Hypothesis(format!("delta1 = {delta1} < delta2 = {delta2}")));
    }
    if delta2 <= eta / 2.0 {
        return Err(Error::Hypothesis(format!("delta2 = {delta2} <= eta/2 = {}", eta / 2.0)));
    }
    let distance_lb = n as f64 / d2 as f64 * (delta1 * delta2 - 0.5 * eta * (delta1 + delta2));
    Ok(DistanceBoundReport {
        n,
        d1,
        d2,
        delta1,
        delta2,
        eta_used: eta,
        rate_lb: None,
        distance_lb,
        relative_distance_lb: distance_lb / (n * d1) as f64,
    })
}

/// [`janwa_lal_bound`] with `eta = sqrt(d1-1) + sqrt(d2-1) + epsilon`, the
/// second eigenvalue of a typical random biregular graph.
///
/// ```
/// use bireg::codes::corollary_bound;
/// let r = corollary_bound(216, 14, 9, 7.0, 6.0, 0.0).unwrap();
/// assert!((r.distance_lb - 4.299).abs() < 1e-3);
/// ```
pub fn corollary_bound(n: usize, d1: usize, d2: usize, delta1: f64, delta2: f64, epsilon: f64) -> Result<DistanceBoundReport> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidParameters("d1, d2 must be positive".into()));
    }
    let eta = ((d1 - 1) as f64).sqrt() + ((d2 - 1) as f64).sqrt() + epsilon;
    janwa_lal_bound(n, d1, d2, delta1, delta2, eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let r = corollary_bound(216, 14, 9, 7.0, 6.0, 0.0).unwrap().with_rate(8, 4);
        // frozen from direct evaluation of the closed form
        assert!((r.distance_lb - 4.299369567212011).abs() < 1e-12);
        assert!((r.relative_distance_lb - 0.0014217491955066173).abs() < 1e-15);
        assert!((r.rate_lb.unwrap() - 0.015873015873015817).abs() < 1e-15);
        assert!((r.eta_used - (13f64.sqrt() + 8f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn rate_edge_cases() {
        assert_eq!(rate_lower_bound(5, 5, 5, 5), 1.0);
        assert!((rate_lower_bound(3, 2, 1, 1) + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn boundary_and_degenerate_eta() {
        // 6 * 3 = (4/2)(6 + 3)
        let r = janwa_lal_bound(10, 4, 4, 6.0, 3.0, 4.0).unwrap();
        assert_eq!(r.distance_lb, 0.0);
        let r = janwa_lal_bound(10, 4, 5, 3.0, 2.0, 0.0).unwrap();
        assert_eq!(r.distance_lb, 10.0 * 6.0 / 5.0);
    }

    #[test]
    fn hypothesis_gate() {
        assert!(matches!(janwa_lal_bound(10, 4, 4, 2.0, 3.0, 1.0), Err(Error::Hypothesis(_))));
        assert!(matches!(corollary_bound(216, 14, 9, 7.0, 6.0, 6.0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn decreasing_in_epsilon() {
        let mut last = f64::INFINITY;
        for k in 0..20 {
            let eps = 0.01 * k as f64;
            let d = corollary_bound(216, 14, 9, 7.0, 6.0, eps).unwrap().distance_lb;
            assert!(d < last);
            last = d;
        }
    }
}
