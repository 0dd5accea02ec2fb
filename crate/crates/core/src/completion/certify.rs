use serde::{Deserialize, Serialize};

use crate::completion::{gamma2_upper, measured_eta, CompletionInstance};
use crate::error::{Error, Result};
use crate::numkernel::DenseMatrix;

/// Value of the Grothendieck constant used by every certificate.
pub const KG_CONSTANT: f64 = 1.7822;
/// Rounded constant quoted alongside ours.
pub const PAPER_C: f64 = 7.13;

pub const GAMMA2_NOTE: &str =
    "gamma_2(Y) replaced by the upper bound min(||Y||_Tr, sqrt(rank) max|Y_ij|); the certified bound is looser than with exact gamma_2";

/// Generalization-error certificate for a completed matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub gamma2_ub: f64,
    pub gamma2_lb: f64,
    /// Second singular value of the mask.
    pub eta: f64,
    /// `c gamma2_ub^2 eta / sqrt(d1 d2)`, plus `4 delta^2` with noise.
    pub mse_bound: f64,
    /// Same with `eta` replaced by `sqrt(d1-1) + sqrt(d2-1) + epsilon`.
    pub mse_bound_corollary: f64,
    pub epsilon: f64,
    /// `||X - Y||_F^2 / (nm)`.
    pub mse_measured: f64,
    pub satisfied: bool,
    pub kg_constant: f64,
    pub c: f64,
    pub paper_c: f64,
    pub delta: f64,
    /// Objective the completion was computed with.
    pub objective: String,
    pub gamma2_note: String,
    /// Regular square case only: the earlier form with constant `8 K_G`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_bound: Option<f64>,
}

/// Certify `xhat` against the target of `inst`.
pub fn certify(inst: &CompletionInstance, xhat: &DenseMatrix, epsilon: f64) -> Result<BoundCertificate> {
    if (xhat.rows(), xhat.cols()) != (inst.y.rows(), inst.y.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "estimate is {}x{} but Y is {}x{}",
            xhat.rows(),
            xhat.cols(),
            inst.y.rows(),
            inst.y.cols()
        )));
    }
    let g = &inst.mask;
    let (d1, d2) = (g.d1() as f64, g.d2() as f64);
    let gamma = gamma2_upper(&inst.y)?;
    let eta = measured_eta(g)?;
    let c = 4.0 * KG_CONSTANT;
    let noise = 4.0 * inst.delta * inst.delta;
    let scale = c * gamma.upper * gamma.upper / (d1 * d2).sqrt();
    let mse_bound = scale * eta + noise;
    let eta_cor = (d1 - 1.0).sqrt() + (d2 - 1.0).sqrt() + epsilon;
    let mse_bound_corollary = scale * eta_cor + noise;
    let (n, m) = (inst.y.rows(), inst.y.cols());
    let mut sq = 0.0;
    for i in 0..n {
        for j in 0..m {
            sq += (xhat[(i, j)] - inst.y[(i, j)]).powi(2);
        }
    }
    let mse_measured = sq / (n * m) as f64;
    let square_bound =
        (n == m && g.d1() == g.d2()).then(|| 8.0 * KG_CONSTANT * gamma.upper * gamma.upper * eta / d1 + noise);
    Ok(BoundCertificate {
        gamma2_ub: gamma.upper,
        gamma2_lb: gamma.lower,
        eta,
        mse_bound,
        mse_bound_corollary,
        epsilon,
        mse_measured,
        satisfied: mse_measured <= mse_bound,
        kg_constant: KG_CONSTANT,
        c,
        paper_c: PAPER_C,
        delta: inst.delta,
        objective: "trace_norm".into(),
        gamma2_note: GAMMA2_NOTE.into(),
        square_bound,
    })
}
