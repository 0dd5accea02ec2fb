use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graphgen::BipartiteGraph;
use crate::spectra::{adjacency_spectrum, build_b, perron_check, spectrum_b_from_a};

/// Tolerance on the Perron eigenvalue `sqrt(d1 d2)` and on the Perron vector residual.
pub const PERRON_VALUE_TOL: f64 = 1e-9;
pub const PERRON_VECTOR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check says nothing for these parameters.
    NoInformation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "==")]
    Equal,
}

/// One named inequality with its measured value and bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub measured: Option<f64>,
    pub relation: Relation,
    pub bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn compare(name: &str, measured: f64, relation: Relation, bound: f64) -> Self {
        let ok = match relation {
            Relation::AtMost => measured <= bound,
            Relation::AtLeast => measured >= bound,
            Relation::Equal => measured == bound,
        };
        Self {
            name: name.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            measured: Some(measured),
            relation,
            bound,
            note: None,
        }
    }

    fn no_information(name: &str, measured: Option<f64>, relation: Relation, bound: f64, note: &str) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::NoInformation,
            measured,
            relation,
            bound,
            note: Some(note.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Spectral-gap checks on one graph.
///
/// The graph is oriented so that `d1 >= d2` (transposing if needed) before
/// any check is made.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub epsilon: f64,
    pub n: usize,
    pub m: usize,
    pub d1: usize,
    pub d2: usize,
    pub transposed: bool,
    pub leading: f64,
    pub eta: f64,
    pub eta_min_plus: Option<f64>,
    pub rank_r: usize,
    /// Largest non-Perron modulus in the spectrum of `B`, when it is defined.
    pub lambda2_b: Option<f64>,
    pub perron_residual: f64,
    pub checks: Vec<Check>,
}

impl GapCertificate {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// No check failed (checks without information are not failures).
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).map(|c| c.name.as_str()).collect()
    }
}

pub const CHECK_PERRON_VALUE: &str = "perron_value";
pub const CHECK_PERRON_VECTOR: &str = "perron_vector";
pub const CHECK_RAMANUJAN_UPPER: &str = "ramanujan_upper";
pub const CHECK_SMALLEST_POSITIVE: &str = "smallest_positive_lower";
pub const CHECK_FULL_RANK: &str = "full_rank";
pub const CHECK_ALON_BOPPANA: &str = "alon_boppana";
pub const CHECK_NONBACKTRACKING_BULK: &str = "nonbacktracking_bulk";

/// Measure the spectrum of `g` and compare it with the bounds, all with slack `epsilon`:
///
/// - `eta <= sqrt(d1-1) + sqrt(d2-1) + epsilon`
/// - `eta_min_plus >= sqrt(d1-1) - sqrt(d2-1) - epsilon`
/// - `rank(X) = n` when `d1 != d2`
/// - `eta >= sqrt(d1-1) + sqrt(d2-1) - epsilon`
/// - `|lambda_2(B)| <= ((d1-1)(d2-1))^{1/4} + epsilon`
///
/// plus the exact Perron value and vector. Failures are recorded, not raised.
pub fn gap_certificate(g: &BipartiteGraph, epsilon: f64) -> Result<GapCertificate> {
    g.require_simple()?;
    let transposed = g.d1() < g.d2();
    let owned;
    let g = if transposed {
        owned = g.transpose();
        &owned
    } else {
        g
    };
    let (n, m, d1, d2) = (g.n(), g.m(), g.d1(), g.d2());
    let spec = adjacency_spectrum(g)?;
    let (a, b) = (((d1.max(1) - 1) as f64).sqrt(), ((d2.max(1) - 1) as f64).sqrt());
    let ramanujan = a + b;

    let mut checks = Vec::new();
    let perron = ((d1 * d2) as f64).sqrt();
    let mut c = Check::compare(CHECK_PERRON_VALUE, (spec.leading() - perron).abs(), Relation::AtMost, PERRON_VALUE_TOL);
    c.note = Some(format!("|lambda_1 - sqrt(d1 d2)| with sqrt(d1 d2) = {perron}"));
    checks.push(c);

    let perron_residual = perron_check(&build_b(g)?, d1, d2).max_residual();
    checks.push(Check::compare(CHECK_PERRON_VECTOR, perron_residual, Relation::AtMost, PERRON_VECTOR_TOL));

    checks.push(Check::compare(CHECK_RAMANUJAN_UPPER, spec.eta, Relation::AtMost, ramanujan + epsilon));

    let lower = a - b - epsilon;
    checks.push(if d1 == d2 {
        Check::no_information(CHECK_SMALLEST_POSITIVE, spec.eta_min_plus, Relation::AtLeast, lower, "no information gained when d1 = d2")
    } else {
        match spec.eta_min_plus {
            Some(v) => Check::compare(CHECK_SMALLEST_POSITIVE, v, Relation::AtLeast, lower),
            None => Check { measured: None, ..Check::compare(CHECK_SMALLEST_POSITIVE, f64::NAN, Relation::AtLeast, lower) },
        }
    });

    checks.push(if d1 == d2 {
        Check::no_information(CHECK_FULL_RANK, Some(spec.rank_r as f64), Relation::Equal, n as f64, "rank is only predicted when d1 != d2")
    } else {
        Check::compare(CHECK_FULL_RANK, spec.rank_r as f64, Relation::Equal, n as f64)
    });

    checks.push(Check::compare(CHECK_ALON_BOPPANA, spec.eta, Relation::AtLeast, ramanujan - epsilon));

    let radius = (a * b).sqrt();
    let lambda2_b = match spectrum_b_from_a(&spec, d1, d2) {
        Ok(nb) => {
            let l2 = nb.lambda2_modulus();
            checks.push(Check::compare(CHECK_NONBACKTRACKING_BULK, l2, Relation::AtMost, radius + epsilon));
            Some(l2)
        }
        Err(e) => {
            checks.push(Check::no_information(CHECK_NONBACKTRACKING_BULK, None, Relation::AtMost, radius + epsilon, &e.to_string()));
            None
        }
    };

    Ok(GapCertificate {
        epsilon,
        n,
        m,
        d1,
        d2,
        transposed,
        leading: spec.leading(),
        eta: spec.eta,
        eta_min_plus: spec.eta_min_plus,
        rank_r: spec.rank_r,
        lambda2_b,
        perron_residual,
        checks,
    })
}
