use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::BipartiteGraph;
use crate::numkernel::{complex_log_det, wrap_angle, ComplexMatrix, LogDet};
use crate::spectra::build_b;

/// Points closer than this to `0` or `+-1` are refused.
pub const EXCLUSION_RADIUS: f64 = 1e-6;

/// Both sides of `det(B - lambda I) = (lambda^2 - 1)^{|E|-|V|} det(D - lambda A + lambda^2 I)`
/// in log form, and their discrepancy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IharaResidual {
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub lhs: LogDet,
    pub rhs: LogDet,
    /// `|L - R| / max(|L|, |R|, 1)` on the log-moduli.
    pub log_modulus_rel: f64,
    /// `|wrap(arg L - arg R)|`.
    pub argument_diff: f64,
}

impl IharaResidual {
    pub fn max_discrepancy(&self) -> f64 {
        self.log_modulus_rel.max(self.argument_diff)
    }
}

/// `D - lambda A + lambda^2 I` with `D = diag(deg(v) - 1)`.
pub fn ihara_vertex_matrix(g: &BipartiteGraph, lambda: Complex64) -> ComplexMatrix {
    let size = g.num_vertices();
    let lambda2 = lambda * lambda;
    let mut data = vec![Complex64::new(0.0, 0.0); size * size];
    for (v, d) in g.degrees().into_iter().enumerate() {
        data[v * size + v] = Complex64::new(d as f64 - 1.0, 0.0) + lambda2;
    }
    for &(l, r) in g.edges() {
        let rr = g.n() + r;
        data[l * size + rr] -= lambda;
        data[rr * size + l] -= lambda;
    }
    ComplexMatrix::from_vec(size, size, data).expect("square")
}

/// Evaluate both sides of the Ihara-Bass identity at `lambda` on a simple graph.
pub fn ihara_bass_residual(g: &BipartiteGraph, lambda: Complex64) -> Result<IharaResidual> {
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(Error::NonFinite);
    }
    for p in [0.0, 1.0, -1.0] {
        if (lambda - p).norm() < EXCLUSION_RADIUS {
            return Err(Error::ExcludedLambda(format!("{lambda} is within {EXCLUSION_RADIUS} of {p}")));
        }
    }
    let b = build_b(g)?;
    let lhs = complex_log_det(&b.shifted(lambda))?;
    let vertex = complex_log_det(&ihara_vertex_matrix(g, lambda))?;
    let k = g.num_edges() as f64 - g.num_vertices() as f64;
    let factor = lambda * lambda - 1.0;
    let rhs = LogDet {
        log_modulus: k * factor.norm().ln() + vertex.log_modulus,
        argument: wrap_angle(k * factor.arg() + vertex.argument),
    };

    let (log_modulus_rel, argument_diff) = match (lhs.is_singular(), rhs.is_singular()) {
        (true, true) => (0.0, 0.0),
        (false, false) => {
            let (l, r) = (lhs.log_modulus, rhs.log_modulus);
            ((l - r).abs() / l.abs().max(r.abs()).max(1.0), wrap_angle(lhs.argument - rhs.argument).abs())
        }
        _ => (f64::INFINITY, f64::INFINITY),
    };
    Ok(IharaResidual { lambda_re: lambda.re, lambda_im: lambda.im, lhs, rhs, log_modulus_rel, argument_diff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::sample_simple;
    use crate::numkernel::RngStream;

    #[test]
    fn k23_points() {
        let g = BipartiteGraph::complete(2, 3);
        for lambda in [Complex64::new(0.0, 2.0), Complex64::new(0.5, 0.0)] {
            let r = ihara_bass_residual(&g, lambda).unwrap();
            assert!(r.max_discrepancy() <= 1e-10, "{r:?}");
        }
    }

    #[test]
    fn excluded_points() {
        let g = BipartiteGraph::complete(2, 3);
        for lambda in [0.0, 1.0 + 1e-7, -1.0] {
            assert!(matches!(ihara_bass_residual(&g, Complex64::new(lambda, 0.0)), Err(Error::ExcludedLambda(_))));
        }
        assert!(ihara_bass_residual(&g, Complex64::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn random_small_graph() {
        let mut rng = RngStream::new(17);
        let g = sample_simple(6, 9, 3, 2, &mut rng, 100_000).unwrap().graph;
        for _ in 0..10 {
            let radius = 0.5 + 2.5 * rng.uniform();
            let theta = 2.0 * std::f64::consts::PI * rng.uniform();
            let lambda = Complex64::from_polar(radius, theta);
            if (lambda - 1.0).norm() < 0.1 || (lambda + 1.0).norm() < 0.1 {
                continue;
            }
            let r = ihara_bass_residual(&g, lambda).unwrap();
            assert!(r.max_discrepancy() <= 1e-8, "{r:?}");
        }
    }

    #[test]
    fn both_sides_vanish_on_an_eigenvalue() {
        let g = BipartiteGraph::complete(2, 3);
        let r = ihara_bass_residual(&g, Complex64::new(2f64.sqrt(), 0.0)).unwrap();
        assert!(r.lhs.log_modulus < -20.0, "{r:?}");
        assert!(r.rhs.log_modulus < -20.0, "{r:?}");
    }
}
