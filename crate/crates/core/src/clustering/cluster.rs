use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::clustering::{frame_eigenpairs, markov, FrameOperator};
use crate::error::{Error, Result};
use crate::graphgen::FrameGraph;
use crate::numkernel::DenseMatrix;

/// Default grouping tolerance on normalized embeddings.
pub const DEFAULT_GROUP_TOL: f64 = 1e-6;
/// Eigengaps below this make the selected eigenspace ambiguous.
pub const MIN_EIGENGAP: f64 = 1e-10;
/// Selected eigenvalues must match the frame's within this tolerance.
pub const FRAME_MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterResult {
    pub assignment: Vec<usize>,
    pub num_clusters: usize,
    /// `y^v`: the `K` selected eigenvectors of `P` at vertex `v`, each
    /// eigenvector scaled to unit max-norm.
    pub embedding: Vec<Vec<f64>>,
    pub tol: f64,
    /// Eigenvalues of `P` behind the embedding, by decreasing modulus.
    pub eigenvalues: Vec<f64>,
    /// `|mu_K| - |mu_{K+1}|`, or `None` when `K` is the whole spectrum.
    pub eigengap: Option<f64>,
    pub reliable: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Spectral clustering of a frame graph with `K` eigenvectors.
///
/// The selected eigenvalues are compared with the `K` largest-modulus
/// eigenvalues of the frame Markov matrix; a mismatch (a frame eigenvalue
/// buried in the bulk) marks the result unreliable.
pub fn spectral_cluster(fg: &FrameGraph, k: usize, tol: f64) -> Result<ClusterResult> {
    let mut result = spectral_cluster_matrix(&fg.adjacency(), k, tol)?;
    let mut frame_values: Vec<f64> =
        frame_eigenpairs(&fg.frame, FrameOperator::Markov)?.into_iter().map(|p| p.value).collect();
    sort_by_modulus(&mut frame_values);
    if k <= frame_values.len() {
        let expected = &frame_values[..k];
        let matched = expected.iter().zip(&result.eigenvalues).all(|(a, b)| (a - b).abs() <= FRAME_MATCH_TOL);
        if !matched {
            result.reliable = false;
            result.warnings.push(format!(
                "selected eigenvalues {:?} do not match the frame eigenvalues {:?}",
                result.eigenvalues, expected
            ));
        }
    } else {
        result.warnings.push(format!("K = {k} exceeds the {} frame classes", frame_values.len()));
    }
    Ok(result)
}

/// Spectral clustering from a symmetric adjacency matrix alone.
pub fn spectral_cluster_matrix(a: &DenseMatrix, k: usize, tol: f64) -> Result<ClusterResult> {
    if k == 0 {
        return Err(Error::InvalidParameters("K must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameters(format!("tolerance must be positive, got {tol}")));
    }
    let n = a.rows();
    if k > n {
        return Err(Error::InvalidParameters(format!("K = {k} exceeds {n} vertices")));
    }
    let mv = markov(a)?;
    let eig = mv.eigen()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (x, y) = (eig.values[i], eig.values[j]);
        y.abs().total_cmp(&x.abs()).then(y.total_cmp(&x))
    });
    let eigenvalues: Vec<f64> = order[..k].iter().map(|&i| eig.values[i]).collect();
    let eigengap = (k < n).then(|| eig.values[order[k - 1]].abs() - eig.values[order[k]].abs());

    let columns: Vec<Vec<f64>> = order[..k]
        .iter()
        .map(|&i| {
            let mut v = mv.to_p_vector(&eig.vector(i));
            let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let lead = v.iter().copied().find(|x| x.abs() > 1e-12 * scale).unwrap_or(1.0);
            let s = lead.signum() / scale;
            v.iter_mut().for_each(|x| *x *= s);
            v
        })
        .collect();
    let embedding: Vec<Vec<f64>> = (0..n).map(|v| columns.iter().map(|c| c[v]).collect()).collect();

    let mut representatives: Vec<usize> = Vec::new();
    let mut assignment = Vec::with_capacity(n);
    for v in 0..n {
        let found = representatives.iter().position(|&r| {
            embedding[r].iter().zip(&embedding[v]).all(|(a, b)| (a - b).abs() <= tol)
        });
        assignment.push(found.unwrap_or_else(|| {
            representatives.push(v);
            representatives.len() - 1
        }));
    }

    let mut warnings = Vec::new();
    let mut reliable = true;
    if let Some(gap) = eigengap {
        if gap < MIN_EIGENGAP {
            reliable = false;
            warnings.push(format!("eigengap {gap:e} between eigenvalues {k} and {} is below {MIN_EIGENGAP:e}", k + 1));
        }
    }
    Ok(ClusterResult {
        num_clusters: representatives.len(),
        assignment,
        embedding,
        tol,
        eigenvalues,
        eigengap,
        reliable,
        warnings,
    })
}

fn sort_by_modulus(values: &mut [f64]) {
    values.sort_by(|x, y| y.abs().total_cmp(&x.abs()).then(y.total_cmp(x)));
}

/// Fraction of vertices labelled correctly under the best matching of
/// predicted clusters to true classes (each class used at most once).
pub fn accuracy(assignment: &[usize], truth: &[usize]) -> Result<f64> {
    if assignment.len() != truth.len() {
        return Err(Error::DimensionMismatch(format!("{} assignments for {} labels", assignment.len(), truth.len())));
    }
    if truth.is_empty() {
        return Ok(1.0);
    }
    let kp = assignment.iter().max().map_or(0, |&x| x + 1);
    let kt = truth.iter().max().map_or(0, |&x| x + 1);
    let mut confusion = vec![vec![0usize; kt]; kp];
    for (&a, &t) in assignment.iter().zip(truth) {
        confusion[a][t] += 1;
    }
    let best = if kp <= 10 && kt <= 10 { best_matching(&confusion, 0, 0) } else { greedy_matching(confusion) };
    Ok(best as f64 / truth.len() as f64)
}

fn best_matching(confusion: &[Vec<usize>], row: usize, used: u32) -> usize {
    if row == confusion.len() {
        return 0;
    }
    let mut best = best_matching(confusion, row + 1, used);
    for (t, &count) in confusion[row].iter().enumerate() {
        if used & (1 << t) == 0 && count > 0 {
            best = best.max(count + best_matching(confusion, row + 1, used | (1 << t)));
        }
    }
    best
}

fn greedy_matching(mut confusion: Vec<Vec<usize>>) -> usize {
    let mut total = 0;
    loop {
        let mut best = (0, 0, 0);
        for (a, row) in confusion.iter().enumerate() {
            for (t, &c) in row.iter().enumerate() {
                if c > best.2 {
                    best = (a, t, c);
                }
            }
        }
        if best.2 == 0 {
            return total;
        }
        total += best.2;
        confusion[best.0].iter_mut().for_each(|c| *c = 0);
        confusion.iter_mut().for_each(|row| row[best.1] = 0);
    }
}

/// `vertex,true_label,assigned_label` rows.
pub fn cluster_csv(result: &ClusterResult, truth: Option<&[usize]>) -> String {
    let mut out = String::from("vertex,true_label,assigned_label\n");
    for (v, a) in result.assignment.iter().enumerate() {
        let t = truth.map(|t| t[v].to_string()).unwrap_or_default();
        let _ = writeln!(out, "{v},{t},{a}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::{sample_frame_graph, Frame};
    use crate::numkernel::RngStream;

    #[test]
    fn accuracy_up_to_permutation() {
        assert_eq!(accuracy(&[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap(), 1.0);
        assert_eq!(accuracy(&[0, 0, 0, 0], &[0, 0, 1, 1]).unwrap(), 0.5);
        assert_eq!(accuracy(&[0, 1, 2, 3], &[0, 0, 1, 1]).unwrap(), 0.5);
        assert!(accuracy(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn greedy_agrees_on_diagonal_confusion() {
        let conf = vec![vec![5, 0], vec![1, 7]];
        assert_eq!(greedy_matching(conf.clone()), best_matching(&conf, 0, 0));
    }

    #[test]
    fn single_class_is_one_cluster() {
        let frame = Frame::new(vec!["A".into()], vec![1.0], vec![vec![4]]).unwrap();
        let fg = sample_frame_graph(30, &frame, &mut RngStream::new(1), 1000).unwrap();
        let r = spectral_cluster(&fg, 1, DEFAULT_GROUP_TOL).unwrap();
        assert_eq!(r.num_clusters, 1);
        assert!(r.reliable);
    }

    #[test]
    fn piecewise_constant_disjoint_cliques() {
        // two disjoint K4s: eigenvalue 1 twice, exact zero-noise case
        let mut a = DenseMatrix::zeros(8, 8);
        for block in [0, 4] {
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        a[(block + i, block + j)] = 1.0;
                    }
                }
            }
        }
        let r = spectral_cluster_matrix(&a, 2, DEFAULT_GROUP_TOL).unwrap();
        assert_eq!(r.num_clusters, 2);
        assert_eq!(accuracy(&r.assignment, &[0, 0, 0, 0, 1, 1, 1, 1]).unwrap(), 1.0);
    }

    #[test]
    fn regular_sbm_recovered() {
        let frame = Frame::regular_sbm(12, 2).unwrap();
        let fg = sample_frame_graph(120, &frame, &mut RngStream::new(3), 100_000).unwrap();
        let r = spectral_cluster(&fg, 2, DEFAULT_GROUP_TOL).unwrap();
        assert!(r.reliable, "{:?}", r.warnings);
        assert_eq!(accuracy(&r.assignment, &fg.labels).unwrap(), 1.0);
        assert!((r.eigenvalues[1] - 10.0 / 14.0).abs() < 1e-9);
        let csv = cluster_csv(&r, Some(&fg.labels));
        assert_eq!(csv.lines().count(), 121);
    }

    #[test]
    fn buried_frame_eigenvalue_is_flagged() {
        let frame = Frame::new(
            vec!["A".into(), "B".into(), "C".into()],
            vec![0.125, 0.125, 0.75],
            vec![vec![0, 0, 6], vec![0, 0, 12], vec![1, 2, 0]],
        )
        .unwrap();
        let fg = sample_frame_graph(144, &frame, &mut RngStream::new(5), 100_000).unwrap();
        let r = spectral_cluster(&fg, 3, DEFAULT_GROUP_TOL).unwrap();
        assert!(!r.reliable);
        // the two outer eigenvalues split the bipartition A+B | C
        let two = spectral_cluster(&fg, 2, DEFAULT_GROUP_TOL).unwrap();
        assert!(two.reliable, "{:?}", two.warnings);
        assert_eq!(two.num_clusters, 2);
    }

    #[test]
    fn bad_arguments() {
        let a = DenseMatrix::identity(3);
        assert!(spectral_cluster_matrix(&a, 0, 1e-6).is_err());
        assert!(spectral_cluster_matrix(&a, 4, 1e-6).is_err());
        assert!(spectral_cluster_matrix(&a, 1, 0.0).is_err());
    }
}
