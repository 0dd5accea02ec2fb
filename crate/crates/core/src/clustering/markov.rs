use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphgen::Frame;
use crate::numkernel::{sym_eig, DenseMatrix, SymEig};

/// Random-walk views of a graph: `P = D^{-1} A` and its symmetric conjugate
/// `L = D^{-1/2} A D^{-1/2}`, which share their spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovView {
    pub p: DenseMatrix,
    pub l: DenseMatrix,
    pub degrees: Vec<f64>,
}

impl MarkovView {
    /// Eigen-decomposition of `L`; its values are the spectrum of `P`.
    pub fn eigen(&self) -> Result<SymEig> {
        sym_eig(&self.l)
    }

    /// Turn an eigenvector of `L` into one of `P` (scale by `d^{-1/2}`).
    pub fn to_p_vector(&self, u: &[f64]) -> Vec<f64> {
        u.iter().zip(&self.degrees).map(|(x, d)| x / d.sqrt()).collect()
    }
}

/// Build `P` and `L` from a symmetric nonnegative adjacency matrix.
pub fn markov(a: &DenseMatrix) -> Result<MarkovView> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let degrees: Vec<f64> = (0..n).map(|i| a.row(i).iter().sum()).collect();
    if let Some(v) = degrees.iter().position(|&d| d <= 0.0) {
        return Err(Error::ZeroDegree(v));
    }
    let inv_sqrt: Vec<f64> = degrees.iter().map(|d| 1.0 / d.sqrt()).collect();
    let p = DenseMatrix::from_fn(n, n, |i, j| a[(i, j)] / degrees[i]);
    let l = DenseMatrix::from_fn(n, n, |i, j| a[(i, j)] * inv_sqrt[i] * inv_sqrt[j]);
    Ok(MarkovView { p, l, degrees })
}

/// Row-normalized frame degree matrix `R_ij = D_ij / sum_j D_ij`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameMarkov {
    pub r: Vec<Vec<f64>>,
}

impl FrameMarkov {
    pub fn matrix(&self) -> DenseMatrix {
        DenseMatrix::from_rows(&self.r).expect("square frame")
    }
}

pub fn frame_markov(frame: &Frame) -> Result<FrameMarkov> {
    let r = frame
        .degrees
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let total: usize = row.iter().sum();
            if total == 0 {
                return Err(Error::ZeroDegree(i));
            }
            Ok(row.iter().map(|&d| d as f64 / total as f64).collect())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(FrameMarkov { r })
}

/// Which frame operator to diagonalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameOperator {
    /// `D`, whose eigenpairs lift to the adjacency matrix.
    Degree,
    /// `R`, whose eigenpairs lift to `P`.
    Markov,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FramePair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Eigenpairs of `D` or `R`, by decreasing eigenvalue.
///
/// Both are similar to symmetric matrices through the balance condition
/// `p_i D_ij = p_j D_ji`: with weights `w`, `diag(w)^{1/2} M diag(w)^{-1/2}`
/// is symmetric for `w = p` (for `D`) or `w_i = p_i * sum_j D_ij` (for `R`).
pub fn frame_eigenpairs(frame: &Frame, which: FrameOperator) -> Result<Vec<FramePair>> {
    frame.validate()?;
    let k = frame.num_classes();
    let (m, w): (DenseMatrix, Vec<f64>) = match which {
        FrameOperator::Degree => (frame.degree_matrix(), frame.p.clone()),
        FrameOperator::Markov => {
            let r = frame_markov(frame)?.matrix();
            let w = (0..k).map(|i| frame.p[i] * frame.row_degree(i) as f64).collect();
            (r, w)
        }
    };
    if let Some(i) = w.iter().position(|&x| x <= 0.0) {
        return Err(Error::ZeroDegree(i));
    }
    let s = DenseMatrix::from_fn(k, k, |i, j| (w[i] / w[j]).sqrt() * m[(i, j)]);
    // symmetric up to rounding; average the two triangles
    let s = DenseMatrix::from_fn(k, k, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let eig = sym_eig(&s)?;
    Ok((0..k)
        .map(|c| {
            let y = eig.vector(c);
            let mut x: Vec<f64> = y.iter().zip(&w).map(|(yi, wi)| yi / wi.sqrt()).collect();
            let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            x.iter_mut().for_each(|v| *v /= scale);
            FramePair { value: eig.values[c], vector: x }
        })
        .collect())
}

/// A frame eigenvector spread over vertices, with its eigen-residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Lifted {
    pub vector: Vec<f64>,
    pub residual: f64,
}

/// Lift `(lambda, x)` to the piecewise-constant vector `x~_v = x_{label(v)}`
/// and measure `max |M x~ - lambda x~|` for the vertex-level operator `M`
/// (`A` for eigenpairs of `D`, `P` for eigenpairs of `R`).
pub fn lift_eigvec(lambda: f64, x: &[f64], labels: &[usize], m: &DenseMatrix) -> Result<Lifted> {
    if m.rows() != labels.len() || !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for a {}x{} operator",
            labels.len(),
            m.rows(),
            m.cols()
        )));
    }
    if let Some(&bad) = labels.iter().find(|&&c| c >= x.len()) {
        return Err(Error::DimensionMismatch(format!("label {bad} but only {} frame coordinates", x.len())));
    }
    let vector: Vec<f64> = labels.iter().map(|&c| x[c]).collect();
    let image = m.matvec(&vector);
    let residual = image.iter().zip(&vector).map(|(y, v)| (y - lambda * v).abs()).fold(0.0, f64::max);
    Ok(Lifted { vector, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::{sample_frame_graph, BipartiteGraph};
    use crate::numkernel::RngStream;

    fn fig4() -> Frame {
        Frame::new(
            vec!["A".into(), "B".into(), "C".into()],
            vec![0.125, 0.125, 0.75],
            vec![vec![0, 0, 6], vec![0, 0, 12], vec![1, 2, 0]],
        )
        .unwrap()
    }

    #[test]
    fn biregular_l_is_scaled_adjacency() {
        let g = BipartiteGraph::complete(2, 3);
        let mv = markov(&g.adjacency()).unwrap();
        let a = g.adjacency();
        for i in 0..5 {
            assert!((mv.p.row(i).iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for j in 0..5 {
                assert!((mv.l[(i, j)] - a[(i, j)] / 6f64.sqrt()).abs() < 1e-15);
            }
        }
        let vals = mv.eigen().unwrap().values;
        let want = [1.0, 0.0, 0.0, 0.0, -1.0];
        for (v, w) in vals.iter().zip(&want) {
            assert!((v - w).abs() < 1e-12, "{vals:?}");
        }
    }

    #[test]
    fn isolated_vertex_rejected() {
        let a = DenseMatrix::zeros(2, 2);
        assert_eq!(markov(&a).unwrap_err(), Error::ZeroDegree(0));
    }

    #[test]
    fn two_class_frame_markov() {
        let (d1, d2) = (5usize, 3usize);
        let f = Frame::regular_sbm(d1, d2).unwrap();
        let r = frame_markov(&f).unwrap();
        assert_eq!(r.r[0], vec![5.0 / 8.0, 3.0 / 8.0]);
        let pairs = frame_eigenpairs(&f, FrameOperator::Markov).unwrap();
        assert!((pairs[0].value - 1.0).abs() < 1e-14);
        assert!((pairs[1].value - (d1 - d2) as f64 / (d1 + d2) as f64).abs() < 1e-14);
    }

    #[test]
    fn scaling_invariance() {
        let f = fig4();
        let mut g = f.clone();
        g.degrees.iter_mut().flatten().for_each(|d| *d *= 3);
        assert_eq!(frame_markov(&f).unwrap(), frame_markov(&g).unwrap());
    }

    #[test]
    fn fig4_rows() {
        let r = frame_markov(&fig4()).unwrap().r;
        assert_eq!(r[0], vec![0.0, 0.0, 1.0]);
        assert_eq!(r[1], vec![0.0, 0.0, 1.0]);
        assert!((r[2][0] - 1.0 / 3.0).abs() < 1e-15 && (r[2][1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lifted_pairs_are_exact() {
        let mut rng = RngStream::new(8);
        for frame in [fig4(), Frame::regular_sbm(6, 2).unwrap()] {
            let fg = sample_frame_graph(72, &frame, &mut rng, 100_000).unwrap();
            let a = fg.adjacency();
            let p = markov(&a).unwrap().p;
            for pair in frame_eigenpairs(&frame, FrameOperator::Degree).unwrap() {
                assert!(lift_eigvec(pair.value, &pair.vector, &fg.labels, &a).unwrap().residual <= 1e-9);
            }
            for pair in frame_eigenpairs(&frame, FrameOperator::Markov).unwrap() {
                assert!(lift_eigvec(pair.value, &pair.vector, &fg.labels, &p).unwrap().residual <= 1e-9);
            }
            let ones = vec![1.0; frame.num_classes()];
            assert!(lift_eigvec(1.0, &ones, &fg.labels, &p).unwrap().residual <= 1e-12);
        }
    }

    #[test]
    fn lift_size_mismatch() {
        let a = DenseMatrix::identity(3);
        assert!(lift_eigvec(1.0, &[1.0], &[0, 0], &a).is_err());
        assert!(lift_eigvec(1.0, &[1.0], &[0, 0, 1], &a).is_err());
    }
}
