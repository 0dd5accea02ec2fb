use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::RealSpectrum;

/// Roots of `lambda^4 - (xi^2 - d1 - d2 + 2) lambda^2 + (d1-1)(d2-1) = 0`,
/// the non-backtracking eigenvalues attached to the adjacency eigenvalue `xi`.
///
/// Returned as `[s, -s, t, -t]` where `s^2` and `t^2` are the two roots of
/// the quadratic in `lambda^2`, `s^2` the one of larger modulus.
///
/// ```
/// use bireg::spectra::quartic_lambda;
/// let roots = quartic_lambda(2.0, 7, 3).unwrap();
/// for r in roots {
///     assert!((r.norm() - 12f64.powf(0.25)).abs() < 1e-12);
/// }
/// ```
pub fn quartic_lambda(xi: f64, d1: usize, d2: usize) -> Result<[Complex64; 4]> {
    if xi == 0.0 || !xi.is_finite() {
        return Err(Error::InvalidParameters(format!("xi must be finite and nonzero, got {xi}")));
    }
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidParameters("degrees must be at least 1".into()));
    }
    let b = xi * xi - d1 as f64 - d2 as f64 + 2.0;
    let c = ((d1 - 1) * (d2 - 1)) as f64;
    let disc = b * b - 4.0 * c;
    let (x1, x2) = if disc >= 0.0 {
        // stable form: the larger root first, the other through Vieta
        let q = 0.5 * (b + b.signum() * disc.sqrt());
        let other = if q != 0.0 { c / q } else { 0.0 };
        (Complex64::new(q, 0.0), Complex64::new(other, 0.0))
    } else {
        let h = 0.5 * (-disc).sqrt();
        (Complex64::new(0.5 * b, h), Complex64::new(0.5 * b, -h))
    };
    let (s, t) = (x1.sqrt(), x2.sqrt());
    Ok([s, -s, t, -t])
}

/// Which part of the adjacency spectrum a non-backtracking eigenvalue comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    /// `+-1`, multiplicity `|E| - |V|` each.
    Trivial,
    /// `+-i sqrt(d2-1)` from the kernel of `X`, multiplicity `m - r` each.
    RightKernel,
    /// `+-i sqrt(d1-1)` from the kernel of `X^T`, multiplicity `n - r` each.
    LeftKernel,
    /// Quartic roots attached to a positive adjacency eigenvalue.
    Quartic,
}

impl Category {
    pub fn label(self) -> &'static str {
        match self {
            Category::Trivial => "trivial",
            Category::RightKernel => "right_kernel",
            Category::LeftKernel => "left_kernel",
            Category::Quartic => "quartic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NBEigenvalue {
    pub re: f64,
    pub im: f64,
    pub category: Category,
}

impl NBEigenvalue {
    fn new(z: Complex64, category: Category) -> Self {
        Self { re: z.re, im: z.im, category }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.value().norm()
    }
}

/// The spectrum of `B`, with multiplicities, derived from the adjacency spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NBSpectrum {
    pub entries: Vec<NBEigenvalue>,
    pub num_edges: usize,
    pub num_vertices: usize,
    pub d1: usize,
    pub d2: usize,
    pub rank_r: usize,
}

impl NBSpectrum {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.entries.iter().map(NBEigenvalue::value).collect()
    }

    pub fn count(&self, category: Category) -> usize {
        self.entries.iter().filter(|e| e.category == category).count()
    }

    /// `sqrt((d1-1)(d2-1))`.
    pub fn perron(&self) -> f64 {
        (((self.d1 - 1) * (self.d2 - 1)) as f64).sqrt()
    }

    /// `((d1-1)(d2-1))^{1/4}`, the radius of the bulk circle.
    pub fn circle_radius(&self) -> f64 {
        self.perron().sqrt()
    }

    /// Indices of the entries nearest to `+perron` and `-perron`.
    pub fn perron_pair(&self) -> (usize, usize) {
        let p = self.perron();
        let nearest = |target: f64, skip: Option<usize>| {
            (0..self.len())
                .filter(|&k| Some(k) != skip)
                .min_by(|&a, &b| {
                    let da = (self.entries[a].value() - target).norm();
                    let db = (self.entries[b].value() - target).norm();
                    da.total_cmp(&db)
                })
                .expect("non-empty spectrum")
        };
        let plus = nearest(p, None);
        (plus, nearest(-p, Some(plus)))
    }

    /// Largest modulus after removing one `+perron` and one `-perron` value.
    pub fn lambda2_modulus(&self) -> f64 {
        if self.len() <= 2 {
            return 0.0;
        }
        let (a, b) = self.perron_pair();
        (0..self.len()).filter(|&k| k != a && k != b).map(|k| self.entries[k].modulus()).fold(0.0, f64::max)
    }
}

/// Assemble the `2|E|` non-backtracking eigenvalues of a simple
/// `(d1, d2)`-biregular graph from its adjacency spectrum.
pub fn spectrum_b_from_a(spec: &RealSpectrum, d1: usize, d2: usize) -> Result<NBSpectrum> {
    let (n, m, r) = (spec.n, spec.m, spec.rank_r);
    if n * d1 != m * d2 {
        return Err(Error::DegreeMismatch { left: n * d1, right: m * d2 });
    }
    let num_edges = n * d1;
    let num_vertices = n + m;
    if num_edges < num_vertices {
        return Err(Error::InvalidParameters(format!(
            "|E| = {num_edges} < |V| = {num_vertices}: the trivial multiplicity would be negative"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let i2 = Complex64::new(0.0, ((d2 - 1) as f64).sqrt());
    let i1 = Complex64::new(0.0, ((d1 - 1) as f64).sqrt());

    let mut entries = Vec::with_capacity(2 * num_edges);
    let push_pair = |z: Complex64, count: usize, cat: Category, out: &mut Vec<NBEigenvalue>| {
        for _ in 0..count {
            out.push(NBEigenvalue::new(z, cat));
            out.push(NBEigenvalue::new(-z, cat));
        }
    };
    push_pair(one, num_edges - num_vertices, Category::Trivial, &mut entries);
    push_pair(i2, m - r, Category::RightKernel, &mut entries);
    push_pair(i1, n - r, Category::LeftKernel, &mut entries);
    for &xi in spec.positive() {
        for z in quartic_lambda(xi, d1, d2)? {
            entries.push(NBEigenvalue::new(z, Category::Quartic));
        }
    }
    debug_assert_eq!(entries.len(), 2 * num_edges);
    Ok(NBSpectrum { entries, num_edges, num_vertices, d1, d2, rank_r: r })
}
