use serde::{Deserialize, Serialize};

use crate::codes::f2::{min_weight_in_span, BitMatrix, BitVec};
use crate::error::{Error, Result};

/// Lengths up to this are small enough to brute-force the distance of a
/// component code given only by its parity checks.
const BRUTE_FORCE_DIM: usize = 24;

/// A binary linear `[d, k, delta]` code given by a full-rank parity-check matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentCode {
    pub name: String,
    pub length: usize,
    pub dimension: usize,
    /// Minimum distance; `length + 1` stands in for infinity on the zero code.
    pub distance: usize,
    /// `(length - dimension) x length`.
    pub parity_check: Vec<Vec<u8>>,
}

impl ComponentCode {
    /// Build from arbitrary parity-check rows. Dependent rows are dropped
    /// and the distance is computed exactly.
    pub fn from_parity_check(name: &str, length: usize, rows: &[Vec<u8>]) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidParameters("component code length must be positive".into()));
        }
        let mut h = BitMatrix::from_rows(length, rows)?;
        h.rref();
        let dimension = length - h.num_rows();
        if dimension > BRUTE_FORCE_DIM {
            return Err(Error::DimensionOverBudget { dim: dimension, max: BRUTE_FORCE_DIM });
        }
        let distance = min_weight_in_span(&h.nullspace(), BRUTE_FORCE_DIM)?.unwrap_or(length + 1);
        Ok(Self { name: name.into(), length, dimension, distance, parity_check: h.to_rows() })
    }

    /// `[d, 1, d]`: all coordinates equal.
    pub fn repetition(d: usize) -> Result<Self> {
        let rows: Vec<Vec<u8>> = (1..d)
            .map(|i| {
                let mut r = vec![0; d];
                r[0] = 1;
                r[i] = 1;
                r
            })
            .collect();
        Self::from_parity_check(&format!("repetition[{d}]"), d, &rows)
    }

    /// `[d, d-1, 2]`: even weight.
    pub fn single_parity_check(d: usize) -> Result<Self> {
        Self::from_parity_check(&format!("single_parity_check[{d}]"), d, &[vec![1; d]])
    }

    /// `[d, d, 1]`: no constraint.
    pub fn full(d: usize) -> Result<Self> {
        Self::from_parity_check(&format!("full[{d}]"), d, &[])
    }

    /// Hamming code `[2^r - 1, 2^r - 1 - r, 3]`.
    pub fn hamming(r: usize) -> Result<Self> {
        if !(2..=5).contains(&r) {
            return Err(Error::InvalidParameters(format!("Hamming order must be in 2..=5, got {r}")));
        }
        let len = (1 << r) - 1;
        Self::from_parity_check(&format!("hamming[{len}]"), len, &hamming_rows(r))
    }

    /// Simplex code `[2^r - 1, r, 2^{r-1}]`, the dual of the Hamming code.
    pub fn simplex(r: usize) -> Result<Self> {
        if !(2..=5).contains(&r) {
            return Err(Error::InvalidParameters(format!("simplex order must be in 2..=5, got {r}")));
        }
        let len = (1 << r) - 1;
        let h = BitMatrix::from_rows(len, &hamming_rows(r))?;
        let dual: Vec<Vec<u8>> = h.nullspace().iter().map(BitVec::to_bits).collect();
        Self::from_parity_check(&format!("simplex[{len}]"), len, &dual)
    }

    /// Extended Hamming code `[8, 4, 4]`.
    pub fn extended_hamming8() -> Result<Self> {
        let mut rows = hamming_rows(3);
        rows.iter_mut().for_each(|r| r.push(0));
        rows.push(vec![1; 8]);
        Self::from_parity_check("extended_hamming[8]", 8, &rows)
    }

    /// Look up a code by name: `repetition`, `spc`, `full`, `hamming`,
    /// `simplex`, `extended_hamming`. Length-only families take `d`.
    pub fn by_name(name: &str, d: usize) -> Result<Self> {
        let order = |d: usize| (2..=5).find(|&r| (1 << r) - 1 == d);
        match name {
            "repetition" => Self::repetition(d),
            "spc" | "single_parity_check" => Self::single_parity_check(d),
            "full" => Self::full(d),
            "hamming" => Self::hamming(order(d).ok_or_else(|| bad_length(name, d))?),
            "simplex" => Self::simplex(order(d).ok_or_else(|| bad_length(name, d))?),
            "extended_hamming" if d == 8 => Self::extended_hamming8(),
            "extended_hamming" => Err(bad_length(name, d)),
            _ => Err(Error::InvalidParameters(format!("unknown component code '{name}'"))),
        }
    }

    pub fn parity_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.length, &self.parity_check).expect("validated at construction")
    }

    pub fn contains(&self, word: &BitVec) -> bool {
        self.parity_matrix().mul_vec(word).map(|s| s.is_zero()).unwrap_or(false)
    }
}

fn bad_length(name: &str, d: usize) -> Error {
    Error::InvalidParameters(format!("no {name} code of length {d}"))
}

/// Columns are the binary expansions of `1..2^r`.
fn hamming_rows(r: usize) -> Vec<Vec<u8>> {
    let len = (1usize << r) - 1;
    (0..r).map(|bit| (1..=len).map(|c| ((c >> bit) & 1) as u8).collect()).collect()
}
