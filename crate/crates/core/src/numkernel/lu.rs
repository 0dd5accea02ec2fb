use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::ComplexMatrix;

/// `log det(M)` split as `(ln|det M|, arg det M)` with the argument wrapped
/// into `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogDet {
    pub log_modulus: f64,
    pub argument: f64,
}

impl LogDet {
    pub fn is_singular(&self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }
}

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Complex log-determinant via LU with partial pivoting. An exactly
/// singular matrix yields `log_modulus = -inf`.
pub fn complex_log_det(m: &ComplexMatrix) -> Result<LogDet> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut log_modulus = 0.0;
    let mut argument = 0.0;
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[(i, k)].norm().total_cmp(&a[(j, k)].norm()))
            .unwrap_or(k);
        let pv = a[(pivot, k)];
        if pv.norm() == 0.0 {
            return Ok(LogDet { log_modulus: f64::NEG_INFINITY, argument: 0.0 });
        }
        if pivot != k {
            a.swap_rows(pivot, k);
            argument += PI;
        }
        log_modulus += pv.norm().ln();
        argument += pv.arg();
        for i in (k + 1)..n {
            let factor = a[(i, k)] / pv;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in (k + 1)..n {
                let akj = a[(k, j)];
                a[(i, j)] -= factor * akj;
            }
        }
        // keep the running argument small
        argument = wrap_angle(argument);
    }
    Ok(LogDet { log_modulus, argument: wrap_angle(argument) })
}
