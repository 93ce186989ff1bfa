use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative pivot threshold below which a factorization is declared singular.
const PIVOT_TOL: f64 = 1e-14;

/// Dense system with at least as many equations as unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub matrix: DMatrix<f64>,
    pub rhs: DVector<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutput {
    pub solution: DVector<f64>,
    /// `‖A x - b‖ / ‖b‖` (absolute when `b = 0`).
    pub relative_residual: f64,
}

impl LinearSystem {
    pub fn new(matrix: DMatrix<f64>, rhs: DVector<f64>) -> Result<Self> {
        if matrix.nrows() != rhs.len() {
            return Err(Error::LengthMismatch {
                expected: matrix.nrows(),
                found: rhs.len(),
            });
        }
        if matrix.nrows() < matrix.ncols() {
            return Err(Error::TooFewPoints {
                points: matrix.nrows(),
                unknowns: matrix.ncols(),
            });
        }
        Ok(Self { matrix, rhs })
    }

    pub fn is_square(&self) -> bool {
        self.matrix.is_square()
    }

    pub fn is_overdetermined(&self) -> bool {
        self.matrix.nrows() > self.matrix.ncols()
    }
}

/// LU with partial pivoting for square systems, Householder QR least
/// squares for overdetermined ones.
pub fn solve(sys: &LinearSystem) -> Result<SolveOutput> {
    let a = &sys.matrix;
    let scale = a.amax();
    let threshold = PIVOT_TOL * scale.max(f64::MIN_POSITIVE);
    let solution = if sys.is_square() {
        let lu = a.clone().lu();
        let u = lu.u();
        if let Some(k) = (0..u.nrows()).find(|&k| !(u[(k, k)].abs() > threshold)) {
            let mut rows = DVector::from_fn(a.nrows(), |i, _| i as f64);
            lu.p().permute_rows(&mut rows);
            return Err(Error::SingularMatrix {
                row: rows[k] as usize,
                col: k,
                pivot: u[(k, k)],
            });
        }
        lu.solve(&sys.rhs).ok_or(Error::SingularMatrix {
            row: 0,
            col: 0,
            pivot: 0.0,
        })?
    } else {
        let n = a.ncols();
        let qr = a.clone().qr();
        let mut qtb = sys.rhs.clone();
        qr.q_tr_mul(&mut qtb);
        let r = qr.r();
        if let Some(k) = (0..n).find(|&k| !(r[(k, k)].abs() > threshold)) {
            return Err(Error::SingularMatrix {
                row: k,
                col: k,
                pivot: r[(k, k)],
            });
        }
        let top = qtb.rows(0, n).into_owned();
        r.solve_upper_triangular(&top).ok_or(Error::SingularMatrix {
            row: 0,
            col: 0,
            pivot: 0.0,
        })?
    };
    let res = (a * &solution - &sys.rhs).norm();
    let bnorm = sys.rhs.norm();
    let relative_residual = if bnorm > 0.0 { res / bnorm } else { res };
    Ok(SolveOutput {
        solution,
        relative_residual,
    })
}
