use crate::error::{Error, Result};

use super::SplineSpace1D;

/// Derivative slots of a bivariate function: value, first and second
/// parametric derivatives.
pub const V: usize = 0;
pub const D_XI: usize = 1;
pub const D_ETA: usize = 2;
pub const D_XIXI: usize = 3;
pub const D_XIETA: usize = 4;
pub const D_ETAETA: usize = 5;

/// Tensor-product spline space, optionally rational.
///
/// Functions are numbered `k = i + j * n` (x-fastest, zero-based), where
/// `n` is the dimension of `space_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSpace {
    space_x: SplineSpace1D,
    space_y: SplineSpace1D,
    weights: Option<Vec<f64>>,
}

/// Nonzero functions at a parametric point with derivatives in the
/// [`V`]..=[`D_ETAETA`] layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis2D {
    pub indices: Vec<usize>,
    pub derivs: Vec<[f64; 6]>,
}

impl TensorSpace {
    pub fn new(space_x: SplineSpace1D, space_y: SplineSpace1D) -> Self {
        Self {
            space_x,
            space_y,
            weights: None,
        }
    }

    /// Rational space with one positive weight per tensor function.
    pub fn rational(space_x: SplineSpace1D, space_y: SplineSpace1D, weights: Vec<f64>) -> Result<Self> {
        let expected = space_x.dim() * space_y.dim();
        if weights.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: weights.len(),
            });
        }
        if let Some((index, &weight)) = weights.iter().enumerate().find(|(_, w)| !(**w > 0.0)) {
            return Err(Error::NonPositiveWeight { index, weight });
        }
        Ok(Self {
            space_x,
            space_y,
            weights: Some(weights),
        })
    }

    pub fn space_x(&self) -> &SplineSpace1D {
        &self.space_x
    }

    pub fn space_y(&self) -> &SplineSpace1D {
        &self.space_y
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.space_x.dim() * self.space_y.dim()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i + j * self.space_x.dim()
    }

    /// Inverse of [`index`](Self::index).
    pub fn split_index(&self, k: usize) -> (usize, usize) {
        let n = self.space_x.dim();
        (k % n, k / n)
    }

    /// Basis values and parametric derivatives up to order `r <= 2`.
    ///
    /// With weights present this is the rational basis, differentiated by
    /// the quotient rule against `W = Σ N_i M_j w_ij`.
    pub fn basis(&self, xi: f64, eta: f64, r: usize) -> Result<Basis2D> {
        if r > 2 {
            return Err(Error::DerivativeOrder { order: r, degree: 2 });
        }
        let bx = self.space_x.basis_padded(xi, 2)?;
        let by = self.space_y.basis_padded(eta, 2)?;
        let mut indices = Vec::with_capacity(bx.len() * by.len());
        let mut derivs = Vec::with_capacity(bx.len() * by.len());
        for b in 0..by.len() {
            let (m0, m1, m2) = (by.values[0][b], by.values[1][b], by.values[2][b]);
            for a in 0..bx.len() {
                let (n0, n1, n2) = (bx.values[0][a], bx.values[1][a], bx.values[2][a]);
                indices.push(self.index(bx.index(a), by.index(b)));
                derivs.push([n0 * m0, n1 * m0, n0 * m1, n2 * m0, n1 * m1, n0 * m2]);
            }
        }
        if let Some(w) = &self.weights {
            for (d, &k) in derivs.iter_mut().zip(&indices) {
                for v in d.iter_mut() {
                    *v *= w[k];
                }
            }
            let mut wsum = [0.0; 6];
            for d in &derivs {
                for (s, v) in wsum.iter_mut().zip(d) {
                    *s += v;
                }
            }
            let inv = 1.0 / wsum[V];
            for d in derivs.iter_mut() {
                let a = *d;
                let r0 = a[V] * inv;
                let rx = (a[D_XI] - r0 * wsum[D_XI]) * inv;
                let ry = (a[D_ETA] - r0 * wsum[D_ETA]) * inv;
                let rxx = (a[D_XIXI] - 2.0 * rx * wsum[D_XI] - r0 * wsum[D_XIXI]) * inv;
                let rxy = (a[D_XIETA] - rx * wsum[D_ETA] - ry * wsum[D_XI] - r0 * wsum[D_XIETA]) * inv;
                let ryy = (a[D_ETAETA] - 2.0 * ry * wsum[D_ETA] - r0 * wsum[D_ETAETA]) * inv;
                *d = [r0, rx, ry, rxx, rxy, ryy];
            }
        }
        if r < 2 {
            for d in derivs.iter_mut() {
                d[3..].fill(0.0);
                if r == 0 {
                    d[1..3].fill(0.0);
                }
            }
        }
        Ok(Basis2D { indices, derivs })
    }
}

/// Free-function form of [`TensorSpace::basis`].
pub fn nurbs_basis_2d(ts: &TensorSpace, xi: f64, eta: f64, r: usize) -> Result<Basis2D> {
    ts.basis(xi, eta, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spaces() -> (SplineSpace1D, SplineSpace1D) {
        (
            SplineSpace1D::open_uniform(3, 2).unwrap(),
            SplineSpace1D::open_uniform(4, 3).unwrap(),
        )
    }

    #[test]
    fn index_is_x_fastest_bijection() {
        let (sx, sy) = spaces();
        let ts = TensorSpace::new(sx, sy);
        let (n, m) = (ts.space_x().dim(), ts.space_y().dim());
        let mut seen = vec![false; n * m];
        for j in 0..m {
            for i in 0..n {
                let k = ts.index(i, j);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(ts.split_index(k), (i, j));
            }
        }
        assert_eq!(ts.index(1, 0), 1);
        assert_eq!(ts.index(0, 1), n);
    }

    #[test]
    fn unit_weights_match_polynomial_basis() {
        let (sx, sy) = spaces();
        let plain = TensorSpace::new(sx.clone(), sy.clone());
        let w = vec![1.0; plain.dim()];
        let rat = TensorSpace::rational(sx, sy, w).unwrap();
        for &(x, y) in &[(0.1, 0.2), (0.5, 0.77), (1.0, 0.0)] {
            let a = plain.basis(x, y, 2).unwrap();
            let b = rat.basis(x, y, 2).unwrap();
            assert_eq!(a.indices, b.indices);
            for (da, db) in a.derivs.iter().zip(&b.derivs) {
                for s in 0..6 {
                    assert!((da[s] - db[s]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rational_partition_of_unity() {
        let (sx, sy) = spaces();
        let n = sx.dim() * sy.dim();
        let w: Vec<f64> = (0..n).map(|k| 0.5 + ((k * 37) % 11) as f64 / 7.0).collect();
        let ts = TensorSpace::rational(sx, sy, w).unwrap();
        for k in 0..50 {
            let x = (k as f64 * 0.6180339887).fract();
            let y = (k as f64 * 0.4142135623).fract();
            let b = ts.basis(x, y, 2).unwrap();
            let mut s = [0.0; 6];
            for d in &b.derivs {
                for (a, v) in s.iter_mut().zip(d) {
                    *a += v;
                }
            }
            assert!((s[0] - 1.0).abs() < 1e-13);
            for v in &s[1..] {
                assert!(v.abs() < 1e-9, "{s:?}");
            }
        }
    }

    #[test]
    fn rejects_nonpositive_weight() {
        let (sx, sy) = spaces();
        let mut w = vec![1.0; sx.dim() * sy.dim()];
        w[4] = 0.0;
        assert_eq!(
            TensorSpace::rational(sx, sy, w),
            Err(Error::NonPositiveWeight { index: 4, weight: 0.0 })
        );
    }
}
