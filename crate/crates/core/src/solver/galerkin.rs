use nalgebra::{DMatrix, DVector};

use super::{Dofs1D, Dofs2D, LinearSystem, Problem1D, Problem2D};
use crate::error::Result;
use crate::quadrature::GaussRule;
use crate::spline::tensor::{D_ETA, D_XI, V};
use crate::spline::{SplineSpace1D, TensorSpace};

/// Weak form `∫ u'v' + a1 u'v + a0 uv = ∫ f v` with `p + 2` Gauss points per element.
pub fn assemble_galerkin_1d(prob: &Problem1D, space: &SplineSpace1D) -> Result<LinearSystem> {
    prob.check_space(space)?;
    let dofs = Dofs1D::new(space);
    let n = dofs.count();
    let rule = GaussRule::new(space.degree() + 2)?;
    let mut a = DMatrix::zeros(n, n);
    let mut b = DVector::zeros(n);
    for (lo, hi) in space.knot_vector().elements() {
        for (x, w) in rule.on_interval(lo, hi) {
            let bs = space.basis(x, 1)?;
            let (a0, a1, f) = ((prob.a0)(x), (prob.a1)(x), (prob.f)(x));
            for i in 0..bs.len() {
                let Some(row) = dofs.unknown(bs.index(i)) else { continue };
                let (vi, di) = (bs.values[0][i], bs.values[1][i]);
                b[row] += w * f * vi;
                for j in 0..bs.len() {
                    let Some(col) = dofs.unknown(bs.index(j)) else { continue };
                    let (vj, dj) = (bs.values[0][j], bs.values[1][j]);
                    a[(row, col)] += w * (dj * di + a1 * dj * vi + a0 * vj * vi);
                }
            }
        }
    }
    LinearSystem::new(a, b)
}

/// `∫ ∇φ_i·∇φ_j |det J| = ∫ f φ_i |det J|` over the parametric square.
pub fn assemble_galerkin_2d(prob: &Problem2D, space: &TensorSpace) -> Result<LinearSystem> {
    let dofs = Dofs2D::new(space);
    let n = dofs.count();
    let q = space.space_x().degree().max(space.space_y().degree()) + 2;
    let rule = GaussRule::new(q)?;
    let mut a = DMatrix::zeros(n, n);
    let mut b = DVector::zeros(n);
    let ex: Vec<_> = space.space_x().knot_vector().elements().collect();
    let ey: Vec<_> = space.space_y().knot_vector().elements().collect();
    let mut grads = Vec::new();
    for &(ylo, yhi) in &ey {
        for (eta, wy) in rule.on_interval(ylo, yhi) {
            for &(xlo, xhi) in &ex {
                for (xi, wx) in rule.on_interval(xlo, xhi) {
                    let jet = prob.geometry.map_jet(xi, eta)?;
                    let det = jet.det();
                    let w = wx * wy * det.abs();
                    let j = jet.jacobian;
                    let f = (prob.f)(jet.position[0], jet.position[1]);
                    let bs = space.basis(xi, eta, 1)?;
                    // ∇_x φ = J^{-T} ∇_ξ φ
                    grads.clear();
                    for (d, &k) in bs.derivs.iter().zip(&bs.indices) {
                        let Some(u) = dofs.unknown(k) else { continue };
                        let gx = (j[1][1] * d[D_XI] - j[1][0] * d[D_ETA]) / det;
                        let gy = (-j[0][1] * d[D_XI] + j[0][0] * d[D_ETA]) / det;
                        grads.push((u, d[V], gx, gy));
                    }
                    for &(r, v, gx, gy) in &grads {
                        b[r] += w * f * v;
                        for &(c, _, hx, hy) in &grads {
                            a[(r, c)] += w * (gx * hx + gy * hy);
                        }
                    }
                }
            }
        }
    }
    LinearSystem::new(a, b)
}
