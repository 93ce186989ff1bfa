use rayon::prelude::*;

use super::problems::{Exact1D, Exact2D};
use crate::error::Result;
use crate::quadrature::GaussRule;
use crate::solver::{DiscreteSolution1D, DiscreteSolution2D};
use crate::spline::SpaceKind;

/// Sampling points per element and direction for the maximum norm.
pub const LINF_SAMPLES: usize = 10;

/// Errors of one refinement level. `h1` and `h2` are full norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub n_el: usize,
    pub h: f64,
    pub dof: usize,
    pub l2: f64,
    pub h1: f64,
    pub h2: Option<f64>,
    pub linf: f64,
}

fn samples(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..LINF_SAMPLES).map(move |k| lo + (hi - lo) * k as f64 / (LINF_SAMPLES - 1) as f64)
}

/// Element-wise Gauss integration of `u − u_h` and its first two derivatives,
/// summed in element order.
pub fn error_norms_1d(sol: &DiscreteSolution1D, exact: &Exact1D, quad_points: usize) -> Result<ErrorReport> {
    let rule = GaussRule::new(quad_points)?;
    let kv = sol.space.knot_vector();
    let (mut s0, mut s1, mut s2, mut linf) = (0.0, 0.0, 0.0, 0.0f64);
    for (lo, hi) in kv.elements() {
        for (x, w) in rule.on_interval(lo, hi) {
            let b = sol.space.basis(x, 2.min(sol.space.degree()))?;
            let u = exact(x);
            let mut uh = [0.0; 3];
            for a in 0..b.len() {
                for (r, row) in b.values.iter().enumerate() {
                    uh[r] += sol.coeffs[b.index(a)] * row[a];
                }
            }
            s0 += w * (u[0] - uh[0]).powi(2);
            s1 += w * (u[1] - uh[1]).powi(2);
            s2 += w * (u[2] - uh[2]).powi(2);
        }
        for x in samples(lo, hi) {
            linf = linf.max((exact(x)[0] - sol.eval(x, 0)?).abs());
        }
    }
    let dof = match sol.space.kind() {
        SpaceKind::Open => sol.space.dim() - 2,
        SpaceKind::Periodic => sol.space.dim(),
    };
    Ok(ErrorReport {
        n_el: kv.n_elements(),
        h: kv.meshsize(),
        dof,
        l2: s0.sqrt(),
        h1: (s0 + s1).sqrt(),
        h2: Some((s0 + s1 + s2).sqrt()),
        linf,
    })
}

/// L², H¹ and sampled L∞ errors over the mapped domain. Element rows are
/// integrated in parallel and reduced in row order.
pub fn error_norms_2d(sol: &DiscreteSolution2D, exact: &Exact2D, quad_points: usize) -> Result<ErrorReport> {
    let rule = GaussRule::new(quad_points)?;
    let ex: Vec<_> = sol.space.space_x().knot_vector().elements().collect();
    let ey: Vec<_> = sol.space.space_y().knot_vector().elements().collect();
    let rows = ey
        .par_iter()
        .map(|&(ylo, yhi)| -> Result<[f64; 3]> {
            let (mut s0, mut s1, mut linf) = (0.0, 0.0, 0.0f64);
            for &(xlo, xhi) in &ex {
                for (eta, wy) in rule.on_interval(ylo, yhi) {
                    for (xi, wx) in rule.on_interval(xlo, xhi) {
                        let jet = sol.geometry.map_jet(xi, eta)?;
                        let (pos, uh) = sol.eval(xi, eta)?;
                        let u = exact(pos[0], pos[1]);
                        let w = wx * wy * jet.det().abs();
                        s0 += w * (u.value - uh.value).powi(2);
                        s1 += w * ((u.grad[0] - uh.grad[0]).powi(2) + (u.grad[1] - uh.grad[1]).powi(2));
                    }
                }
                for eta in samples(ylo, yhi) {
                    for xi in samples(xlo, xhi) {
                        let (pos, uh) = sol.eval(xi, eta)?;
                        linf = linf.max((exact(pos[0], pos[1]).value - uh.value).abs());
                    }
                }
            }
            Ok([s0, s1, linf])
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut s0, mut s1, mut linf) = (0.0, 0.0, 0.0f64);
    for [a, b, c] in rows {
        s0 += a;
        s1 += b;
        linf = linf.max(c);
    }
    let n = sol.space.space_x().dim();
    let m = sol.space.space_y().dim();
    Ok(ErrorReport {
        n_el: ex.len().max(ey.len()),
        h: sol.space.space_x().knot_vector().meshsize().max(sol.space.space_y().knot_vector().meshsize()),
        dof: (n - 2) * (m - 2),
        l2: s0.sqrt(),
        h1: (s0 + s1).sqrt(),
        h2: None,
        linf,
    })
}
