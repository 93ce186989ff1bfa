use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::{Dofs1D, Dofs2D, LinearSystem, Problem1D, Problem2D};
use crate::error::{Error, Result};
use crate::geometry::physical_second_order_coeffs;
use crate::point_selection::CollocationSet;
use crate::spline::{SplineSpace1D, TensorSpace};

/// Replaces the rows of each averaging group by their mean, placed where
/// the group's first point was.
fn average_rows(rows: Vec<(Vec<(usize, f64)>, f64)>, groups: &[Vec<usize>]) -> Vec<(Vec<(usize, f64)>, f64)> {
    if groups.is_empty() {
        return rows;
    }
    let mut owner: Vec<Option<usize>> = vec![None; rows.len()];
    for (g, members) in groups.iter().enumerate() {
        for &i in members {
            owner[i] = Some(g);
        }
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        match owner[i] {
            None => out.push(row.clone()),
            Some(g) if groups[g][0] == i => {
                let w = 1.0 / groups[g].len() as f64;
                let mut entries = Vec::new();
                let mut rhs = 0.0;
                for &m in &groups[g] {
                    entries.extend(rows[m].0.iter().map(|&(c, v)| (c, w * v)));
                    rhs += w * rows[m].1;
                }
                out.push((entries, rhs));
            }
            Some(_) => {}
        }
    }
    out
}

fn into_system(rows: Vec<(Vec<(usize, f64)>, f64)>, n_unknowns: usize, square: bool) -> Result<LinearSystem> {
    if (square && rows.len() != n_unknowns) || rows.len() < n_unknowns {
        return Err(Error::CountMismatch {
            equations: rows.len(),
            unknowns: n_unknowns,
        });
    }
    let mut a = DMatrix::zeros(rows.len(), n_unknowns);
    let mut b = DVector::zeros(rows.len());
    for (r, (entries, rhs)) in rows.into_iter().enumerate() {
        for (c, v) in entries {
            a[(r, c)] += v;
        }
        b[r] = rhs;
    }
    LinearSystem::new(a, b)
}

/// Row `r`: `Σ_j [-B_j''(τ_r) + a1(τ_r) B_j'(τ_r) + a0(τ_r) B_j(τ_r)] c_j = f(τ_r)`.
pub fn assemble_collocation_1d(prob: &Problem1D, space: &SplineSpace1D, cs: &CollocationSet) -> Result<LinearSystem> {
    prob.check_space(space)?;
    let dofs = Dofs1D::new(space);
    let rows = cs
        .points
        .iter()
        .map(|&t| {
            let b = space.basis_padded(t, 2)?;
            let (a0, a1) = ((prob.a0)(t), (prob.a1)(t));
            let entries = (0..b.len())
                .filter_map(|a| {
                    let col = dofs.unknown(b.index(a))?;
                    Some((col, -b.values[2][a] + a1 * b.values[1][a] + a0 * b.values[0][a]))
                })
                .collect();
            Ok((entries, (prob.f)(t)))
        })
        .collect::<Result<Vec<_>>>()?;
    into_system(average_rows(rows, &cs.averaging_groups), dofs.count(), cs.scheme.is_square())
}

/// Row per parametric point `(ξ, η)`: `-Δ(φ_k ∘ F^{-1})` at `F(ξ, η)` against
/// `f(F(ξ, η))`, over interior functions only.
pub fn assemble_collocation_2d(prob: &Problem2D, space: &TensorSpace, cs: &CollocationSet<[f64; 2]>) -> Result<LinearSystem> {
    if !cs.averaging_groups.is_empty() {
        return Err(Error::AveragingNotSupported);
    }
    let dofs = Dofs2D::new(space);
    let rows = cs
        .points
        .par_iter()
        .map(|&[xi, eta]| {
            let jet = prob.geometry.map_jet(xi, eta)?;
            let b = space.basis(xi, eta, 2)?;
            let mut entries = Vec::with_capacity(b.indices.len());
            for (d, &k) in b.derivs.iter().zip(&b.indices) {
                if let Some(col) = dofs.unknown(k) {
                    let phys = physical_second_order_coeffs(&jet, d)?;
                    entries.push((col, -phys.laplacian()));
                }
            }
            Ok((entries, (prob.f)(jet.position[0], jet.position[1])))
        })
        .collect::<Result<Vec<_>>>()?;
    into_system(rows, dofs.count(), cs.scheme.is_square())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_selection::{select_csp, select_gp, select_lssp};
    use crate::solver::{collocate_1d, solve, BoundaryCondition};

    #[test]
    fn quadratic_solution_is_reproduced() {
        // -u'' = -2 with u = x(x-1)
        let prob = Problem1D::poisson(|_| -2.0);
        for n_el in [1, 3, 8] {
            let space = SplineSpace1D::open_uniform(n_el, 3).unwrap();
            let sol = collocate_1d(&prob, &space, &select_gp(&space)).unwrap();
            for k in 0..=20 {
                let x = k as f64 / 20.0;
                assert!((sol.eval(x, 0).unwrap() - x * (x - 1.0)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn system_consistent_with_known_coefficients() {
        // pick c, build f = L(Σ c B) pointwise, check A c = rhs at collocation points
        let space = SplineSpace1D::open_uniform(6, 3).unwrap();
        let c: Vec<f64> = (0..space.dim()).map(|i| if i == 0 || i + 1 == space.dim() { 0.0 } else { (i as f64).sin() }).collect();
        let s2 = space.clone();
        let c2 = c.clone();
        let f = move |x: f64| -s2.eval(&c2, x, 2).unwrap() + s2.eval(&c2, x, 0).unwrap();
        let prob = Problem1D::new(|_| 1.0, |_| 0.0, f, BoundaryCondition::Dirichlet);
        let sys = assemble_collocation_1d(&prob, &space, &select_gp(&space)).unwrap();
        let x = DVector::from_vec(c[1..c.len() - 1].to_vec());
        assert!((&sys.matrix * x - &sys.rhs).amax() < 1e-10);
    }

    #[test]
    fn averaging_identical_rows_keeps_solution() {
        let space = SplineSpace1D::open_uniform(10, 3).unwrap();
        let prob = Problem1D::poisson(|x| (std::f64::consts::PI * x).sin());
        let cs = select_gp(&space);
        let base = solve(&assemble_collocation_1d(&prob, &space, &cs).unwrap()).unwrap().solution;
        let mut dup = cs.clone();
        let last = dup.points.len();
        dup.points.push(cs.points[4]);
        dup.averaging_groups.push(vec![4, last]);
        let sys = assemble_collocation_1d(&prob, &space, &dup).unwrap();
        let avg = solve(&sys).unwrap().solution;
        assert!((base - avg).amax() < 1e-12);
    }

    #[test]
    fn square_scheme_count_mismatch() {
        let space = SplineSpace1D::open_uniform(10, 3).unwrap();
        let mut cs = select_gp(&space);
        cs.points.pop();
        let prob = Problem1D::poisson(|_| 1.0);
        assert!(matches!(assemble_collocation_1d(&prob, &space, &cs), Err(Error::CountMismatch { .. })));
    }

    #[test]
    fn boundary_kind_must_match() {
        let space = SplineSpace1D::periodic_uniform(10, 3).unwrap();
        let prob = Problem1D::poisson(|_| 1.0);
        assert_eq!(assemble_collocation_1d(&prob, &space, &select_gp(&space)), Err(Error::BoundaryMismatch));
    }

    #[test]
    fn lssp_is_overdetermined() {
        let space = SplineSpace1D::open_uniform(10, 3).unwrap();
        let prob = Problem1D::poisson(|_| 1.0);
        let sys = assemble_collocation_1d(&prob, &space, &select_lssp(&space).unwrap()).unwrap();
        assert!(sys.is_overdetermined());
        assert_eq!((sys.matrix.nrows(), sys.matrix.ncols()), (20, 11));
        let sym = select_csp(&space, true).unwrap();
        let sys = assemble_collocation_1d(&prob, &space, &sym).unwrap();
        assert!(sys.is_square());
    }

    #[test]
    fn csp_solves_sine_problem() {
        let pi = std::f64::consts::PI;
        let prob = Problem1D::poisson(move |x| pi * pi * (pi * x).sin());
        let space = SplineSpace1D::open_uniform(64, 3).unwrap();
        let sol = collocate_1d(&prob, &space, &select_csp(&space, false).unwrap()).unwrap();
        let err = (0..=200).map(|k| k as f64 / 200.0).map(|x| (sol.eval(x, 0).unwrap() - (pi * x).sin()).abs()).fold(0.0, f64::max);
        assert!(err < 1e-6, "{err}");
    }

    #[test]
    fn periodic_indices_wrap() {
        let space = SplineSpace1D::periodic_uniform(6, 3).unwrap();
        let prob = Problem1D::new(|_| 1.0, |_| 0.0, |_| 1.0, BoundaryCondition::Periodic);
        let sys = assemble_collocation_1d(&prob, &space, &select_gp(&space)).unwrap();
        assert_eq!(sys.matrix.ncols(), 6);
        // constant solution: rows of the mass part sum to one
        let x = solve(&sys).unwrap().solution;
        assert!(x.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }
}
