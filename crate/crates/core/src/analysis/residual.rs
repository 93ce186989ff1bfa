use super::problems::Exact1D;
use crate::error::Result;
use crate::solver::DiscreteSolution1D;

/// Signed samples of `(u − u_h)''` and their aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSamples {
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    /// Root mean square.
    pub rms: f64,
    /// Root of the sum of squares.
    pub rss: f64,
    pub max_abs: f64,
}

/// `(u − u_h)''` at each point. Meant for Galerkin solutions at (surrogate)
/// superconvergent points, where it should be of higher order than globally.
pub fn residual_superconvergence(sol: &DiscreteSolution1D, exact: &Exact1D, points: &[f64]) -> Result<ResidualSamples> {
    let values = points
        .iter()
        .map(|&x| Ok(exact(x)[2] - sol.eval(x, 2)?))
        .collect::<Result<Vec<_>>>()?;
    let ss: f64 = values.iter().map(|v| v * v).sum();
    let n = values.len().max(1) as f64;
    Ok(ResidualSamples {
        points: points.to_vec(),
        rms: (ss / n).sqrt(),
        rss: ss.sqrt(),
        max_abs: values.iter().fold(0.0, |m, v| m.max(v.abs())),
        values,
    })
}

/// `per_element` uniform points in each element, left end included and right
/// end excluded, plus `x = 1`.
pub fn dense_points(sol: &DiscreteSolution1D, per_element: usize) -> Vec<f64> {
    let kv = sol.space.knot_vector();
    let mut pts: Vec<f64> = kv
        .elements()
        .flat_map(|(lo, hi)| (0..per_element).map(move |k| lo + (hi - lo) * k as f64 / per_element as f64))
        .collect();
    pts.push(1.0);
    pts
}
