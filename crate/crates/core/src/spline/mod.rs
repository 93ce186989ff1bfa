//! Univariate and tensor-product B-spline/NURBS spaces.
//!
//! All evaluation is right-continuous in the knot spans, except at `x = 1`
//! where the last span is closed so that open bases interpolate the end
//! value.

mod basis;
mod knots;
mod space;
pub mod tensor;

pub use basis::{basis_span, BasisSpan};
pub use knots::KnotVector;
pub use space::{eval_spline, SpaceKind, SplineSpace1D};
pub use tensor::{nurbs_basis_2d, Basis2D, TensorSpace};

/// Greville abscissae of `kv`.
pub fn greville(kv: &KnotVector) -> Vec<f64> {
    kv.greville()
}
