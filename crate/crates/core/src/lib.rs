//! Isogeometric collocation for second-order elliptic problems.

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod point_selection;
pub mod quadrature;
pub mod solver;
pub mod spline;
pub mod study;

pub use error::{Error, Result};
