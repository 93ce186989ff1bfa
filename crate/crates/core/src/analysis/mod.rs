//! Error norms, convergence orders, residual diagnostics, knot perturbation
//! and the manufactured-problem registry.

mod convergence;
mod norms;
mod perturb;
pub mod problems;
mod residual;

pub use convergence::{convergence_rates, loglog_slope, step_order, ConvergenceStudy, Norm, TAIL_LEVELS};
pub use norms::{error_norms_1d, error_norms_2d, ErrorReport, LINF_SAMPLES};
pub use perturb::{perturb_knots, perturb_knots_with, PerturbationSpec};
pub use problems::{lookup, ManufacturedProblem, BENCHMARKS, REGISTRY};
pub use residual::{dense_points, residual_superconvergence, ResidualSamples};
