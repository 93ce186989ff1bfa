use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::spline::KnotVector;

/// Seeded random interior-knot shifts `ξ̃_i = ξ_i + X_i / (10 n_el)`,
/// `X_i ~ U[−1, 1]`. Each mesh size draws from its own ChaCha8 stream, so
/// every refinement level gets fresh, reproducible values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerturbationSpec {
    pub seed: u64,
}

impl PerturbationSpec {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    /// The `X_i` for a mesh with `n_el` elements (`n_el − 1` values).
    pub fn draws(&self, n_el: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(n_el as u64);
        (1..n_el).map(|_| rng.random_range(-1.0..=1.0)).collect()
    }
}

pub fn perturb_knots(kv: &KnotVector, spec: PerturbationSpec) -> Result<KnotVector> {
    perturb_knots_with(kv, &spec.draws(kv.n_elements()))
}

/// Shifts interior breakpoint `i` by `xs[i] / (10 n_el)`.
pub fn perturb_knots_with(kv: &KnotVector, xs: &[f64]) -> Result<KnotVector> {
    let n_el = kv.n_elements();
    if xs.len() + 1 != n_el {
        return Err(Error::LengthMismatch {
            expected: n_el - 1,
            found: xs.len(),
        });
    }
    if xs.iter().any(|x| !(x.abs() <= 1.0)) {
        return Err(Error::InvalidArgument("perturbation draws must lie in [-1, 1]".into()));
    }
    let amp = 1.0 / (10.0 * n_el as f64);
    let mut breaks = kv.breakpoints().to_vec();
    for (b, x) in breaks[1..n_el].iter_mut().zip(xs) {
        *b += amp * x;
    }
    KnotVector::from_breakpoints(kv.degree(), &breaks)
}
