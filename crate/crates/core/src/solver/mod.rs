//! Collocation and Galerkin discretizations of
//!
//! * `-u'' + a1 u' + a0 u = f` on `(0, 1)`, homogeneous Dirichlet or periodic;
//! * `-Δu = f` on a mapped square, homogeneous Dirichlet.
//!
//! Dirichlet conditions are imposed by dropping the boundary functions, which
//! is exact because open bases interpolate at the ends.

mod collocation;
mod galerkin;
mod linalg;

use std::fmt;
use std::sync::Arc;

pub use collocation::{assemble_collocation_1d, assemble_collocation_2d};
pub use galerkin::{assemble_galerkin_1d, assemble_galerkin_2d};
pub use linalg::{solve, LinearSystem, SolveOutput};

use crate::error::{Error, Result};
use crate::geometry::{physical_second_order_coeffs, GeometryMap, PhysicalDerivs};
use crate::point_selection::CollocationSet;
use crate::spline::{SpaceKind, SplineSpace1D, TensorSpace};

pub type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Dirichlet,
    Periodic,
}

/// `-u'' + a1 u' + a0 u = f`. Periodic problems need `a0` not identically
/// zero; this is not checked.
#[derive(Clone)]
pub struct Problem1D {
    pub a0: Fn1,
    pub a1: Fn1,
    pub f: Fn1,
    pub bc: BoundaryCondition,
}

impl Problem1D {
    pub fn new(
        a0: impl Fn(f64) -> f64 + Send + Sync + 'static,
        a1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        bc: BoundaryCondition,
    ) -> Self {
        Self {
            a0: Arc::new(a0),
            a1: Arc::new(a1),
            f: Arc::new(f),
            bc,
        }
    }

    /// `-u'' = f` with homogeneous Dirichlet conditions.
    pub fn poisson(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(|_| 0.0, |_| 0.0, f, BoundaryCondition::Dirichlet)
    }

    fn check_space(&self, space: &SplineSpace1D) -> Result<()> {
        match (self.bc, space.kind()) {
            (BoundaryCondition::Dirichlet, SpaceKind::Open) | (BoundaryCondition::Periodic, SpaceKind::Periodic) => Ok(()),
            _ => Err(Error::BoundaryMismatch),
        }
    }
}

impl fmt::Debug for Problem1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem1D").field("bc", &self.bc).finish_non_exhaustive()
    }
}

/// `-Δu = f` in `F([0,1]²)`, `u = 0` on the boundary.
#[derive(Clone)]
pub struct Problem2D {
    pub f: Fn2,
    pub geometry: GeometryMap,
}

impl Problem2D {
    pub fn new(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static, geometry: GeometryMap) -> Self {
        Self { f: Arc::new(f), geometry }
    }
}

impl fmt::Debug for Problem2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem2D").field("geometry", &self.geometry.kind()).finish_non_exhaustive()
    }
}

/// Maps between the full coefficient vector and the unknowns.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dofs1D {
    dim: usize,
    dirichlet: bool,
}

impl Dofs1D {
    pub(crate) fn new(space: &SplineSpace1D) -> Self {
        Self {
            dim: space.dim(),
            dirichlet: space.kind() == SpaceKind::Open,
        }
    }

    pub(crate) fn count(&self) -> usize {
        if self.dirichlet {
            self.dim - 2
        } else {
            self.dim
        }
    }

    /// Unknown index of global function `i`, `None` for constrained ones.
    pub(crate) fn unknown(&self, i: usize) -> Option<usize> {
        if !self.dirichlet {
            Some(i)
        } else if i == 0 || i + 1 == self.dim {
            None
        } else {
            Some(i - 1)
        }
    }

    pub(crate) fn expand(&self, x: &[f64]) -> Vec<f64> {
        if self.dirichlet {
            let mut c = Vec::with_capacity(self.dim);
            c.push(0.0);
            c.extend_from_slice(x);
            c.push(0.0);
            c
        } else {
            x.to_vec()
        }
    }
}

/// Interior unknowns of a tensor space, x-fastest.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dofs2D {
    n: usize,
    m: usize,
}

impl Dofs2D {
    pub(crate) fn new(space: &TensorSpace) -> Self {
        Self {
            n: space.space_x().dim(),
            m: space.space_y().dim(),
        }
    }

    pub(crate) fn count(&self) -> usize {
        (self.n - 2) * (self.m - 2)
    }

    pub(crate) fn unknown(&self, k: usize) -> Option<usize> {
        let (i, j) = (k % self.n, k / self.n);
        if i == 0 || j == 0 || i + 1 == self.n || j + 1 == self.m {
            None
        } else {
            Some((i - 1) + (j - 1) * (self.n - 2))
        }
    }

    pub(crate) fn expand(&self, x: &[f64]) -> Vec<f64> {
        let mut c = vec![0.0; self.n * self.m];
        for (k, v) in c.iter_mut().enumerate() {
            if let Some(u) = self.unknown(k) {
                *v = x[u];
            }
        }
        c
    }
}

/// `u_h = Σ c_i B_i` with boundary coefficients included.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution1D {
    pub space: SplineSpace1D,
    pub coeffs: Vec<f64>,
}

impl DiscreteSolution1D {
    pub fn eval(&self, x: f64, r: usize) -> Result<f64> {
        self.space.eval(&self.coeffs, x, r)
    }
}

/// `u_h = (Σ c_k φ_k) ∘ F^{-1}` over a tensor B-spline space.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSolution2D {
    pub space: TensorSpace,
    pub geometry: GeometryMap,
    pub coeffs: Vec<f64>,
}

impl DiscreteSolution2D {
    /// Physical position and derivatives of `u_h` at parametric `(ξ, η)`.
    pub fn eval(&self, xi: f64, eta: f64) -> Result<([f64; 2], PhysicalDerivs)> {
        let jet = self.geometry.map_jet(xi, eta)?;
        let b = self.space.basis(xi, eta, 2)?;
        let mut param = [0.0; 6];
        for (d, &k) in b.derivs.iter().zip(&b.indices) {
            for (s, v) in param.iter_mut().zip(d) {
                *s += self.coeffs[k] * v;
            }
        }
        Ok((jet.position, physical_second_order_coeffs(&jet, &param)?))
    }
}

/// Collocates `prob` at `cs` and returns the full solution.
pub fn collocate_1d(prob: &Problem1D, space: &SplineSpace1D, cs: &CollocationSet) -> Result<DiscreteSolution1D> {
    let sys = assemble_collocation_1d(prob, space, cs)?;
    let x = solve(&sys)?.solution;
    Ok(DiscreteSolution1D {
        space: space.clone(),
        coeffs: Dofs1D::new(space).expand(x.as_slice()),
    })
}

pub fn galerkin_1d(prob: &Problem1D, space: &SplineSpace1D) -> Result<DiscreteSolution1D> {
    let sys = assemble_galerkin_1d(prob, space)?;
    let x = solve(&sys)?.solution;
    Ok(DiscreteSolution1D {
        space: space.clone(),
        coeffs: Dofs1D::new(space).expand(x.as_slice()),
    })
}

pub fn collocate_2d(prob: &Problem2D, space: &TensorSpace, cs: &CollocationSet<[f64; 2]>) -> Result<DiscreteSolution2D> {
    let sys = assemble_collocation_2d(prob, space, cs)?;
    let x = solve(&sys)?.solution;
    Ok(DiscreteSolution2D {
        space: space.clone(),
        geometry: prob.geometry.clone(),
        coeffs: Dofs2D::new(space).expand(x.as_slice()),
    })
}

pub fn galerkin_2d(prob: &Problem2D, space: &TensorSpace) -> Result<DiscreteSolution2D> {
    let sys = assemble_galerkin_2d(prob, space)?;
    let x = solve(&sys)?.solution;
    Ok(DiscreteSolution2D {
        space: space.clone(),
        geometry: prob.geometry.clone(),
        coeffs: Dofs2D::new(space).expand(x.as_slice()),
    })
}

/// Tensor B-spline space for 2D Dirichlet problems.
pub fn open_tensor_space(n_el: usize, degree: usize) -> Result<TensorSpace> {
    let s = SplineSpace1D::open_uniform(n_el, degree)?;
    Ok(TensorSpace::new(s.clone(), s))
}
