//! Refinement studies: one manufactured problem, one method, one degree,
//! a sequence of meshes.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analysis::{
    error_norms_1d, error_norms_2d, lookup, perturb_knots, ConvergenceStudy, ErrorReport, ManufacturedProblem,
    PerturbationSpec,
};
use crate::error::{Error, Result};
use crate::point_selection::{select_asp, select_csp, select_gp, select_lssp, tensorize, CollocationSet};
use crate::solver::{collocate_1d, collocate_2d, galerkin_1d, galerkin_2d, BoundaryCondition, DiscreteSolution1D, DiscreteSolution2D};
use crate::spline::{KnotVector, SplineSpace1D, TensorSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Gp,
    Asp,
    Csp,
    CspSym,
    Lssp,
    Galerkin,
}

impl Method {
    pub const ALL: [Method; 6] = [Method::Gp, Method::Asp, Method::Csp, Method::CspSym, Method::Lssp, Method::Galerkin];

    pub fn name(self) -> &'static str {
        match self {
            Method::Gp => "gp",
            Method::Asp => "asp",
            Method::Csp => "csp",
            Method::CspSym => "csp-sym",
            Method::Lssp => "lssp",
            Method::Galerkin => "galerkin",
        }
    }

    /// Whether the method collocates at surrogate points (degrees 3 to 7 only).
    fn uses_surrogates(self) -> bool {
        matches!(self, Method::Asp | Method::Csp | Method::CspSym | Method::Lssp)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown scheme '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudySpec {
    pub problem: String,
    pub method: Method,
    pub degree: usize,
    pub meshes: Vec<usize>,
    pub perturb: Option<PerturbationSpec>,
}

impl StudySpec {
    /// Rejects combinations that cannot run, before any solve.
    pub fn validate(&self) -> Result<ManufacturedProblem> {
        let mp = lookup(&self.problem)?;
        let p = self.degree;
        if self.meshes.is_empty() {
            return Err(Error::Config("empty mesh sequence".into()));
        }
        if self.meshes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("mesh sequence must be strictly increasing".into()));
        }
        if p < 2 {
            return Err(Error::UnsupportedDegree { degree: p, what: "strong-form collocation (needs p >= 2)" });
        }
        if self.method.uses_surrogates() && !(3..=7).contains(&p) {
            return Err(Error::UnsupportedDegree { degree: p, what: "surrogate superconvergent points" });
        }
        if matches!(self.method, Method::Csp | Method::CspSym) && p % 2 == 0 {
            return Err(Error::UnsupportedDegree { degree: p, what: "clustered points (odd degree only)" });
        }
        let periodic = matches!(&mp, ManufacturedProblem::OneD(m) if m.bc == BoundaryCondition::Periodic);
        if periodic && matches!(self.method, Method::Csp | Method::CspSym) {
            if let Some(&n) = self.meshes.iter().find(|&&n| n % 2 == 1) {
                return Err(Error::OddPeriodicElements { scheme: "csp", n_el: n });
            }
        }
        if matches!(mp, ManufacturedProblem::TwoD(_)) && self.method == Method::CspSym {
            return Err(Error::AveragingNotSupported);
        }
        Ok(mp)
    }
}

fn knots(degree: usize, n_el: usize, perturb: Option<PerturbationSpec>) -> Result<KnotVector> {
    let kv = KnotVector::open_uniform(n_el, degree)?;
    match perturb {
        Some(spec) => perturb_knots(&kv, spec),
        None => Ok(kv),
    }
}

/// Collocation points of `method` on `space`; `None` for Galerkin.
pub fn select(method: Method, space: &SplineSpace1D) -> Result<Option<CollocationSet>> {
    Ok(Some(match method {
        Method::Gp => select_gp(space),
        Method::Asp => select_asp(space)?,
        Method::Csp => select_csp(space, false)?,
        Method::CspSym => select_csp(space, true)?,
        Method::Lssp => select_lssp(space)?,
        Method::Galerkin => return Ok(None),
    }))
}

pub fn space_1d(mp: &ManufacturedProblem, degree: usize, n_el: usize, perturb: Option<PerturbationSpec>) -> Result<SplineSpace1D> {
    let kv = knots(degree, n_el, perturb)?;
    Ok(match mp {
        ManufacturedProblem::OneD(m) if m.bc == BoundaryCondition::Periodic => SplineSpace1D::periodic(kv),
        _ => SplineSpace1D::open(kv),
    })
}

pub fn solve_1d(mp: &ManufacturedProblem, method: Method, space: &SplineSpace1D) -> Result<DiscreteSolution1D> {
    let ManufacturedProblem::OneD(m) = mp else {
        return Err(Error::Config(format!("{} is not a 1D problem", mp.name())));
    };
    let prob = m.problem();
    match select(method, space)? {
        Some(cs) => collocate_1d(&prob, space, &cs),
        None => galerkin_1d(&prob, space),
    }
}

pub fn solve_2d(mp: &ManufacturedProblem, method: Method, space: &TensorSpace) -> Result<DiscreteSolution2D> {
    let ManufacturedProblem::TwoD(m) = mp else {
        return Err(Error::Config(format!("{} is not a 2D problem", mp.name())));
    };
    let prob = m.problem();
    let (Some(cx), Some(cy)) = (select(method, space.space_x())?, select(method, space.space_y())?) else {
        return galerkin_2d(&prob, space);
    };
    collocate_2d(&prob, space, &tensorize(&cx, &cy)?)
}

/// Solves on one mesh and measures the error with `p + 2` Gauss points.
pub fn run_level(mp: &ManufacturedProblem, method: Method, degree: usize, n_el: usize, perturb: Option<PerturbationSpec>) -> Result<ErrorReport> {
    let quad = degree + 2;
    match mp {
        ManufacturedProblem::OneD(m) => {
            let space = space_1d(mp, degree, n_el, perturb)?;
            error_norms_1d(&solve_1d(mp, method, &space)?, &m.exact, quad)
        }
        ManufacturedProblem::TwoD(m) => {
            let s = SplineSpace1D::open(knots(degree, n_el, perturb)?);
            let space = TensorSpace::new(s.clone(), s);
            error_norms_2d(&solve_2d(mp, method, &space)?, &m.exact, quad)
        }
    }
}

/// Runs every level (concurrently); reports come back ordered by mesh.
/// Failures name the level.
pub fn run_study(spec: &StudySpec) -> Result<ConvergenceStudy> {
    let mp = spec.validate()?;
    let reports = spec
        .meshes
        .par_iter()
        .map(|&n_el| {
            run_level(&mp, spec.method, spec.degree, n_el, spec.perturb).map_err(|e| Error::AtLevel {
                n_el,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ConvergenceStudy::new(spec.method.name(), spec.degree, &spec.problem, reports)
}
