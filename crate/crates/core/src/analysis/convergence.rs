use super::norms::ErrorReport;
use crate::error::{Error, Result};

/// Number of finest levels used for the tail slope.
pub const TAIL_LEVELS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L2,
    H1,
    H2,
    Linf,
}

impl Norm {
    pub fn of(self, r: &ErrorReport) -> Option<f64> {
        match self {
            Norm::L2 => Some(r.l2),
            Norm::H1 => Some(r.h1),
            Norm::H2 => r.h2,
            Norm::Linf => Some(r.linf),
        }
    }
}

/// Error reports over a refinement sequence, coarsest first.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub scheme: String,
    pub degree: usize,
    pub problem: String,
    pub reports: Vec<ErrorReport>,
}

impl ConvergenceStudy {
    pub fn new(scheme: impl Into<String>, degree: usize, problem: impl Into<String>, reports: Vec<ErrorReport>) -> Result<Self> {
        if reports.windows(2).any(|w| w[1].dof <= w[0].dof) {
            return Err(Error::InvalidArgument("refinement levels must increase in dof".into()));
        }
        Ok(Self {
            scheme: scheme.into(),
            degree,
            problem: problem.into(),
            reports,
        })
    }

    /// `log(e_i / e_{i+1}) / log(h_i / h_{i+1})` for each consecutive pair;
    /// the first entry is `None`.
    pub fn orders(&self, norm: Norm) -> Vec<Option<f64>> {
        let mut out = vec![None];
        for w in self.reports.windows(2) {
            let o = match (norm.of(&w[0]), norm.of(&w[1])) {
                (Some(a), Some(b)) => Some(step_order(a, b, w[0].h, w[1].h)),
                _ => None,
            };
            out.push(o);
        }
        out.truncate(self.reports.len());
        out
    }

    /// Least-squares slope of `log e` against `log h` over the last
    /// `TAIL_LEVELS` levels.
    pub fn tail_order(&self, norm: Norm) -> Option<f64> {
        self.tail_order_above(norm, 0.0)
    }

    /// As [`tail_order`](Self::tail_order), restricted to levels whose error
    /// exceeds `floor` (to skip levels at round-off).
    pub fn tail_order_above(&self, norm: Norm, floor: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .reports
            .iter()
            .filter_map(|r| norm.of(r).filter(|&e| e > floor).map(|e| (r.h, e)))
            .collect();
        let tail = &pts[pts.len().saturating_sub(TAIL_LEVELS)..];
        if tail.len() < 2 {
            return None;
        }
        Some(loglog_slope(tail))
    }
}

pub fn step_order(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> f64 {
    (e_coarse / e_fine).ln() / (h_coarse / h_fine).ln()
}

/// Least-squares slope of `log e` against `log h` for `(h, e)` pairs.
pub fn loglog_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Builds a study, checking that at least two levels are present.
pub fn convergence_rates(scheme: &str, degree: usize, problem: &str, reports: Vec<ErrorReport>) -> Result<ConvergenceStudy> {
    if reports.len() < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 levels, got {}", reports.len())));
    }
    ConvergenceStudy::new(scheme, degree, problem, reports)
}
