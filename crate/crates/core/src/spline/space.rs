use crate::error::{Error, Result};

use super::basis::{ders_basis, BasisSpan};
use super::knots::{greville_from, KnotVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    Open,
    Periodic,
}

/// Univariate spline space, either the full open space or the periodic
/// subspace with `C^{p-1}` matching at `0` and `1`.
///
/// The periodic basis lives on an extended knot vector that continues the
/// breakpoints by unit translation; functions `i` and `i + n_el` of the
/// extended basis are identified.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineSpace1D {
    kind: SpaceKind,
    kv: KnotVector,
    eval_knots: Vec<f64>,
}

impl SplineSpace1D {
    pub fn open(kv: KnotVector) -> Self {
        let eval_knots = kv.knots().to_vec();
        Self {
            kind: SpaceKind::Open,
            kv,
            eval_knots,
        }
    }

    /// Periodic space over the elements of `kv`.
    pub fn periodic(kv: KnotVector) -> Self {
        let p = kv.degree() as isize;
        let breaks = kv.breakpoints();
        let n_el = (breaks.len() - 1) as isize;
        let eval_knots = (-p..=n_el + p)
            .map(|j| breaks[j.rem_euclid(n_el) as usize] + j.div_euclid(n_el) as f64)
            .collect();
        Self {
            kind: SpaceKind::Periodic,
            kv,
            eval_knots,
        }
    }

    pub fn open_uniform(n_el: usize, degree: usize) -> Result<Self> {
        Ok(Self::open(KnotVector::open_uniform(n_el, degree)?))
    }

    pub fn periodic_uniform(n_el: usize, degree: usize) -> Result<Self> {
        Ok(Self::periodic(KnotVector::open_uniform(n_el, degree)?))
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn knot_vector(&self) -> &KnotVector {
        &self.kv
    }

    pub fn degree(&self) -> usize {
        self.kv.degree()
    }

    pub fn n_elements(&self) -> usize {
        self.kv.n_elements()
    }

    /// Dimension: `n` for open spaces, `n_el` for periodic ones.
    pub fn dim(&self) -> usize {
        match self.kind {
            SpaceKind::Open => self.kv.n_basis(),
            SpaceKind::Periodic => self.kv.n_elements(),
        }
    }

    pub fn basis(&self, x: f64, r: usize) -> Result<BasisSpan> {
        let p = self.degree();
        if r > p {
            return Err(Error::DerivativeOrder { order: r, degree: p });
        }
        self.basis_padded(x, r)
    }

    /// Like [`basis`](Self::basis) but accepts `r > p`, returning zero rows.
    pub(crate) fn basis_padded(&self, x: f64, r: usize) -> Result<BasisSpan> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfDomain(x));
        }
        let p = self.degree();
        let el = self.kv.element_of(x);
        let values = ders_basis(&self.eval_knots, p, el + p, x, r);
        Ok(match self.kind {
            SpaceKind::Open => BasisSpan {
                first_index: el,
                values,
                modulus: None,
            },
            SpaceKind::Periodic => BasisSpan {
                first_index: el,
                values,
                modulus: Some(self.dim()),
            },
        })
    }

    /// Greville abscissae in increasing order. Periodic points are wrapped into `[0, 1)`.
    pub fn greville(&self) -> Vec<f64> {
        match self.kind {
            SpaceKind::Open => self.kv.greville(),
            SpaceKind::Periodic => {
                let mut g: Vec<f64> = greville_from(&self.eval_knots, self.degree(), self.dim())
                    .into_iter()
                    .map(|x| {
                        let w = x.rem_euclid(1.0);
                        // snap values within rounding of 1 back to 0
                        if 1.0 - w < 1e-14 {
                            0.0
                        } else {
                            w
                        }
                    })
                    .collect();
                g.sort_by(f64::total_cmp);
                g
            }
        }
    }

    /// `r`-th derivative of `Σ c_i B_i` at `x`.
    pub fn eval(&self, coeffs: &[f64], x: f64, r: usize) -> Result<f64> {
        if coeffs.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        let b = self.basis(x, r)?;
        Ok(b.values[r]
            .iter()
            .enumerate()
            .map(|(a, v)| v * coeffs[b.index(a)])
            .sum())
    }
}

/// Free-function form of [`SplineSpace1D::eval`].
pub fn eval_spline(space: &SplineSpace1D, coeffs: &[f64], x: f64, r: usize) -> Result<f64> {
    space.eval(coeffs, x, r)
}
