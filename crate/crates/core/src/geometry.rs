//! Parametric-to-physical maps `F: [0,1]^2 -> Ω` and the chain rule needed to
//! collocate `-Δu = f` for `u = û ∘ F^{-1}`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::spline::tensor::{D_ETA, D_ETAETA, D_XI, D_XIETA, D_XIXI, V};
use crate::spline::{SplineSpace1D, TensorSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryKind {
    Identity2D,
    BilinearQuad,
    QuarterAnnulus,
    GeneralNurbs,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Identity,
    /// Corner images of (0,0), (1,0), (0,1), (1,1).
    Bilinear([[f64; 2]; 4]),
    Nurbs {
        space: TensorSpace,
        points: Vec<[f64; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryMap {
    kind: GeometryKind,
    repr: Repr,
}

/// Position and derivatives of `F` at one parametric point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapJet {
    pub position: [f64; 2],
    /// `jacobian[a][b] = ∂x_a / ∂ξ_b`.
    pub jacobian: [[f64; 2]; 2],
    /// `F_ξξ`, `F_ξη`, `F_ηη`.
    pub second: [[f64; 2]; 3],
}

impl MapJet {
    pub fn det(&self) -> f64 {
        let j = &self.jacobian;
        j[0][0] * j[1][1] - j[0][1] * j[1][0]
    }
}

/// Value, physical gradient and physical Hessian `(u_xx, u_xy, u_yy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalDerivs {
    pub value: f64,
    pub grad: [f64; 2],
    pub hess: [f64; 3],
}

impl PhysicalDerivs {
    pub fn laplacian(&self) -> f64 {
        self.hess[0] + self.hess[2]
    }
}

impl GeometryMap {
    pub fn identity() -> Self {
        Self {
            kind: GeometryKind::Identity2D,
            repr: Repr::Identity,
        }
    }

    /// Bilinear map sending the parametric corners (0,0), (1,0), (0,1), (1,1)
    /// to `corners` in that order.
    pub fn bilinear(corners: [[f64; 2]; 4]) -> Self {
        Self {
            kind: GeometryKind::BilinearQuad,
            repr: Repr::Bilinear(corners),
        }
    }

    /// Rhombus with vertices (0,0), (1,1/4), (1/4,1), (5/4,5/4).
    pub fn rhombus() -> Self {
        Self::bilinear([[0.0, 0.0], [1.0, 0.25], [0.25, 1.0], [1.25, 1.25]])
    }

    /// Exact quarter annulus `{1 <= x²+y² <= 4, x, y >= 0}`.
    ///
    /// `ξ` runs clockwise along the arcs from the y-axis to the x-axis
    /// (rational quadratic, weights 1, √2/2, 1); `η` runs radially from
    /// radius 1 to radius 2. Corners: (0,0) ↦ (0,1), (1,0) ↦ (1,0),
    /// (0,1) ↦ (0,2), (1,1) ↦ (2,0). The Jacobian determinant is positive.
    pub fn quarter_annulus() -> Self {
        let arc = SplineSpace1D::open_uniform(1, 2).expect("valid");
        let radial = SplineSpace1D::open_uniform(1, 1).expect("valid");
        let mut points = Vec::with_capacity(6);
        let mut weights = Vec::with_capacity(6);
        for r in [1.0, 2.0] {
            points.extend([[0.0, r], [r, r], [r, 0.0]]);
            weights.extend([1.0, FRAC_1_SQRT_2, 1.0]);
        }
        let space = TensorSpace::rational(arc, radial, weights).expect("positive weights");
        Self {
            kind: GeometryKind::QuarterAnnulus,
            repr: Repr::Nurbs { space, points },
        }
    }

    /// `F = Σ_k P_k R_k` over a (rational) tensor space.
    pub fn nurbs(space: TensorSpace, points: Vec<[f64; 2]>) -> Result<Self> {
        if points.len() != space.dim() {
            return Err(Error::LengthMismatch {
                expected: space.dim(),
                found: points.len(),
            });
        }
        Ok(Self {
            kind: GeometryKind::GeneralNurbs,
            repr: Repr::Nurbs { space, points },
        })
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    /// Jet of `F` without the Jacobian check.
    pub fn jet_unchecked(&self, xi: f64, eta: f64) -> Result<MapJet> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::OutOfDomain(xi));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::OutOfDomain(eta));
        }
        Ok(match &self.repr {
            Repr::Identity => MapJet {
                position: [xi, eta],
                jacobian: [[1.0, 0.0], [0.0, 1.0]],
                second: [[0.0; 2]; 3],
            },
            Repr::Bilinear(c) => {
                let mut jet = MapJet {
                    position: [0.0; 2],
                    jacobian: [[0.0; 2]; 2],
                    second: [[0.0; 2]; 3],
                };
                for a in 0..2 {
                    let (p00, p10, p01, p11) = (c[0][a], c[1][a], c[2][a], c[3][a]);
                    let twist = p00 - p10 - p01 + p11;
                    jet.position[a] =
                        p00 * (1.0 - xi) * (1.0 - eta) + p10 * xi * (1.0 - eta) + p01 * (1.0 - xi) * eta + p11 * xi * eta;
                    jet.jacobian[a][0] = (p10 - p00) + twist * eta;
                    jet.jacobian[a][1] = (p01 - p00) + twist * xi;
                    jet.second[1][a] = twist;
                }
                jet
            }
            Repr::Nurbs { space, points } => {
                let b = space.basis(xi, eta, 2)?;
                let mut jet = MapJet {
                    position: [0.0; 2],
                    jacobian: [[0.0; 2]; 2],
                    second: [[0.0; 2]; 3],
                };
                for (d, &k) in b.derivs.iter().zip(&b.indices) {
                    let pt = points[k];
                    for a in 0..2 {
                        jet.position[a] += pt[a] * d[V];
                        jet.jacobian[a][0] += pt[a] * d[D_XI];
                        jet.jacobian[a][1] += pt[a] * d[D_ETA];
                        jet.second[0][a] += pt[a] * d[D_XIXI];
                        jet.second[1][a] += pt[a] * d[D_XIETA];
                        jet.second[2][a] += pt[a] * d[D_ETAETA];
                    }
                }
                jet
            }
        })
    }

    /// Jet of `F` at `(ξ, η)`; fails if the Jacobian is numerically singular.
    pub fn map_jet(&self, xi: f64, eta: f64) -> Result<MapJet> {
        let jet = self.jet_unchecked(xi, eta)?;
        let scale = jet.jacobian.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let det = jet.det();
        if !(det.abs() > 1e-14 * scale * scale) {
            return Err(Error::SingularJacobian { xi, eta, det });
        }
        Ok(jet)
    }

    pub fn position(&self, xi: f64, eta: f64) -> Result<[f64; 2]> {
        Ok(self.jet_unchecked(xi, eta)?.position)
    }
}

/// Free-function form of [`GeometryMap::map_jet`].
pub fn map_jet(g: &GeometryMap, xi: f64, eta: f64) -> Result<MapJet> {
    g.map_jet(xi, eta)
}

pub fn make_quarter_annulus() -> GeometryMap {
    GeometryMap::quarter_annulus()
}

/// Pushes parametric derivatives `[v, ∂ξ, ∂η, ∂ξξ, ∂ξη, ∂ηη]` of `û` to
/// physical derivatives of `u = û ∘ F^{-1}`.
///
/// The gradient solves `Jᵀ ∇u = ∇û`; the Hessian solves the 3×3 system
/// `Hess û - (∇u · F_bc) = Jᵀ Hess u J` for `(u_xx, u_xy, u_yy)`.
pub fn physical_second_order_coeffs(jet: &MapJet, param: &[f64; 6]) -> Result<PhysicalDerivs> {
    let j = &jet.jacobian;
    let det = jet.det();
    if det == 0.0 || !det.is_finite() {
        return Err(Error::SingularJacobian {
            xi: f64::NAN,
            eta: f64::NAN,
            det,
        });
    }
    // J^{-T} g
    let (gx, ge) = (param[D_XI], param[D_ETA]);
    let grad = [(j[1][1] * gx - j[1][0] * ge) / det, (-j[0][1] * gx + j[0][0] * ge) / det];

    let pairs = [(0usize, 0usize), (0, 1), (1, 1)];
    let mut m = Matrix3::zeros();
    let mut rhs = Vector3::zeros();
    for (row, &(b, c)) in pairs.iter().enumerate() {
        m[(row, 0)] = j[0][b] * j[0][c];
        m[(row, 1)] = j[0][b] * j[1][c] + j[1][b] * j[0][c];
        m[(row, 2)] = j[1][b] * j[1][c];
        let f_bc = jet.second[row];
        rhs[row] = param[D_XIXI + row] - (grad[0] * f_bc[0] + grad[1] * f_bc[1]);
    }
    let hess = m.lu().solve(&rhs).ok_or(Error::SingularJacobian {
        xi: f64::NAN,
        eta: f64::NAN,
        det,
    })?;
    Ok(PhysicalDerivs {
        value: param[V],
        grad,
        hess: [hess[0], hess[1], hess[2]],
    })
}
