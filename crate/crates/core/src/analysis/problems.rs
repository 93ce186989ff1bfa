//! Manufactured problems: exact solutions with closed-form derivatives and
//! right-hand sides.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{GeometryMap, PhysicalDerivs};
use crate::solver::{BoundaryCondition, Fn1, Fn2, Problem1D, Problem2D};

/// `[u, u', u'']` at a point.
pub type Exact1D = Arc<dyn Fn(f64) -> [f64; 3] + Send + Sync>;
/// Value, gradient and Hessian at a physical point.
pub type Exact2D = Arc<dyn Fn(f64, f64) -> PhysicalDerivs + Send + Sync>;

#[derive(Clone)]
pub struct Manufactured1D {
    pub name: &'static str,
    pub exact: Exact1D,
    pub a0: Fn1,
    pub a1: Fn1,
    pub f: Fn1,
    pub bc: BoundaryCondition,
}

#[derive(Clone)]
pub struct Manufactured2D {
    pub name: &'static str,
    pub exact: Exact2D,
    pub f: Fn2,
    pub geometry: GeometryMap,
}

#[derive(Clone)]
pub enum ManufacturedProblem {
    OneD(Manufactured1D),
    TwoD(Manufactured2D),
}

impl fmt::Debug for ManufacturedProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ManufacturedProblem").field(&self.name()).finish()
    }
}

impl Manufactured1D {
    pub fn problem(&self) -> Problem1D {
        Problem1D {
            a0: self.a0.clone(),
            a1: self.a1.clone(),
            f: self.f.clone(),
            bc: self.bc,
        }
    }

    /// Largest `|L u − f| / max(|f|, 1)` over `n` seeded random points, with
    /// `u'` and `u''` replaced by central differences of `u`.
    pub fn self_check(&self, n: usize, seed: u64) -> f64 {
        let h = 1e-4;
        let u = |x: f64| (self.exact)(x)[0];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let x: f64 = rng.random_range(0.01..0.99);
                let d1 = (u(x + h) - u(x - h)) / (2.0 * h);
                let d2 = (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h);
                let lu = -d2 + (self.a1)(x) * d1 + (self.a0)(x) * u(x);
                let f = (self.f)(x);
                (lu - f).abs() / f.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Largest discrepancy between the closed-form derivatives and central
    /// differences, relative to `max(|·|, 1)`.
    pub fn derivative_check(&self, n: usize, seed: u64) -> f64 {
        let h = 1e-4;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let x: f64 = rng.random_range(0.01..0.99);
                let [_, d1, d2] = (self.exact)(x);
                let (m, p) = ((self.exact)(x - h), (self.exact)(x + h));
                let e1 = ((p[0] - m[0]) / (2.0 * h) - d1).abs() / d1.abs().max(1.0);
                let e2 = ((p[1] - m[1]) / (2.0 * h) - d2).abs() / d2.abs().max(1.0);
                e1.max(e2)
            })
            .fold(0.0, f64::max)
    }
}

impl Manufactured2D {
    pub fn problem(&self) -> Problem2D {
        Problem2D {
            f: self.f.clone(),
            geometry: self.geometry.clone(),
        }
    }

    fn random_points(&self, n: usize, seed: u64) -> Vec<[f64; 2]> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let (xi, eta) = (rng.random_range(0.01..0.99), rng.random_range(0.01..0.99));
                self.geometry.position(xi, eta).expect("parametric point in domain")
            })
            .collect()
    }

    /// Largest `|−Δu − f| / max(|f|, 1)` over `n` random interior points, with
    /// the Laplacian from a five-point stencil of `u`.
    pub fn self_check(&self, n: usize, seed: u64) -> f64 {
        let h = 1e-4;
        let u = |x: f64, y: f64| (self.exact)(x, y).value;
        self.random_points(n, seed)
            .into_iter()
            .map(|[x, y]| {
                let lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4.0 * u(x, y)) / (h * h);
                let f = (self.f)(x, y);
                (-lap - f).abs() / f.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Closed-form gradient and Hessian against central differences.
    pub fn derivative_check(&self, n: usize, seed: u64) -> f64 {
        let h = 1e-5;
        let rel = |fd: f64, exact: f64| (fd - exact).abs() / exact.abs().max(1.0);
        self.random_points(n, seed)
            .into_iter()
            .map(|[x, y]| {
                let d = (self.exact)(x, y);
                let (xp, xm) = ((self.exact)(x + h, y), (self.exact)(x - h, y));
                let (yp, ym) = ((self.exact)(x, y + h), (self.exact)(x, y - h));
                [
                    rel((xp.value - xm.value) / (2.0 * h), d.grad[0]),
                    rel((yp.value - ym.value) / (2.0 * h), d.grad[1]),
                    rel((xp.grad[0] - xm.grad[0]) / (2.0 * h), d.hess[0]),
                    rel((yp.grad[0] - ym.grad[0]) / (2.0 * h), d.hess[1]),
                    rel((xp.grad[1] - xm.grad[1]) / (2.0 * h), d.hess[1]),
                    rel((yp.grad[1] - ym.grad[1]) / (2.0 * h), d.hess[2]),
                ]
                .into_iter()
                .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

impl ManufacturedProblem {
    pub fn name(&self) -> &'static str {
        match self {
            Self::OneD(m) => m.name,
            Self::TwoD(m) => m.name,
        }
    }

    pub fn self_check(&self, n: usize, seed: u64) -> f64 {
        match self {
            Self::OneD(m) => m.self_check(n, seed),
            Self::TwoD(m) => m.self_check(n, seed),
        }
    }

    pub fn derivative_check(&self, n: usize, seed: u64) -> f64 {
        match self {
            Self::OneD(m) => m.derivative_check(n, seed),
            Self::TwoD(m) => m.derivative_check(n, seed),
        }
    }
}

/// The five benchmark problems.
pub const BENCHMARKS: [&str; 5] = ["p1-dirichlet", "p2-periodic", "p3-advection", "p4-annulus", "p5-rhombus"];

/// Every registered name, including the in-space polynomial problems and the
/// ill-posed periodic pure-diffusion problem.
pub const REGISTRY: [&str; 8] = [
    "p1-dirichlet",
    "p2-periodic",
    "p3-advection",
    "p4-annulus",
    "p5-rhombus",
    "quadratic-1d",
    "quadratic-2d",
    "periodic-pure-diffusion",
];

pub fn lookup(name: &str) -> Result<ManufacturedProblem> {
    Ok(match name {
        "p1-dirichlet" => ManufacturedProblem::OneD(p1_dirichlet()),
        "p2-periodic" => ManufacturedProblem::OneD(p2_periodic()),
        "p3-advection" => ManufacturedProblem::OneD(p3_advection()),
        "p4-annulus" => ManufacturedProblem::TwoD(p4_annulus()),
        "p5-rhombus" => ManufacturedProblem::TwoD(p5_rhombus()),
        "quadratic-1d" => ManufacturedProblem::OneD(quadratic_1d()),
        "quadratic-2d" => ManufacturedProblem::TwoD(quadratic_2d()),
        "periodic-pure-diffusion" => ManufacturedProblem::OneD(periodic_pure_diffusion()),
        _ => return Err(Error::UnknownProblem(name.to_string())),
    })
}

fn zero(_: f64) -> f64 {
    0.0
}

fn one(_: f64) -> f64 {
    1.0
}

/// `-u'' = π² sin(πx)`, `u = sin(πx)`.
pub fn p1_dirichlet() -> Manufactured1D {
    Manufactured1D {
        name: "p1-dirichlet",
        exact: Arc::new(|x| {
            let (s, c) = (PI * x).sin_cos();
            [s, PI * c, -PI * PI * s]
        }),
        a0: Arc::new(zero),
        a1: Arc::new(zero),
        f: Arc::new(|x| PI * PI * (PI * x).sin()),
        bc: BoundaryCondition::Dirichlet,
    }
}

/// `-u'' + u' + u = f`, periodic, `u = sin(2πx)`.
pub fn p2_periodic() -> Manufactured1D {
    let w = 2.0 * PI;
    Manufactured1D {
        name: "p2-periodic",
        exact: Arc::new(move |x| {
            let (s, c) = (w * x).sin_cos();
            [s, w * c, -w * w * s]
        }),
        a0: Arc::new(one),
        a1: Arc::new(one),
        f: Arc::new(move |x| {
            let (s, c) = (w * x).sin_cos();
            (1.0 + w * w) * s + w * c
        }),
        bc: BoundaryCondition::Periodic,
    }
}

/// `-u'' = 4π² sin(2πx)` with periodic ends. Solutions are unique only up to a
/// constant, so every discretization of it is singular.
pub fn periodic_pure_diffusion() -> Manufactured1D {
    let w = 2.0 * PI;
    Manufactured1D {
        name: "periodic-pure-diffusion",
        exact: Arc::new(move |x| {
            let (s, c) = (w * x).sin_cos();
            [s, w * c, -w * w * s]
        }),
        a0: Arc::new(zero),
        a1: Arc::new(zero),
        f: Arc::new(move |x| w * w * (w * x).sin()),
        bc: BoundaryCondition::Periodic,
    }
}

/// `-u'' + x u' + u = f`, `u = sin(πx) eˣ`.
pub fn p3_advection() -> Manufactured1D {
    Manufactured1D {
        name: "p3-advection",
        exact: Arc::new(|x| {
            let (s, c) = (PI * x).sin_cos();
            let e = x.exp();
            [s * e, e * (s + PI * c), e * ((1.0 - PI * PI) * s + 2.0 * PI * c)]
        }),
        a0: Arc::new(one),
        a1: Arc::new(|x| x),
        f: Arc::new(|x| {
            let (s, c) = (PI * x).sin_cos();
            x.exp() * (PI * PI * s - 2.0 * PI * c + x * (s + PI * c))
        }),
        bc: BoundaryCondition::Dirichlet,
    }
}

/// `u = −(s − 1)(s − 4) x y²`, `s = x² + y²`, on the quarter annulus.
pub fn p4_annulus() -> Manufactured2D {
    fn exact(x: f64, y: f64) -> PhysicalDerivs {
        let s = x * x + y * y;
        let g = -(s * s - 5.0 * s + 4.0);
        let g1 = -(2.0 * s - 5.0);
        let g2 = -2.0;
        let (x2, y2) = (x * x, y * y);
        PhysicalDerivs {
            value: g * x * y2,
            grad: [2.0 * x2 * y2 * g1 + y2 * g, 2.0 * x * y * y2 * g1 + 2.0 * x * y * g],
            hess: [
                6.0 * x * y2 * g1 + 4.0 * x * x2 * y2 * g2,
                4.0 * x2 * y * g1 + 4.0 * x2 * y * y2 * g2 + 2.0 * y * g + 2.0 * y * y2 * g1,
                10.0 * x * y2 * g1 + 4.0 * x * y2 * y2 * g2 + 2.0 * x * g,
            ],
        }
    }
    Manufactured2D {
        name: "p4-annulus",
        exact: Arc::new(exact),
        f: Arc::new(|x, y| -exact(x, y).laplacian()),
        geometry: GeometryMap::quarter_annulus(),
    }
}

/// `u = sin(a(y − 4x)) sin(b(x/4 − y)) (x³ + y³)` on the rhombus; both sine
/// factors vanish on the four edges.
pub fn p5_rhombus() -> Manufactured2D {
    fn exact(x: f64, y: f64) -> PhysicalDerivs {
        let a = 4.0 * PI / 15.0;
        let b = 16.0 * PI / 15.0;
        let (ax, ay) = (-4.0 * a, a);
        let (bx, by) = (b / 4.0, -b);
        let (sa, ca) = (a * (y - 4.0 * x)).sin_cos();
        let (sb, cb) = (b * (x / 4.0 - y)).sin_cos();
        let s = sa * sb;
        let sx = ax * ca * sb + bx * sa * cb;
        let sy = ay * ca * sb + by * sa * cb;
        let cc = ca * cb;
        let sxx = -s * (ax * ax + bx * bx) + 2.0 * ax * bx * cc;
        let syy = -s * (ay * ay + by * by) + 2.0 * ay * by * cc;
        let sxy = -s * (ax * ay + bx * by) + (ax * by + ay * bx) * cc;
        let c = x * x * x + y * y * y;
        let (cx, cy) = (3.0 * x * x, 3.0 * y * y);
        let (cxx, cyy) = (6.0 * x, 6.0 * y);
        PhysicalDerivs {
            value: s * c,
            grad: [sx * c + s * cx, sy * c + s * cy],
            hess: [
                sxx * c + 2.0 * sx * cx + s * cxx,
                sxy * c + sx * cy + sy * cx,
                syy * c + 2.0 * sy * cy + s * cyy,
            ],
        }
    }
    Manufactured2D {
        name: "p5-rhombus",
        exact: Arc::new(exact),
        f: Arc::new(|x, y| -exact(x, y).laplacian()),
        geometry: GeometryMap::rhombus(),
    }
}

/// `-u'' = 2`, `u = x(1 − x)`: lies in every space of degree ≥ 2.
pub fn quadratic_1d() -> Manufactured1D {
    Manufactured1D {
        name: "quadratic-1d",
        exact: Arc::new(|x| [x * (1.0 - x), 1.0 - 2.0 * x, -2.0]),
        a0: Arc::new(zero),
        a1: Arc::new(zero),
        f: Arc::new(|_| 2.0),
        bc: BoundaryCondition::Dirichlet,
    }
}

/// `u = x(1 − x) y(1 − y)` on the unit square.
pub fn quadratic_2d() -> Manufactured2D {
    fn exact(x: f64, y: f64) -> PhysicalDerivs {
        let (gx, gy) = (x * (1.0 - x), y * (1.0 - y));
        let (dx, dy) = (1.0 - 2.0 * x, 1.0 - 2.0 * y);
        PhysicalDerivs {
            value: gx * gy,
            grad: [dx * gy, gx * dy],
            hess: [-2.0 * gy, dx * dy, -2.0 * gx],
        }
    }
    Manufactured2D {
        name: "quadratic-2d",
        exact: Arc::new(exact),
        f: Arc::new(|x, y| -exact(x, y).laplacian()),
        geometry: GeometryMap::identity(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_self_checks() {
        for name in REGISTRY {
            let mp = lookup(name).unwrap();
            assert_eq!(mp.name(), name);
            let e = mp.self_check(100, 7);
            assert!(e < 1e-5, "{name}: {e}");
            let d = mp.derivative_check(100, 8);
            assert!(d < 1e-5, "{name}: {d}");
        }
    }

    #[test]
    fn pure_diffusion_is_singular() {
        let spec = crate::study::StudySpec {
            problem: "periodic-pure-diffusion".into(),
            method: crate::study::Method::Galerkin,
            degree: 3,
            meshes: vec![8, 16],
            perturb: None,
        };
        for method in [crate::study::Method::Galerkin, crate::study::Method::Gp, crate::study::Method::Csp] {
            let err = crate::study::run_study(&crate::study::StudySpec { method, ..spec.clone() }).unwrap_err();
            assert!(!err.is_config(), "{method}: {err}");
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(lookup("p9"), Err(Error::UnknownProblem(_))));
    }

    #[test]
    fn homogeneous_boundary_values() {
        for m in [p1_dirichlet(), p3_advection(), quadratic_1d()] {
            assert!((m.exact)(0.0)[0].abs() < 1e-15 && (m.exact)(1.0)[0].abs() < 1e-14);
        }
        let p2 = p2_periodic();
        let (a, b) = ((p2.exact)(0.0), (p2.exact)(1.0));
        assert!(a.iter().zip(&b).all(|(u, v)| (u - v).abs() < 1e-12));
        for m in [p4_annulus(), p5_rhombus()] {
            for k in 0..=10 {
                let t = k as f64 / 10.0;
                for [xi, eta] in [[t, 0.0], [t, 1.0], [0.0, t], [1.0, t]] {
                    let [x, y] = m.geometry.position(xi, eta).unwrap();
                    assert!((m.exact)(x, y).value.abs() < 1e-13, "{} at ({xi},{eta})", m.name);
                }
            }
        }
    }

    #[test]
    fn p1_source_is_pi_squared_sine() {
        let m = p1_dirichlet();
        assert!(((m.f)(0.5) - PI * PI).abs() < 1e-14);
    }
}
