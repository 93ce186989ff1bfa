//! Collocation point sets: Greville points, surrogate superconvergent points
//! and the subsets used by the alternating and clustered schemes.
//!
//! Surrogate points are the reference points of [`reference_points`] mapped
//! affinely to each element. They estimate where the second derivative of
//! the Galerkin error is of higher order.

use crate::error::{Error, Result};
use crate::spline::{KnotVector, SpaceKind, SplineSpace1D};

const DEDUP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Interior Greville points.
    Gp,
    /// Least squares over all surrogate points.
    Lssp,
    /// One surrogate point per element.
    Asp,
    /// Both surrogate points in every other element.
    Csp,
    /// Symmetrized clustered points with averaged center equations.
    CspSym,
}

impl Scheme {
    /// True when the scheme yields exactly one equation per unknown.
    pub fn is_square(self) -> bool {
        !matches!(self, Scheme::Lssp)
    }
}

/// Ordered collocation points plus groups of point indices whose equations
/// are replaced by their mean.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationSet<P = f64> {
    pub points: Vec<P>,
    pub averaging_groups: Vec<Vec<usize>>,
    pub scheme: Scheme,
}

impl<P> CollocationSet<P> {
    fn plain(points: Vec<P>, scheme: Scheme) -> Self {
        Self {
            points,
            averaging_groups: Vec::new(),
            scheme,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `|points| - Σ_g (|g| - 1)`.
    pub fn equation_count(&self) -> usize {
        self.points.len() - self.averaging_groups.iter().map(|g| g.len().saturating_sub(1)).sum::<usize>()
    }
}

/// Superconvergent points for the second derivative on the reference
/// element `[-1, 1]`, for degrees 3 to 7.
pub fn reference_points(degree: usize) -> Result<Vec<f64>> {
    Ok(match degree {
        3 => {
            let t = 1.0 / 3f64.sqrt();
            vec![-t, t]
        }
        4 | 6 => vec![-1.0, 0.0, 1.0],
        5 => {
            let t = (225.0 - 30.0 * 30f64.sqrt()).sqrt() / 15.0;
            vec![-t, t]
        }
        7 => vec![-0.504918567512, 0.504918567512],
        _ => {
            return Err(Error::UnsupportedDegree {
                degree,
                what: "superconvergent points",
            })
        }
    })
}

fn map_to_element(t: f64, a: f64, b: f64) -> f64 {
    // exact images for the endpoints so shared knots deduplicate cleanly
    if t == -1.0 {
        a
    } else if t == 1.0 {
        b
    } else {
        0.5 * (a + b) + t * 0.5 * (b - a)
    }
}

/// Surrogate points of every element, element by element (endpoints repeated).
pub fn surrogate_points_by_element(kv: &KnotVector) -> Result<Vec<Vec<f64>>> {
    let reference = reference_points(kv.degree())?;
    Ok(kv
        .elements()
        .map(|(a, b)| reference.iter().map(|&t| map_to_element(t, a, b)).collect())
        .collect())
}

/// All surrogate points in increasing order, shared knots counted once.
pub fn surrogate_sp_all(kv: &KnotVector) -> Result<Vec<f64>> {
    let mut out: Vec<f64> = Vec::new();
    for pts in surrogate_points_by_element(kv)? {
        for x in pts {
            if out.last().is_none_or(|&l| x - l > DEDUP_TOL) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// Surrogate points of `space`: for periodic spaces the point at 1 is the
/// point at 0.
pub fn surrogate_points(space: &SplineSpace1D) -> Result<Vec<f64>> {
    let mut pts = surrogate_sp_all(space.knot_vector())?;
    if space.kind() == SpaceKind::Periodic && pts.first() == Some(&0.0) && pts.last() == Some(&1.0) {
        pts.pop();
    }
    Ok(pts)
}

/// Surrogate points lying in elements more than `degree` elements away
/// from both ends of the domain.
pub fn interior_surrogate_points(kv: &KnotVector) -> Result<Vec<f64>> {
    let p = kv.degree();
    let n_el = kv.n_elements();
    let mut out: Vec<f64> = Vec::new();
    for (e, pts) in surrogate_points_by_element(kv)?.into_iter().enumerate() {
        if e < p || e + p >= n_el {
            continue;
        }
        for x in pts {
            if out.last().is_none_or(|&l| x - l > DEDUP_TOL) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

fn unknowns(space: &SplineSpace1D) -> usize {
    match space.kind() {
        SpaceKind::Open => space.dim() - 2,
        SpaceKind::Periodic => space.dim(),
    }
}

/// Collocation at Greville points: the `n - 2` interior ones on open spaces,
/// all `n_el` wrapped ones on periodic spaces.
pub fn select_gp(space: &SplineSpace1D) -> CollocationSet {
    let g = space.greville();
    let points = match space.kind() {
        SpaceKind::Open => g[1..g.len() - 1].to_vec(),
        SpaceKind::Periodic => g,
    };
    CollocationSet::plain(points, Scheme::Gp)
}

/// All surrogate points (interior ones for open spaces), for a least-squares solve.
pub fn select_lssp(space: &SplineSpace1D) -> Result<CollocationSet> {
    let mut pts = surrogate_points(space)?;
    if space.kind() == SpaceKind::Open {
        pts.retain(|&x| x > 0.0 && x < 1.0);
    }
    let need = unknowns(space);
    if pts.len() < need {
        return Err(Error::TooFewPoints {
            points: pts.len(),
            unknowns: need,
        });
    }
    Ok(CollocationSet::plain(pts, Scheme::Lssp))
}

/// Greville points within this many whole elements of either end are kept
/// as they are by [`select_asp`] on open spaces.
fn asp_boundary_layers(degree: usize) -> usize {
    degree - 1
}

/// Alternating superconvergent points: one surrogate point per element.
///
/// Periodic spaces take the left point of each element for odd degree and
/// the midpoint for even degree. Open spaces start from the interior
/// Greville points and move each one that is at least `p - 1` whole elements
/// away from both ends onto the nearest surrogate point of its element; if
/// that point is taken, the element's other surrogate point is used, and
/// failing that the Greville point stays.
pub fn select_asp(space: &SplineSpace1D) -> Result<CollocationSet> {
    let kv = space.knot_vector();
    let p = kv.degree();
    let by_element = surrogate_points_by_element(kv)?;
    match space.kind() {
        SpaceKind::Periodic => {
            let points = by_element
                .iter()
                .map(|pts| if p % 2 == 1 { pts[0] } else { pts[pts.len() / 2] })
                .collect();
            Ok(CollocationSet::plain(points, Scheme::Asp))
        }
        SpaceKind::Open => {
            let layers = asp_boundary_layers(p);
            let breaks = kv.breakpoints();
            let greville = kv.greville();
            let mut chosen: Vec<f64> = Vec::with_capacity(greville.len() - 2);
            let taken = |chosen: &[f64], x: f64| chosen.iter().any(|&c| (c - x).abs() <= DEDUP_TOL);
            for &g in &greville[1..greville.len() - 1] {
                // Greville averages of knots land on knots only up to rounding
                let g = breaks.iter().copied().find(|b| (b - g).abs() <= DEDUP_TOL).unwrap_or(g);
                // whole elements strictly to the left / right of g
                let left = breaks.iter().filter(|&&b| b <= g).count() - 1;
                let right = breaks.iter().filter(|&&b| b >= g).count() - 1;
                let mut x = g;
                if left >= layers && right >= layers {
                    let mut cands = by_element[kv.element_of(g)].clone();
                    cands.sort_by(|a, b| (a - g).abs().total_cmp(&(b - g).abs()));
                    if let Some(&c) = cands.iter().find(|&&c| !taken(&chosen, c)) {
                        x = c;
                    }
                }
                chosen.push(x);
            }
            chosen.sort_by(f64::total_cmp);
            Ok(CollocationSet::plain(chosen, Scheme::Asp))
        }
    }
}

/// Working list for the clustered selection: points tagged with an optional
/// averaging pair id.
struct Picker<'a> {
    by_element: &'a [Vec<f64>],
    points: Vec<(f64, Option<usize>)>,
    need: usize,
}

impl Picker<'_> {
    fn has(&self, x: f64) -> bool {
        self.points.iter().any(|&(c, _)| (c - x).abs() <= DEDUP_TOL)
    }

    fn cluster(&mut self, e: usize) {
        for &x in &self.by_element[e] {
            if !self.has(x) {
                self.points.push((x, None));
            }
        }
    }

    /// Adds the point of element `e` nearer the given end, or the other one
    /// when that is already present. When both are taken (coarse meshes with
    /// high degree) the nearest element with a free point is used, searching
    /// toward the center first so left and right extras stay mirror images.
    fn extra(&mut self, e: usize, toward_right: bool) -> Result<()> {
        let n_el = self.by_element.len() as isize;
        let inward: isize = if toward_right { -1 } else { 1 };
        let candidates = std::iter::once(e as isize).chain((1..n_el).flat_map(|d| [e as isize + inward * d, e as isize - inward * d]));
        for c in candidates.filter(|c| (0..n_el).contains(c)) {
            let pts = &self.by_element[c as usize];
            let order: [f64; 2] = if toward_right {
                [pts[1], pts[0]]
            } else {
                [pts[0], pts[1]]
            };
            if let Some(x) = order.into_iter().find(|&x| !self.has(x)) {
                self.points.push((x, None));
                return Ok(());
            }
        }
        Err(Error::TooFewPoints {
            points: 2 * self.by_element.len(),
            unknowns: self.need,
        })
    }

    fn finish(mut self, scheme: Scheme) -> CollocationSet {
        self.points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let ids: Vec<usize> = {
            let mut v: Vec<usize> = self.points.iter().filter_map(|p| p.1).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        for id in ids {
            groups.push(
                self.points
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.1 == Some(id))
                    .map(|(i, _)| i)
                    .collect(),
            );
        }
        CollocationSet {
            points: self.points.into_iter().map(|p| p.0).collect(),
            averaging_groups: groups,
            scheme,
        }
    }
}

/// Clustered superconvergent points: both surrogate points in every other
/// element, plus boundary extras on open spaces.
///
/// Odd degree only. On open spaces with an even number of elements the plain
/// variant is not mirror symmetric; `symmetric` mirrors the left half instead
/// and averages the equations of the mirror pair closest to the center.
pub fn select_csp(space: &SplineSpace1D, symmetric: bool) -> Result<CollocationSet> {
    let kv = space.knot_vector();
    let p = kv.degree();
    if p % 2 == 0 {
        return Err(Error::UnsupportedDegree {
            degree: p,
            what: "clustered collocation (odd degrees only)",
        });
    }
    let by_element = surrogate_points_by_element(kv)?;
    let n_el = by_element.len();
    let scheme = if symmetric { Scheme::CspSym } else { Scheme::Csp };
    let need = match space.kind() {
        SpaceKind::Periodic => n_el,
        SpaceKind::Open => n_el + p - 2,
    };
    let mut pick = Picker {
        by_element: &by_element,
        points: Vec::new(),
        need,
    };

    if space.kind() == SpaceKind::Periodic {
        if n_el % 2 == 1 {
            return Err(Error::OddPeriodicElements { scheme: "C-CSP", n_el });
        }
        (0..n_el).step_by(2).for_each(|e| pick.cluster(e));
        return Ok(pick.finish(scheme));
    }

    if 2 * n_el < need {
        return Err(Error::TooFewPoints {
            points: 2 * n_el,
            unknowns: need,
        });
    }
    let extras = (p - 3) / 2;
    let side_extras = |pick: &mut Picker| -> Result<()> {
        for j in 1..=extras {
            let left = 2 * j - 1;
            let right = n_el - 2 * j;
            if left >= n_el || right >= n_el {
                return Err(Error::TooFewPoints {
                    points: 2 * n_el,
                    unknowns: need,
                });
            }
            pick.extra(left, false)?;
            pick.extra(right, true)?;
        }
        Ok(())
    };

    if n_el % 2 == 1 {
        (0..n_el).step_by(2).for_each(|e| pick.cluster(e));
        side_extras(&mut pick)?;
    } else if !symmetric {
        (0..n_el).step_by(2).for_each(|e| pick.cluster(e));
        for j in 1..=extras {
            pick.extra(2 * j - 1, false)?;
            // skipped elements on the right are n_el - 1 - 2j (zero-based)
            let right = (n_el - 1).checked_sub(2 * j).ok_or(Error::TooFewPoints {
                points: 2 * n_el,
                unknowns: need,
            })?;
            pick.extra(right, true)?;
        }
        pick.extra(n_el - 1, true)?;
    } else {
        let half = n_el / 2;
        for e in (0..half).step_by(2) {
            pick.cluster(e);
            pick.cluster(n_el - 1 - e);
        }
        side_extras(&mut pick)?;
        // mirror pair closest to the center: right point of element half-1
        // and left point of element half
        let inner = [by_element[half - 1][1], by_element[half][0]];
        pick.points.retain(|&(x, _)| !inner.iter().any(|&c| (c - x).abs() <= DEDUP_TOL));
        pick.points.extend(inner.iter().map(|&x| (x, Some(0))));
    }

    let set = pick.finish(scheme);
    if set.equation_count() != need {
        return Err(Error::CountMismatch {
            equations: set.equation_count(),
            unknowns: need,
        });
    }
    Ok(set)
}

/// Cartesian product of two univariate sets, x-fastest.
pub fn tensorize(cs_x: &CollocationSet, cs_y: &CollocationSet) -> Result<CollocationSet<[f64; 2]>> {
    if !cs_x.averaging_groups.is_empty() || !cs_y.averaging_groups.is_empty() {
        return Err(Error::AveragingNotSupported);
    }
    let points = cs_y
        .points
        .iter()
        .flat_map(|&y| cs_x.points.iter().map(move |&x| [x, y]))
        .collect();
    Ok(CollocationSet::plain(points, cs_x.scheme))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn open(n_el: usize, p: usize) -> SplineSpace1D {
        SplineSpace1D::open_uniform(n_el, p).unwrap()
    }

    fn periodic(n_el: usize, p: usize) -> SplineSpace1D {
        SplineSpace1D::periodic_uniform(n_el, p).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-14, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn reference_table_values() {
        let t3 = reference_points(3).unwrap();
        assert!((t3[1] - 0.577350269189626).abs() < 1e-12);
        assert_eq!(reference_points(4).unwrap(), vec![-1.0, 0.0, 1.0]);
        let t5 = reference_points(5).unwrap();
        assert!((t5[1] - 0.5193296223592282).abs() < 1e-14);
        assert_eq!(reference_points(7).unwrap()[1], 0.504918567512);
        assert!(reference_points(2).is_err());
        assert!(reference_points(8).is_err());
        for p in 3..=7 {
            let t = reference_points(p).unwrap();
            for (a, b) in t.iter().zip(t.iter().rev()) {
                assert_eq!(*a, -*b);
            }
        }
    }

    #[test]
    fn surrogate_cubic_single_element() {
        let kv = KnotVector::open_uniform(1, 3).unwrap();
        let s = surrogate_sp_all(&kv).unwrap();
        let t = 1.0 / 3f64.sqrt();
        assert_close(&s, &[(1.0 - t) / 2.0, (1.0 + t) / 2.0]);
        assert!((s[0] - 0.2113).abs() < 1e-4 && (s[1] - 0.7887).abs() < 1e-4);
    }

    #[test]
    fn surrogate_quartic_dedups_shared_knot() {
        let kv = KnotVector::open_uniform(2, 4).unwrap();
        assert_close(&surrogate_sp_all(&kv).unwrap(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn surrogate_cubic_count() {
        for n_el in 1..20 {
            let kv = KnotVector::open_uniform(n_el, 3).unwrap();
            assert_eq!(surrogate_sp_all(&kv).unwrap().len(), 2 * n_el);
        }
    }

    #[test]
    fn gp_drops_endpoints() {
        let cs = select_gp(&open(3, 3));
        assert_close(&cs.points, &[1.0 / 9.0, 1.0 / 3.0, 2.0 / 3.0, 8.0 / 9.0]);
        for p in 1..=7 {
            for n_el in 1..12 {
                let s = open(n_el, p);
                assert_eq!(select_gp(&s).len(), s.dim() - 2);
            }
        }
    }

    #[test]
    fn gp_periodic_even_is_midpoints() {
        let cs = select_gp(&periodic(10, 4));
        let mids: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) / 10.0).collect();
        assert_close(&cs.points, &mids);
    }

    #[test]
    fn lssp_counts() {
        let cs = select_lssp(&open(10, 3)).unwrap();
        assert_eq!((cs.len(), open(10, 3).dim() - 2), (20, 11));
        assert_eq!(select_lssp(&open(10, 4)).unwrap().len(), 19);
        assert_eq!(select_lssp(&periodic(10, 3)).unwrap().len(), 20);
        assert_eq!(select_lssp(&periodic(10, 4)).unwrap().len(), 20);
        assert!(matches!(select_lssp(&open(1, 5)), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn asp_periodic() {
        let cs = select_asp(&periodic(10, 3)).unwrap();
        assert_eq!(cs.len(), 10);
        let t = 1.0 / 3f64.sqrt();
        for (e, x) in cs.points.iter().enumerate() {
            let local = (x - (e as f64 + 0.5) / 10.0) / 0.05;
            assert!((local + t).abs() < 1e-12);
        }
        let even = select_asp(&periodic(10, 4)).unwrap();
        assert_close(&even.points, &select_gp(&periodic(10, 4)).points);
    }

    #[test]
    fn asp_open_blends_greville_near_ends() {
        let s = open(9, 3);
        let cs = select_asp(&s).unwrap();
        assert_eq!(cs.len(), 10);
        let h = 1.0 / 9.0;
        let g = select_gp(&s).points;
        // two Greville points kept at each end
        assert_close(&cs.points[..2], &g[..2]);
        assert_close(&cs.points[8..], &g[8..]);
        let sp = surrogate_sp_all(s.knot_vector()).unwrap();
        for x in &cs.points[2..8] {
            assert!(sp.iter().any(|s| (s - x).abs() < 1e-14), "{x} is not a surrogate point");
            // left point of its element
            let local = (x / h).fract();
            assert!((local - (1.0 - 1.0 / 3f64.sqrt()) / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn csp_periodic_cubic() {
        let cs = select_csp(&periodic(10, 3), false).unwrap();
        let mut expect = Vec::new();
        for e in (0..10).step_by(2) {
            let a = e as f64 / 10.0;
            expect.extend(surrogate_sp_all(&KnotVector::open_uniform(1, 3).unwrap()).unwrap().iter().map(|t| a + t / 10.0));
        }
        assert_close(&cs.points, &expect);
        assert!(matches!(select_csp(&periodic(9, 3), false), Err(Error::OddPeriodicElements { .. })));
    }

    #[test]
    fn csp_open_counts_and_symmetry() {
        let odd = select_csp(&open(9, 3), false).unwrap();
        assert_eq!(odd.len(), 10);
        for (a, b) in odd.points.iter().zip(odd.points.iter().rev()) {
            assert!((a + b - 1.0).abs() < 1e-12);
        }
        let even = select_csp(&open(10, 3), false).unwrap();
        assert_eq!(even.len(), 11);
        assert!(*even.points.last().unwrap() > 0.9);
        let asym = even.points.iter().zip(even.points.iter().rev()).any(|(a, b)| (a + b - 1.0).abs() > 1e-6);
        assert!(asym);
    }

    #[test]
    fn csp_symmetric_variant() {
        let cs = select_csp(&open(10, 3), true).unwrap();
        assert_eq!(cs.len(), 12);
        assert_eq!(cs.averaging_groups.len(), 1);
        assert_eq!(cs.averaging_groups[0].len(), 2);
        assert_eq!(cs.equation_count(), 11);
        for (a, b) in cs.points.iter().zip(cs.points.iter().rev()) {
            assert!((a + b - 1.0).abs() < 1e-12);
        }
        let g = &cs.averaging_groups[0];
        assert!((cs.points[g[0]] + cs.points[g[1]] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csp_rejects_even_degree() {
        assert!(matches!(select_csp(&open(8, 4), false), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn tensorize_orders_x_fastest() {
        let a = CollocationSet::plain(vec![0.1, 0.2], Scheme::Gp);
        let b = CollocationSet::plain(vec![0.3, 0.4, 0.5], Scheme::Gp);
        let t = tensorize(&a, &b).unwrap();
        assert_eq!(t.points, vec![[0.1, 0.3], [0.2, 0.3], [0.1, 0.4], [0.2, 0.4], [0.1, 0.5], [0.2, 0.5]]);
        let sym = select_csp(&open(10, 3), true).unwrap();
        assert_eq!(tensorize(&sym, &a), Err(Error::AveragingNotSupported));
    }

    #[test]
    fn tensorized_square_schemes_match_unknowns() {
        let (sx, sy) = (open(7, 3), open(5, 5));
        let t = tensorize(&select_csp(&sx, false).unwrap(), &select_csp(&sy, false).unwrap()).unwrap();
        assert_eq!(t.equation_count(), (sx.dim() - 2) * (sy.dim() - 2));
        let gp = tensorize(&select_gp(&sx), &select_gp(&sy)).unwrap();
        let gx = sx.greville();
        let gy = sy.greville();
        for (k, pt) in gp.points.iter().enumerate() {
            let (i, j) = (k % (sx.dim() - 2), k / (sx.dim() - 2));
            assert_eq!(*pt, [gx[i + 1], gy[j + 1]]);
        }
    }
}
