use crate::error::{Error, Result};

/// Open knot vector on `[0, 1]` with simple interior knots.
///
/// The first and last knots are repeated `degree + 1` times, so the basis is
/// interpolatory at both ends and globally `C^{p-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    degree: usize,
    knots: Vec<f64>,
}

impl KnotVector {
    pub fn new(degree: usize, knots: Vec<f64>) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidKnots("degree must be at least 1".into()));
        }
        let len = knots.len();
        if len < 2 * (degree + 1) {
            return Err(Error::InvalidKnots(format!(
                "{len} knots cannot hold a degree {degree} basis"
            )));
        }
        if knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::InvalidKnots("non-finite knot".into()));
        }
        if knots.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidKnots("knots must be nondecreasing".into()));
        }
        let head = &knots[..=degree];
        let tail = &knots[len - degree - 1..];
        if head.iter().any(|&k| k != 0.0) || tail.iter().any(|&k| k != 1.0) {
            return Err(Error::InvalidKnots(format!(
                "end knots 0 and 1 must each have multiplicity {}",
                degree + 1
            )));
        }
        let interior = &knots[degree..len - degree];
        if interior.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidKnots(
                "interior knots must be simple and inside (0, 1)".into(),
            ));
        }
        Ok(Self { degree, knots })
    }

    /// Open knot vector with `n_el` equal elements on `[0, 1]`.
    pub fn open_uniform(n_el: usize, degree: usize) -> Result<Self> {
        if n_el < 1 {
            return Err(Error::InvalidKnots("at least one element is required".into()));
        }
        let breaks: Vec<f64> = (0..=n_el).map(|i| i as f64 / n_el as f64).collect();
        Self::from_breakpoints(degree, &breaks)
    }

    /// Open knot vector whose distinct knots are `breaks` (must start at 0 and end at 1).
    pub fn from_breakpoints(degree: usize, breaks: &[f64]) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidKnots("degree must be at least 1".into()));
        }
        if breaks.len() < 2 {
            return Err(Error::InvalidKnots("at least one element is required".into()));
        }
        let mut knots = Vec::with_capacity(breaks.len() + 2 * degree);
        knots.extend(std::iter::repeat_n(0.0, degree));
        knots.extend_from_slice(breaks);
        knots.extend(std::iter::repeat_n(1.0, degree));
        Self::new(degree, knots)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Number of basis functions `n = len - p - 1`.
    pub fn n_basis(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    pub fn n_elements(&self) -> usize {
        self.knots.len() - 2 * self.degree - 1
    }

    /// Distinct knots `0 = b_0 < b_1 < ... < b_{n_el} = 1`.
    pub fn breakpoints(&self) -> &[f64] {
        &self.knots[self.degree..self.knots.len() - self.degree]
    }

    pub fn elements(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.breakpoints().windows(2).map(|w| (w[0], w[1]))
    }

    /// Largest element length.
    pub fn meshsize(&self) -> f64 {
        self.elements().map(|(a, b)| b - a).fold(0.0, f64::max)
    }

    /// Element containing `x`, right-continuous except at `x = 1`.
    pub fn element_of(&self, x: f64) -> usize {
        let breaks = self.breakpoints();
        let n_el = breaks.len() - 1;
        if x >= breaks[n_el] {
            return n_el - 1;
        }
        // first breakpoint strictly greater than x, minus one
        let idx = breaks.partition_point(|&b| b <= x);
        idx.saturating_sub(1).min(n_el - 1)
    }

    /// Knot span index `s` with `knots[s] <= x < knots[s + 1]` and `p <= s < n`.
    pub fn find_span(&self, x: f64) -> usize {
        self.element_of(x) + self.degree
    }

    /// Greville abscissae `(ξ_{i+1} + ... + ξ_{i+p}) / p`, one per basis function.
    pub fn greville(&self) -> Vec<f64> {
        greville_from(&self.knots, self.degree, self.n_basis())
    }
}

pub(crate) fn greville_from(knots: &[f64], p: usize, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| knots[i + 1..=i + p].iter().sum::<f64>() / p as f64)
        .collect()
}
