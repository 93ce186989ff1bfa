use crate::error::{Error, Result};

use super::KnotVector;

/// Values and derivatives of the basis functions that do not vanish at a point.
///
/// `values[k][a]` is the `k`-th derivative of basis function `first_index + a`
/// (taken modulo `modulus` for periodic spaces).
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSpan {
    pub first_index: usize,
    pub values: Vec<Vec<f64>>,
    pub(crate) modulus: Option<usize>,
}

impl BasisSpan {
    /// Number of local functions (the row width of `values`).
    pub fn len(&self) -> usize {
        self.values[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.values[0].is_empty()
    }

    /// Global index of local function `a`.
    pub fn index(&self, a: usize) -> usize {
        let i = self.first_index + a;
        match self.modulus {
            Some(m) => i % m,
            None => i,
        }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }
}

/// Basis functions of `kv` and their derivatives up to order `r` at `x`.
pub fn basis_span(kv: &KnotVector, x: f64, r: usize) -> Result<BasisSpan> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain(x));
    }
    let p = kv.degree();
    if r > p {
        return Err(Error::DerivativeOrder { order: r, degree: p });
    }
    let span = kv.find_span(x);
    Ok(BasisSpan {
        first_index: span - p,
        values: ders_basis(kv.knots(), p, span, x, r),
        modulus: None,
    })
}

/// Cox-de Boor values and knot-difference derivatives of the `p + 1`
/// functions supported on knot span `span`.
///
/// Rows above order `p` are identically zero, so callers may request
/// second derivatives of a linear basis.
pub(crate) fn ders_basis(knots: &[f64], p: usize, span: usize, x: f64, r: usize) -> Vec<Vec<f64>> {
    let mut ndu = vec![vec![0.0; p + 1]; p + 1];
    let mut left = vec![0.0; p + 1];
    let mut right = vec![0.0; p + 1];
    ndu[0][0] = 1.0;
    for j in 1..=p {
        left[j] = x - knots[span + 1 - j];
        right[j] = knots[span + j] - x;
        let mut saved = 0.0;
        for k in 0..j {
            // lower triangle holds knot differences
            ndu[j][k] = right[k + 1] + left[j - k];
            let temp = ndu[k][j - 1] / ndu[j][k];
            ndu[k][j] = saved + right[k + 1] * temp;
            saved = left[j - k] * temp;
        }
        ndu[j][j] = saved;
    }

    let mut ders = vec![vec![0.0; p + 1]; r + 1];
    for (j, d) in ders[0].iter_mut().enumerate() {
        *d = ndu[j][p];
    }
    let top = r.min(p);
    let mut a = vec![vec![0.0; p + 1]; 2];
    for s in 0..=p {
        let (mut s1, mut s2) = (0, 1);
        a[0][0] = 1.0;
        for k in 1..=top {
            let mut d = 0.0;
            let rk = s as isize - k as isize;
            let pk = p - k;
            if rk >= 0 {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk as usize];
                d = a[s2][0] * ndu[rk as usize][pk];
            }
            let j1 = if rk >= -1 { 1 } else { (-rk) as usize };
            let j2 = if s as isize - 1 <= pk as isize { k - 1 } else { p - s };
            for j in j1..=j2 {
                let idx = (rk + j as isize) as usize;
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][idx];
                d += a[s2][j] * ndu[idx][pk];
            }
            if s <= pk {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][s];
                d += a[s2][k] * ndu[s][pk];
            }
            ders[k][s] = d;
            std::mem::swap(&mut s1, &mut s2);
        }
    }
    let mut factor = p as f64;
    for k in 1..=top {
        for v in ders[k].iter_mut() {
            *v *= factor;
        }
        factor *= (p - k) as f64;
    }
    ders
}
