//! Adaptive Gauss-Kronrod quadrature on finite intervals, plus a
//! semi-infinite variant for integrands with a known exponential envelope.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_INTERVALS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Piece { a, b, value: kronrod * half, error: ((kronrod - gauss) * half).abs() }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol` by bisecting the
/// piece with the largest error estimate.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    let mut heap = BinaryHeap::new();
    let first = gk15(&f, a, b);
    let mut error = first.error;
    heap.push(first);
    while error > tol {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailed { tolerance: tol, estimate: error });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Quadrature { value, error, intervals: heap.len() })
}

/// Integrates over `[0, inf)` assuming `f(y) <= f(Y) exp(-decay (y - Y))` for
/// `y >= Y` once `Y` is past the bulk. The cut point is pushed out until the
/// envelope tail `f(Y)/decay` falls below a small fraction of `tol`, and that
/// tail is added to the finite part.
pub fn integrate_semi_infinite(f: impl Fn(f64) -> f64, decay: f64, tol: f64) -> Result<Quadrature> {
    if !(decay > 0.0) || !decay.is_finite() {
        return Err(Error::DivergentIntegrand(format!("envelope decay rate {decay} is not positive")));
    }
    let mut cut = 1.0 / decay;
    let mut tail = f(cut).abs() / decay;
    let mut steps = 0;
    while tail > 1e-3 * tol {
        cut *= 2.0;
        tail = f(cut).abs() / decay;
        steps += 1;
        if steps > 60 || !tail.is_finite() {
            return Err(Error::DivergentIntegrand("integrand does not decay".into()));
        }
    }
    // split at the envelope scale so the bulk gets its own pieces
    let knee = (1.0 / decay).min(cut);
    let head = integrate(&f, 0.0, knee, 0.25 * tol)?;
    let body = integrate(&f, knee, cut, 0.5 * tol)?;
    Ok(Quadrature {
        value: head.value + body.value + tail,
        error: head.error + body.error + tail,
        intervals: head.intervals + body.intervals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let q = integrate(|x| x.powi(5) - 3.0 * x * x + 1.0, -1.0, 2.0, 1e-12).unwrap();
        let exact = (64.0 / 6.0 - 8.0 + 2.0) - (1.0 / 6.0 + 1.0 - 1.0);
        assert!((q.value - exact).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_needs_subdivision() {
        let q = integrate(|x| (20.0 * x).sin(), 0.0, 3.0, 1e-10).unwrap();
        let exact = (1.0 - (60.0f64).cos()) / 20.0;
        assert!((q.value - exact).abs() < 1e-10);
        assert!(q.intervals > 1);
    }

    #[test]
    fn exponential_tail() {
        let k = 0.3;
        let q = integrate_semi_infinite(|y| (-k * y).exp(), k, 1e-10).unwrap();
        assert!((q.value - 1.0 / k).abs() < 1e-10);
    }

    #[test]
    fn rejects_growth() {
        assert!(integrate_semi_infinite(|y| y.exp(), 0.0, 1e-8).is_err());
        assert!(integrate_semi_infinite(|y| y.exp(), 1.0, 1e-8).is_err());
    }
}
