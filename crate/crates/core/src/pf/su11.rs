use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::egf::{v_to_w, BivariateEgf, EgfSeries};
use crate::error::{Error, Result};
use crate::exact::{rational, Coefficient, ExactRational};
use crate::fock::{
    build_annihilation, build_creation, build_number, converge, expectation, matrix_exponential,
    trace_thermal, CoherentVector, FockMatrix, ThermalTrace, Truncation,
};
use crate::poly::YPolynomial;
use crate::quad::{integrate_semi_infinite, Quadrature};

/// Superfluid parameters: complex pairing `c1`, real `c2`, and `x = -beta eps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su11Params {
    pub c1: Complex64,
    pub c2: f64,
    pub x: f64,
}

impl Su11Params {
    pub fn new(c1: Complex64, c2: f64, x: f64) -> Self {
        Su11Params { c1, c2, x }
    }

    pub fn real(c1: f64, c2: f64, x: f64) -> Self {
        Self::new(Complex64::new(c1, 0.0), c2, x)
    }

    /// `x1 = x c1`
    pub fn x1(&self) -> Complex64 {
        self.c1 * self.x
    }

    /// `x2 = x c2`
    pub fn x2(&self) -> f64 {
        self.c2 * self.x
    }

    /// `delta^2 = x^2 (c2^2 - |c1|^2)`, real for real `x` and `c2`.
    pub fn delta_sqr(&self) -> f64 {
        self.x * self.x * (self.c2 * self.c2 - self.c1.norm_sqr())
    }

    /// `x1 K- + conj(x1) K+ + 2 x2 K0` in the 2x2 representation
    /// `K+ = [[0,1],[0,0]]`, `K- = [[0,0],[-1,0]]`, `K0 = diag(1/2,-1/2)`.
    pub fn generator(&self) -> FockMatrix {
        let x1 = self.x1();
        let x2 = Complex64::new(self.x2(), 0.0);
        FockMatrix::from_rows(&[vec![x2, x1.conj()], vec![-x1, -x2]]).expect("square")
    }
}

/// `(cosh d, sinh d / d)` as functions of `d^2`, so no square-root branch
/// is ever chosen and negative `d^2` falls into `(cos, sin/.)` smoothly.
fn cosh_sinhc(d2: f64) -> (f64, f64) {
    if d2.abs() < 1e-6 {
        let c = 1.0 + d2 / 2.0 + d2 * d2 / 24.0 + d2 * d2 * d2 / 720.0;
        let s = 1.0 + d2 / 6.0 + d2 * d2 / 120.0 + d2 * d2 * d2 / 5040.0;
        (c, s)
    } else if d2 > 0.0 {
        let d = d2.sqrt();
        (d.cosh(), d.sinh() / d)
    } else {
        let d = (-d2).sqrt();
        (d.cos(), d.sin() / d)
    }
}

/// Gauss factors of `exp(x1 K- + conj(x1) K+ + 2 x2 K0) = e^{ybar1 K+} e^{2 y2 K0} e^{y1 K-}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su11Disentanglement {
    /// `x sqrt(c2^2 - |c1|^2)`; imaginary when `|c1| > c2`.
    pub delta: Complex64,
    pub mu: Complex64,
    pub y1: Complex64,
    /// Coefficient of `K+`; equals `conj(y1)` for real `x`.
    pub y1_bar: Complex64,
    pub y2: Complex64,
    /// `||product - exp(generator)||_inf`, the exponential taken numerically.
    pub residual: f64,
}

impl Su11Disentanglement {
    /// The three-factor product evaluated in the 2x2 representation.
    pub fn product(&self) -> FockMatrix {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let upper = FockMatrix::from_rows(&[vec![one, self.y1_bar], vec![zero, one]]).expect("square");
        let middle = FockMatrix::from_diagonal(&[self.y2.exp(), (-self.y2).exp()]);
        let lower = FockMatrix::from_rows(&[vec![one, zero], vec![-self.y1, one]]).expect("square");
        upper.matmul(&middle).and_then(|m| m.matmul(&lower)).expect("2x2")
    }
}

const RECONSTRUCTION_TOL: f64 = 1e-12;

pub fn su11_disentangle(p: Su11Params) -> Result<Su11Disentanglement> {
    let d2 = p.delta_sqr();
    let (cosh, sinhc) = cosh_sinhc(d2);
    let x1 = p.x1();
    let x2 = p.x2();
    let m11 = Complex64::new(cosh + sinhc * x2, 0.0);
    let m12 = x1.conj() * sinhc;
    let m21 = -x1 * sinhc;
    let m22 = Complex64::new(cosh - sinhc * x2, 0.0);
    if m22.norm() < 1e-12 {
        return Err(Error::SingularDecomposition { mu_abs: m22.norm() });
    }
    let delta = if d2 >= 0.0 { Complex64::new(d2.sqrt(), 0.0) } else { Complex64::new(0.0, (-d2).sqrt()) };
    let mut out = Su11Disentanglement {
        delta,
        mu: m22,
        y1: -m21 / m22,
        y1_bar: m12 / m22,
        y2: -m22.ln(),
        residual: 0.0,
    };
    let closed = FockMatrix::from_rows(&[vec![m11, m12], vec![m21, m22]]).expect("square");
    let numeric = matrix_exponential(&p.generator(), Complex64::new(1.0, 0.0))?;
    let scale = numeric.norm_inf().max(1.0);
    out.residual = out.product().sub(&numeric)?.norm_inf();
    let closed_gap = closed.sub(&numeric)?.norm_inf();
    let tolerance = RECONSTRUCTION_TOL * scale;
    if out.residual > tolerance || closed_gap > tolerance {
        return Err(Error::ReconstructionFailed { residual: out.residual.max(closed_gap), tolerance });
    }
    Ok(out)
}

/// `exp(ybar1 conj(z)^2/2) exp(|z|^2 (e^{y2} - 1)) exp(y1 z^2/2) exp(y2/2)`
pub fn su11_pfi(p: Su11Params, z: Complex64) -> Result<Complex64> {
    let d = su11_disentangle(p)?;
    let zc = z.conj();
    Ok((0.5 * d.y1_bar * zc * zc + z.norm_sqr() * (d.y2.exp() - 1.0) + 0.5 * d.y1 * z * z + 0.5 * d.y2).exp())
}

/// Real-argument form `sqrt(1/mu) exp(y (y1 + 1/mu - 1))` with `y = z^2`.
/// Requires real `c1`.
pub fn su11_pfi_real(p: Su11Params, y: f64) -> Result<f64> {
    if p.c1.im != 0.0 {
        return Err(Error::InvalidArgument("real form needs real c1".into()));
    }
    let d = su11_disentangle(p)?;
    let mu = d.mu.re;
    if mu <= 0.0 {
        return Err(Error::InvalidArgument(format!("real form needs mu > 0, got {mu}")));
    }
    let inv_mu = 1.0 / mu;
    Ok(inv_mu.sqrt() * (y * (d.y1.re + inv_mu - 1.0)).exp())
}

/// `H/eps = c1/2 a^2 + conj(c1)/2 a†^2 + c2 (a†a + 1/2)` on `dim` levels.
pub fn su11_hamiltonian_matrix(c1: Complex64, c2: f64, dim: usize) -> Result<FockMatrix> {
    let a = build_annihilation(dim)?;
    let ad = build_creation(dim)?;
    let a2 = a.matmul(&a)?;
    let ad2 = ad.matmul(&ad)?;
    let number = build_number(dim)?;
    let h = a2
        .scale(0.5 * c1)
        .add(&ad2.scale(0.5 * c1.conj()))?
        .add(&number.scale(Complex64::new(c2, 0.0)))?
        .add(&FockMatrix::identity(dim).scale(Complex64::new(0.5 * c2, 0.0)))?;
    Ok(h)
}

const HERMITICITY_TOL: f64 = 1e-12;

fn thermal_matrix(p: Su11Params, dim: usize) -> Result<FockMatrix> {
    let h = su11_hamiltonian_matrix(p.c1, p.c2, dim)?;
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::InvalidArgument(format!("Hamiltonian not Hermitian: defect {defect:e}")));
    }
    matrix_exponential(&h, Complex64::new(p.x, 0.0))
}

/// `<z| exp(x H/eps) |z>` in a truncated Fock space.
pub fn su11_pfi_fock(p: Su11Params, z: Complex64, trunc: Truncation) -> Result<Complex64> {
    Ok(converge(trunc, |n| expectation(&CoherentVector::new(z, n), &thermal_matrix(p, n)?))?.value)
}

pub fn su11_z_fock(p: Su11Params, trunc: Truncation) -> Result<ThermalTrace> {
    trace_thermal(trunc, |n| thermal_matrix(p, n))
}

/// `exp(-t) I0(t)` from the periodic trapezoid rule on
/// `(1/2pi) int_0^{2pi} exp(t (cos th - 1)) dth`, which converges geometrically.
fn scaled_bessel_i0(t: f64) -> f64 {
    let mut points = 16 + 8 * (t.sqrt().ceil() as usize);
    let average = |m: usize| -> f64 {
        (0..m)
            .map(|j| (t * ((std::f64::consts::TAU * j as f64 / m as f64).cos() - 1.0)).exp())
            .sum::<f64>()
            / m as f64
    };
    let mut prev = average(points);
    loop {
        points *= 2;
        let next = average(points);
        if (next - prev).abs() <= 1e-15 * next || points > 1 << 20 {
            return next;
        }
        prev = next;
    }
}

/// `Z = (1/pi) int F d^2z`. The angle integral turns `exp(Re(y1 z^2))` into
/// `I0(|y1| r^2)`, leaving `exp(y2/2) int_0^inf dy exp(-(1 - 1/mu) y) I0(|y1| y)`.
pub fn su11_z_quadrature(p: Su11Params, tol: f64) -> Result<Quadrature> {
    let d = su11_disentangle(p)?;
    if d.mu.im.abs() > 1e-12 * d.mu.norm() || d.mu.re <= 0.0 {
        return Err(Error::DivergentIntegrand(format!("mu = {} is not positive", d.mu)));
    }
    let radial = 1.0 - 1.0 / d.mu.re;
    let pairing = d.y1.norm();
    let decay = radial - pairing;
    if !(decay > 0.0) {
        return Err(Error::DivergentIntegrand(format!(
            "1/mu - 1 + |y1| = {} is not negative",
            -decay
        )));
    }
    let prefactor = (0.5 * d.y2).exp().re;
    let q = integrate_semi_infinite(
        |y| prefactor * (-decay * y).exp() * scaled_bessel_i0(pairing * y),
        decay,
        tol,
    )?;
    Ok(q)
}

/// Vertex multipliers `V_1..V_M` with `F = exp(sum V_n x^n/n!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PfiVnSeries<C = YPolynomial> {
    pub order: usize,
    pub vn: Vec<C>,
}

impl<C: Coefficient> PfiVnSeries<C> {
    pub fn new(vn: Vec<C>) -> Self {
        PfiVnSeries { order: vn.len(), vn }
    }

    /// `V_n`, 1-based.
    pub fn v(&self, n: usize) -> &C {
        &self.vn[n - 1]
    }

    /// `W_0..W_M` with `F = sum W_n x^n/n!`.
    pub fn wn(&self) -> EgfSeries<C> {
        v_to_w(&self.vn)
    }
}

impl PfiVnSeries<YPolynomial> {
    /// The `y`-independent parts of `V_n` (the zero-point contribution).
    pub fn constant_part(&self) -> Vec<ExactRational> {
        self.vn.iter().map(|v| v.coeff(0)).collect()
    }
}

/// Exact series of `mu(x) = cosh d - x c2 sinh d / d` and `x sinh d / d`,
/// `d^2 = x^2 D`, in egf convention: `mu_{2k} = D^k`, `mu_{2k+1} = -c2 D^k`,
/// and `(x sinh d / d)_{2k+1} = D^k`.
fn mu_and_x_sinhc(c1: &ExactRational, c2: &ExactRational, order: usize) -> (EgfSeries, EgfSeries) {
    let discriminant = c2 * c2 - c1 * c1;
    let power = |k: usize| -> ExactRational { num_traits::pow(discriminant.clone(), k) };
    let mu = EgfSeries::from_fn(order, |n| if n % 2 == 0 { power(n / 2) } else { -(c2 * power(n / 2)) });
    let xs = EgfSeries::from_fn(order, |n| if n % 2 == 1 { power(n / 2) } else { BigRational::zero() });
    (mu, xs)
}

/// `log F = -1/2 log mu + y (y1 + 1/mu - 1)` expanded exactly in `x`, for real
/// rational `c1`, with `y = z^2`.
pub fn su11_vn_series(c1: &ExactRational, c2: &ExactRational, order: usize) -> PfiVnSeries {
    let (mu, x_sinhc) = mu_and_x_sinhc(c1, c2, order);
    let inv_mu = mu.reciprocal().expect("mu(0) = 1");
    let y1 = x_sinhc.mul(&inv_mu).expect("same order").scale(c1);
    let constant = mu.log().expect("mu(0) = 1").scale(&rational(-1, 2));
    let linear = y1.add(&inv_mu).and_then(|s| s.sub(&EgfSeries::one(order))).expect("same order");
    let vn = (1..=order)
        .map(|n| YPolynomial::new(vec![constant.coeff(n).clone(), linear.coeff(n).clone()]))
        .collect();
    PfiVnSeries::new(vn)
}

/// `sqrt(1/mu) exp(y (y1 + 1/mu - 1))` as an exact bivariate series, built
/// with square root and exponential instead of the logarithm.
pub fn su11_pfi_series(c1: &ExactRational, c2: &ExactRational, order: usize) -> BivariateEgf {
    let (mu, x_sinhc) = mu_and_x_sinhc(c1, c2, order);
    let inv_mu = mu.reciprocal().expect("mu(0) = 1");
    let root = inv_mu.sqrt().expect("unit constant term");
    let y1 = x_sinhc.mul(&inv_mu).expect("same order").scale(c1);
    let g = y1.add(&inv_mu).and_then(|s| s.sub(&EgfSeries::one(order))).expect("same order");
    let exponent = g.to_bivariate().scale_by(&YPolynomial::y());
    exponent.exp().expect("g(0) = 0").mul(&root.to_bivariate()).expect("same order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_at_x_zero() {
        let d = su11_disentangle(Su11Params::real(2.0, 4.0, 0.0)).unwrap();
        assert_eq!(d.delta, c(0.0));
        assert!((d.mu - 1.0).norm() < 1e-15);
        assert!(d.y1.norm() < 1e-15 && d.y2.norm() < 1e-15);
    }

    #[test]
    fn free_gas_reduction() {
        let d = su11_disentangle(Su11Params::real(0.0, 1.0, -1.0)).unwrap();
        let e = std::f64::consts::E;
        assert!((d.mu - e).norm() < 1e-14);
        assert!((d.y2 - (-1.0)).norm() < 1e-14);
        assert!(d.y1.norm() < 1e-15);
        assert!((d.y2.exp() - (-1.0f64).exp()).norm() < 1e-15);
    }

    #[test]
    fn reconstruction_against_numeric_exponential() {
        let d = su11_disentangle(Su11Params::real(2.0, 4.0, -0.1)).unwrap();
        assert!(d.residual < 1e-12, "{}", d.residual);
        assert!((d.y2.exp() - 1.0 / d.mu).norm() < 1e-12);
    }

    #[test]
    fn trigonometric_regime_and_complex_c1() {
        let p = Su11Params::new(Complex64::new(3.0, 2.0), 1.0, -0.2);
        assert!(p.delta_sqr() < 0.0);
        let d = su11_disentangle(p).unwrap();
        assert!(d.residual < 1e-12);
        assert!(d.delta.re == 0.0 && d.delta.im > 0.0);
        assert!((d.y1_bar - d.y1.conj()).norm() < 1e-14);
    }

    #[test]
    fn singular_mu_detected() {
        // c1 = 0: mu = e^{-x c2}, never zero; pick the trig regime where cos d - x c2 sin d/d = 0
        // with c2 = 0, |c1| = 1: mu = cos(x) vanishes at x = pi/2
        let p = Su11Params::real(1.0, 0.0, std::f64::consts::FRAC_PI_2);
        assert!(matches!(su11_disentangle(p), Err(Error::SingularDecomposition { .. })));
    }

    #[test]
    fn pfi_at_origin_is_zero_point_factor() {
        let p = Su11Params::real(2.0, 4.0, -0.1);
        let d = su11_disentangle(p).unwrap();
        let f = su11_pfi(p, c(0.0)).unwrap();
        assert!((f - d.mu.powf(-0.5)).norm() < 1e-14);
    }

    #[test]
    fn complex_and_real_forms_agree() {
        for &(c1, c2, x) in &[(2.0, 4.0, -0.1), (1.0, 3.0, -0.2), (0.0, 1.0, -0.05)] {
            let p = Su11Params::real(c1, c2, x);
            for &z in &[0.0, 0.5, 1.0, -0.7] {
                let a = su11_pfi(p, c(z)).unwrap();
                let b = su11_pfi_real(p, z * z).unwrap();
                assert!((a.re - b).abs() < 1e-12 * b.max(1.0) && a.im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn vn_table_c1_2_c2_4() {
        let s = su11_vn_series(&integer(2), &integer(4), 4);
        let want = [[2, 6], [2, 36], [16, 288], [144, 3024]];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(*s.v(n + 1), YPolynomial::from_integers(w), "V_{}", n + 1);
        }
    }

    #[test]
    fn free_gas_limit_of_series() {
        let s = su11_vn_series(&integer(0), &integer(1), 6);
        assert_eq!(*s.v(1), YPolynomial::new(vec![rational(1, 2), integer(1)]));
        for n in 2..=6 {
            assert_eq!(*s.v(n), YPolynomial::y());
        }
        assert_eq!(s.constant_part()[0], rational(1, 2));
    }

    #[test]
    fn series_exp_matches_sqrt_route() {
        for (c1, c2) in [(2, 4), (1, 3), (3, 5), (-1, 2)] {
            let s = su11_vn_series(&integer(c1), &integer(c2), 8);
            assert_eq!(s.wn(), su11_pfi_series(&integer(c1), &integer(c2), 8));
        }
    }

    #[test]
    fn series_matches_numeric_pfi_at_small_x() {
        let s = su11_vn_series(&rational(1, 1), &rational(3, 1), 8);
        let (x, y) = (-0.01f64, 0.36);
        let log_f: f64 = (1..=8)
            .map(|n| s.v(n).eval_f64(y) * x.powi(n as i32) / (1..=n).map(|k| k as f64).product::<f64>())
            .sum();
        let direct = su11_pfi_real(Su11Params::real(1.0, 3.0, x), y).unwrap();
        assert!((log_f.exp() - direct).abs() < 1e-14);
    }

    #[test]
    fn bessel_scaled() {
        assert!((scaled_bessel_i0(0.0) - 1.0).abs() < 1e-16);
        // I0(1) = 1.2660658777520082
        assert!((scaled_bessel_i0(1.0) * 1f64.exp() - 1.2660658777520082).abs() < 1e-15);
        // large-argument asymptote e^{-t} I0(t) ~ 1/sqrt(2 pi t) (1 + 1/(8t))
        let t = 400.0;
        let approx = (1.0 + 1.0 / (8.0 * t) + 9.0 / (128.0 * t * t)) / (std::f64::consts::TAU * t).sqrt();
        assert!((scaled_bessel_i0(t) - approx).abs() < 1e-9);
    }

    #[test]
    fn quadrature_free_limit() {
        let q = su11_z_quadrature(Su11Params::real(0.0, 1.0, -1.0), 1e-9).unwrap();
        let want = (-0.5f64).exp() / (1.0 - (-1.0f64).exp());
        assert!((q.value - want).abs() < 1e-6);
    }

    #[test]
    fn quadrature_rejects_growth() {
        assert!(matches!(
            su11_z_quadrature(Su11Params::real(2.0, 4.0, 0.1), 1e-8),
            Err(Error::DivergentIntegrand(_))
        ));
    }

    #[test]
    fn hamiltonian_hermitian() {
        let h = su11_hamiltonian_matrix(Complex64::new(1.5, -0.5), 3.0, 30).unwrap();
        assert!(h.hermiticity_defect() < 1e-12);
    }
}
