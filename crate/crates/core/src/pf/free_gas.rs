use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    build_number, converge, expectation, matrix_exponential, trace_thermal, CoherentVector,
    ThermalTrace, Truncation,
};
use crate::quad::{integrate_semi_infinite, Quadrature};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeGasParams {
    beta_eps: f64,
}

impl FreeGasParams {
    pub fn new(beta_eps: f64) -> Result<Self> {
        if !(beta_eps > 0.0) || !beta_eps.is_finite() {
            return Err(Error::InvalidArgument(format!("beta*eps must be positive and finite, got {beta_eps}")));
        }
        Ok(FreeGasParams { beta_eps })
    }

    pub fn beta_eps(&self) -> f64 {
        self.beta_eps
    }

    /// `x = -beta eps`
    pub fn x(&self) -> f64 {
        -self.beta_eps
    }
}

/// `(1 - exp(-beta eps))^-1`
pub fn free_gas_z_closed(p: FreeGasParams) -> f64 {
    1.0 / -(-p.beta_eps).exp_m1()
}

/// `exp(|z|^2 (e^x - 1))`
pub fn free_gas_pfi(x: f64, z: Complex64) -> f64 {
    (z.norm_sqr() * x.exp_m1()).exp()
}

/// `Z = int_0^inf dy exp(y (e^x - 1))`, the angular integral already done.
pub fn free_gas_z_quadrature(beta_eps: f64, tol: f64) -> Result<Quadrature> {
    let rate = -(-beta_eps).exp_m1();
    if !(rate > 0.0) {
        return Err(Error::DivergentIntegrand(format!(
            "exp(y (e^x - 1)) does not decay for beta*eps = {beta_eps}"
        )));
    }
    integrate_semi_infinite(|y| (-rate * y).exp(), rate, tol)
}

/// Swapping the y-integral with the Bell-polynomial sum is invalid: each
/// `int_0^inf B_n(y) dy` diverges. Always an error.
pub fn free_gas_z_termwise(_p: FreeGasParams, _order: usize) -> Result<f64> {
    Err(Error::TermwiseDivergence)
}

pub fn free_gas_z_fock(p: FreeGasParams, trunc: Truncation) -> Result<ThermalTrace> {
    trace_thermal(trunc, |n| matrix_exponential(&build_number(n)?, Complex64::new(p.x(), 0.0)))
}

/// `<z| exp(x a†a) |z>` in a truncated Fock space.
pub fn free_gas_pfi_fock(x: f64, z: Complex64, trunc: Truncation) -> Result<Complex64> {
    Ok(converge(trunc, |n| {
        let m = matrix_exponential(&build_number(n)?, Complex64::new(x, 0.0))?;
        expectation(&CoherentVector::new(z, n), &m)
    })?
    .value)
}
