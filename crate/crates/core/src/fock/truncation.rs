use num_complex::Complex64;

use super::matrix::FockMatrix;
use crate::error::{Error, Result};

/// Truncation schedule: start at `initial`, double up to `max`, accept when
/// two successive dimensions agree to `rel_tol * max(1, |value|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    pub initial: usize,
    pub max: usize,
    pub rel_tol: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { initial: 100, max: 800, rel_tol: 1e-8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Converged {
    pub value: Complex64,
    /// Dimension at which `value` was computed.
    pub dim: usize,
    /// Change from the previous dimension.
    pub change: f64,
}

/// Evaluates `f` at growing dimensions until consecutive results agree.
pub fn converge(trunc: Truncation, mut f: impl FnMut(usize) -> Result<Complex64>) -> Result<Converged> {
    let mut dim = trunc.initial;
    let mut prev = f(dim)?;
    loop {
        let next_dim = dim * 2;
        if next_dim > trunc.max {
            return Err(Error::NonConvergence { from: dim / 2, to: dim, change: f64::NAN, tolerance: trunc.rel_tol });
        }
        let next = f(next_dim)?;
        let change = (next - prev).norm();
        let tolerance = trunc.rel_tol * next.norm().max(1.0);
        if change <= tolerance {
            return Ok(Converged { value: next, dim: next_dim, change });
        }
        if next_dim * 2 > trunc.max {
            return Err(Error::NonConvergence { from: dim, to: next_dim, change, tolerance });
        }
        dim = next_dim;
        prev = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalTrace {
    pub value: f64,
    pub imag_residue: f64,
    pub dim: usize,
    pub change: f64,
}

/// Real part of `Tr M_N` where `build(N)` yields the truncated `exp(-beta H)`.
pub fn trace_thermal(trunc: Truncation, mut build: impl FnMut(usize) -> Result<FockMatrix>) -> Result<ThermalTrace> {
    let c = converge(trunc, |n| Ok(build(n)?.trace()))?;
    Ok(ThermalTrace { value: c.value.re, imag_residue: c.value.im, dim: c.dim, change: c.change })
}
