use num_complex::Complex64;

use super::matrix::FockMatrix;
use crate::error::{Error, Result};

/// Normalized coherent state `|z>` cut to its first `dim` components,
/// `c_n = exp(-|z|^2/2) z^n / sqrt(n!)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentVector {
    z: Complex64,
    components: Vec<Complex64>,
}

impl CoherentVector {
    pub fn new(z: Complex64, dim: usize) -> Self {
        let mut components = Vec::with_capacity(dim);
        let mut c = Complex64::new((-0.5 * z.norm_sqr()).exp(), 0.0);
        for n in 0..dim {
            if n > 0 {
                c = c * z / (n as f64).sqrt();
            }
            components.push(c);
        }
        CoherentVector { z, components }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Probability weight lost to the truncation, `1 - ||v||^2`.
    pub fn tail_bound(&self) -> f64 {
        (1.0 - self.norm_sqr()).max(0.0)
    }
}

/// `<v| M |v>`
pub fn expectation(v: &CoherentVector, m: &FockMatrix) -> Result<Complex64> {
    if v.dim() != m.dim() {
        return Err(Error::DimensionMismatch { left: v.dim(), right: m.dim() });
    }
    let mv = m.apply(&v.components)?;
    Ok(v.components.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
}
