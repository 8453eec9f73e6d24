use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::boson::{BosonWord, Letter, NormalPolynomial};
use crate::error::{Error, Result};
use crate::exact::to_f64;

/// Dense row-major complex matrix on a truncated Fock space.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: n });
    }
    Ok(())
}

impl FockMatrix {
    pub fn zeros(dim: usize) -> Self {
        FockMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(FockMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(FockMatrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(FockMatrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        FockMatrix { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, other: &Self, s: Complex64) -> Result<Self> {
        self.check_same(other)?;
        Ok(FockMatrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b * s).collect() })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        out.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        });
        Ok(FockMatrix { dim: n, data: out })
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Maximum column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.dim).map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Maximum row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim).map(|i| self.row(i).iter().map(|a| a.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }

    /// Largest entry of `self - self†`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Leading `k x k` block.
    pub fn top_left(&self, k: usize) -> Self {
        let mut m = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    /// Compression of `sum c (a†)^p a^q` onto the first `dim` levels, built
    /// from the exact matrix elements
    /// `<n-q+p| (a†)^p a^q |n> = sqrt(n!/(n-q)!) sqrt((n-q+p)!/(n-q)!)`.
    pub fn from_normal_polynomial(poly: &NormalPolynomial, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut m = Self::zeros(dim);
        for (&(p, q), c) in poly.terms() {
            let c = to_f64(c);
            let (p, q) = (p as usize, q as usize);
            for n in q..dim {
                let target = n - q + p;
                if target >= dim {
                    break;
                }
                let lowered: f64 = ((n - q + 1)..=n).map(|k| (k as f64).sqrt()).product();
                let raised: f64 = ((n - q + 1)..=target).map(|k| (k as f64).sqrt()).product();
                m[(target, n)] += Complex64::new(c * lowered * raised, 0.0);
            }
        }
        Ok(m)
    }

    /// Product of truncated ladder matrices, letter by letter. Unlike
    /// [`FockMatrix::from_normal_polynomial`] this is contaminated near the
    /// truncation edge whenever an `a` precedes an `a†`.
    pub fn from_word(word: &BosonWord, dim: usize) -> Result<Self> {
        let ann = build_annihilation(dim)?;
        let cre = build_creation(dim)?;
        let mut m = Self::identity(dim);
        for l in &word.letters {
            m = m.matmul(if *l == Letter::Ann { &ann } else { &cre })?;
        }
        Ok(m)
    }
}

impl Index<(usize, usize)> for FockMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for FockMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// `a|n> = sqrt(n) |n-1>`
pub fn build_annihilation(dim: usize) -> Result<FockMatrix> {
    check_dim(dim)?;
    let mut m = FockMatrix::zeros(dim);
    for n in 1..dim {
        m[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    Ok(m)
}

pub fn build_creation(dim: usize) -> Result<FockMatrix> {
    Ok(build_annihilation(dim)?.adjoint())
}

pub fn build_number(dim: usize) -> Result<FockMatrix> {
    check_dim(dim)?;
    Ok(FockMatrix::from_diagonal(&(0..dim).map(|n| Complex64::new(n as f64, 0.0)).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::{normal_order, parse};

    #[test]
    fn number_from_ladders() {
        let n = 12;
        let prod = build_creation(n).unwrap().matmul(&build_annihilation(n).unwrap()).unwrap();
        assert!(prod.sub(&build_number(n).unwrap()).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn commutator_truncation_artifact() {
        let n = 10;
        let c = build_annihilation(n).unwrap().commutator(&build_creation(n).unwrap()).unwrap();
        let mut want = FockMatrix::identity(n);
        want[(n - 1, n - 1)] = Complex64::new(1.0 - n as f64, 0.0);
        assert!(c.sub(&want).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn too_small() {
        assert_eq!(build_annihilation(1).unwrap_err(), Error::DimensionTooSmall { min: 2, got: 1 });
    }

    #[test]
    fn normal_polynomial_matrix_matches_products() {
        // normally ordered words have no truncation contamination
        let dim = 9;
        let p = normal_order(&parse("3*ad^2*a + 1/2*a^2 + ad").unwrap());
        let direct = FockMatrix::from_normal_polynomial(&p, dim).unwrap();
        let a = build_annihilation(dim).unwrap();
        let ad = build_creation(dim).unwrap();
        let prod = ad
            .matmul(&ad)
            .unwrap()
            .matmul(&a)
            .unwrap()
            .scale(Complex64::new(3.0, 0.0))
            .add(&a.matmul(&a).unwrap().scale(Complex64::new(0.5, 0.0)))
            .unwrap()
            .add(&ad)
            .unwrap();
        assert!(direct.sub(&prod).unwrap().max_abs() < 1e-12);
    }
}
