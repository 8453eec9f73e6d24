//! `exp(s M)` by scaling and squaring around the degree-13 Padé approximant
//! (Higham 2005). With `||A||_1 <= 5.37` the approximant's backward error is
//! below double-precision unit roundoff.

use num_complex::Complex64;

use super::matrix::FockMatrix;
use crate::error::{Error, Result};

const THETA_13: f64 = 5.371920351148152;

const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `sum_i c_i M_i + c0 I` for the Padé polynomial pieces.
fn combine(terms: &[(&FockMatrix, f64)], identity_coeff: f64) -> Result<FockMatrix> {
    let n = terms[0].0.dim();
    let mut acc = FockMatrix::identity(n).scale(re(identity_coeff));
    for (m, c) in terms {
        acc = acc.add_scaled(m, re(*c))?;
    }
    Ok(acc)
}

pub fn matrix_exponential(m: &FockMatrix, scale: Complex64) -> Result<FockMatrix> {
    if !m.is_finite() || !scale.re.is_finite() || !scale.im.is_finite() {
        return Err(Error::InvalidArgument("non-finite matrix entry".into()));
    }
    let a = m.scale(scale);
    let norm = a.norm_one();
    let squarings = if norm > THETA_13 { (norm / THETA_13).log2().ceil() as u32 } else { 0 };
    let a = a.scale(re(0.5f64.powi(squarings as i32)));

    let b = &PADE_13;
    let a2 = a.matmul(&a)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;

    let u_inner = combine(&[(&a6, b[13]), (&a4, b[11]), (&a2, b[9])], 0.0)?;
    let u_outer = combine(&[(&a6, b[7]), (&a4, b[5]), (&a2, b[3])], b[1])?;
    let u = a.matmul(&a6.matmul(&u_inner)?.add(&u_outer)?)?;

    let v_inner = combine(&[(&a6, b[12]), (&a4, b[10]), (&a2, b[8])], 0.0)?;
    let v_outer = combine(&[(&a6, b[6]), (&a4, b[4]), (&a2, b[2])], b[0])?;
    let v = a6.matmul(&v_inner)?.add(&v_outer)?;

    let mut r = solve(&v.sub(&u)?, &v.add(&u)?)?;
    for _ in 0..squarings {
        r = r.matmul(&r)?;
    }
    if !r.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(r)
}

/// Solves `P X = Q` by LU with partial pivoting.
fn solve(p: &FockMatrix, q: &FockMatrix) -> Result<FockMatrix> {
    let n = p.dim();
    let mut lu = p.clone();
    let mut x = q.clone();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| lu[(i, col)].norm().total_cmp(&lu[(j, col)].norm()))
            .expect("nonempty range");
        if lu[(pivot, col)].norm() == 0.0 {
            return Err(Error::Overflow);
        }
        if pivot != col {
            for j in 0..n {
                let t = lu[(col, j)];
                lu[(col, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = t;
                let t = x[(col, j)];
                x[(col, j)] = x[(pivot, j)];
                x[(pivot, j)] = t;
            }
        }
        let inv = 1.0 / lu[(col, col)];
        for i in col + 1..n {
            let factor = lu[(i, col)] * inv;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = lu[(col, j)];
                lu[(i, j)] -= factor * v;
            }
            for j in 0..n {
                let v = x[(col, j)];
                x[(i, j)] -= factor * v;
            }
        }
    }
    for col in (0..n).rev() {
        let inv = 1.0 / lu[(col, col)];
        for j in 0..n {
            x[(col, j)] *= inv;
        }
        for i in 0..col {
            let factor = lu[(i, col)];
            if factor.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                let v = x[(col, j)];
                x[(i, j)] -= factor * v;
            }
        }
    }
    Ok(x)
}
