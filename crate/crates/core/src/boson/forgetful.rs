use num_rational::BigRational;
use num_traits::One;

use super::normal::NormalPolynomial;
use crate::egf::EgfSeries;
use crate::exact::{factorial, ExactRational};

/// One order of the expansion in `x`: both sides are the `x^n/n!` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderCheck {
    pub n: usize,
    pub lhs: NormalPolynomial,
    pub rhs: NormalPolynomial,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForgetfulReport {
    pub order: usize,
    pub checks: Vec<OrderCheck>,
}

impl ForgetfulReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.matches)
    }

    pub fn first_mismatch(&self) -> Option<usize> {
        self.checks.iter().find(|c| !c.matches).map(|c| c.n)
    }
}

/// Compares `N(exp(x a†a))` with `:exp(a†a (e^x - 1)):` order by order up to `x^order`.
pub fn verify_forgetful_identity(order: usize) -> ForgetfulReport {
    verify_forgetful_identity_with(order, |_, _| {})
}

/// As [`verify_forgetful_identity`], letting the caller tamper with the
/// right-hand side at each order before comparison.
pub fn verify_forgetful_identity_with(
    order: usize,
    mut perturb_rhs: impl FnMut(usize, &mut NormalPolynomial),
) -> ForgetfulReport {
    // left: the x^n/n! coefficient of exp(x a†a) is (a†a)^n, normal ordered
    let number = NormalPolynomial::monomial(1, 1, BigRational::one());
    let mut lhs = Vec::with_capacity(order + 1);
    let mut power = NormalPolynomial::one();
    for _ in 0..=order {
        lhs.push(power.clone());
        power = power.mul(&number);
    }

    // right: sum_k (e^x - 1)^k / k! (a†)^k a^k, with (e^x-1)^k expanded as an egf
    let e_minus_one: EgfSeries = EgfSeries::from_fn(order, |n| {
        if n == 0 {
            ExactRational::from_integer(0.into())
        } else {
            BigRational::one()
        }
    });
    let mut rhs = vec![NormalPolynomial::zero(); order + 1];
    let mut power_k: EgfSeries = EgfSeries::one(order);
    for k in 0..=order {
        let inv_k_fact = BigRational::new(1.into(), factorial(k));
        for (n, slot) in rhs.iter_mut().enumerate() {
            slot.add_term(k as u32, k as u32, power_k.coeff(n) * &inv_k_fact);
        }
        power_k = power_k.mul(&e_minus_one).expect("same order");
    }

    let checks = lhs
        .into_iter()
        .zip(rhs)
        .enumerate()
        .skip(1)
        .map(|(n, (l, mut r))| {
            perturb_rhs(n, &mut r);
            let matches = l == r;
            OrderCheck { n, lhs: l, rhs: r, matches }
        })
        .collect();
    ForgetfulReport { order, checks }
}
