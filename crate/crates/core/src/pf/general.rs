use crate::boson::{coherent_expectation, normal_order, OperatorExpr};
use crate::egf::{w_to_v, EgfSeries};
use crate::error::{Error, Result};
use crate::exact::{rational, ExactRational};
use crate::poly::{YPolynomial, ZPolynomial};

use super::su11::PfiVnSeries;

pub const DEFAULT_SERIES_CAP: usize = 10;

/// `F(x, z) = <z| exp(x w) |z>` expanded to a fixed order, with
/// coefficients polynomial in `z` and `conj(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralPfiSeries {
    /// `W_0..W_M`
    pub wn: EgfSeries<ZPolynomial>,
    /// `V_1..V_M` with `F = exp(sum V_n x^n/n!)`
    pub vn: PfiVnSeries<ZPolynomial>,
}

impl GeneralPfiSeries {
    pub fn order(&self) -> usize {
        self.vn.order
    }

    /// `V_n` restricted to real `z`, written in `y = z^2`.
    pub fn vn_real_axis(&self) -> Result<Vec<YPolynomial>> {
        self.vn.vn.iter().map(ZPolynomial::real_axis).collect()
    }

    /// `V_n` for phase-independent `w`, written in `y = |z|^2`.
    pub fn vn_radial(&self) -> Result<Vec<YPolynomial>> {
        self.vn.vn.iter().map(ZPolynomial::radial).collect()
    }
}

pub fn general_pfi_series(w: &OperatorExpr, order: usize) -> Result<GeneralPfiSeries> {
    general_pfi_series_with_cap(w, order, DEFAULT_SERIES_CAP)
}

pub fn general_pfi_series_with_cap(w: &OperatorExpr, order: usize, cap: usize) -> Result<GeneralPfiSeries> {
    if order > cap {
        return Err(Error::LimitExceeded { n: order, limit: cap });
    }
    let base = normal_order(w);
    let mut power = crate::boson::NormalPolynomial::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(coherent_expectation(&power));
    for _ in 0..order {
        power = power.mul(&base);
        coeffs.push(coherent_expectation(&power));
    }
    let wn = EgfSeries::new(coeffs)?;
    let vn = PfiVnSeries::new(w_to_v(&wn)?);
    Ok(GeneralPfiSeries { wn, vn })
}

/// `c1/2 a^2 + c1/2 ad^2 + c2 ad*a + c2/2`, the superfluid `H/eps` for real `c1`.
pub fn su11_expression(c1: &ExactRational, c2: &ExactRational) -> OperatorExpr {
    let half = rational(1, 2);
    let term = |c: ExactRational, op: OperatorExpr| OperatorExpr::Product(vec![OperatorExpr::Number(c), op]);
    OperatorExpr::Sum(vec![
        term(c1 * &half, OperatorExpr::Ann.pow(2)),
        term(c1 * &half, OperatorExpr::Cre.pow(2)),
        term(c2.clone(), OperatorExpr::Product(vec![OperatorExpr::Cre, OperatorExpr::Ann])),
        OperatorExpr::Number(c2 * &half),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::parse;
    use crate::combinatorics::bell_polynomial;
    use crate::exact::integer;
    use crate::pf::su11_vn_series;
    use num_traits::Zero;

    #[test]
    fn number_operator_gives_bell_polynomials() {
        let s = general_pfi_series(&parse("ad*a").unwrap(), 7).unwrap();
        for n in 0..=7 {
            assert_eq!(s.wn.coeff(n).radial().unwrap(), bell_polynomial(n));
        }
        for v in s.vn_radial().unwrap() {
            assert_eq!(v, YPolynomial::y());
        }
    }

    #[test]
    fn identity_is_a_single_vertex() {
        // F = e^x, so log F = x
        let s = general_pfi_series(&parse("1").unwrap(), 5).unwrap();
        assert!(s.wn.coeffs().iter().all(|w| w.radial().unwrap() == YPolynomial::constant(integer(1))));
        assert_eq!(s.vn.v(1).radial().unwrap(), YPolynomial::constant(integer(1)));
        assert!(s.vn.vn[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn expression_prints_as_expected() {
        assert_eq!(su11_expression(&integer(2), &integer(4)).to_string(), "1*a^2 + 1*ad^2 + 4*ad*a + 2");
        let round = parse(&su11_expression(&rational(3, 2), &integer(5)).to_string()).unwrap();
        assert_eq!(normal_order(&round), normal_order(&su11_expression(&rational(3, 2), &integer(5))));
    }

    #[test]
    fn agrees_with_disentangled_series() {
        for (c1, c2) in [(2, 4), (1, 3), (0, 1)] {
            let w = parse(&su11_expression(&integer(c1), &integer(c2)).to_string()).unwrap();
            let general = general_pfi_series(&w, 5).unwrap().vn_real_axis().unwrap();
            let su11 = su11_vn_series(&integer(c1), &integer(c2), 5);
            assert_eq!(general, su11.vn);
        }
    }

    #[test]
    fn cap_enforced() {
        let w = parse("ad*a").unwrap();
        assert!(matches!(general_pfi_series(&w, 11), Err(Error::LimitExceeded { n: 11, limit: 10 })));
        assert!(general_pfi_series_with_cap(&w, 11, 12).is_ok());
    }
}
