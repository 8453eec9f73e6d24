use num_complex::Complex64;

use super::normal::NormalPolynomial;
use crate::exact::{real_complex, to_f64};
use crate::poly::ZPolynomial;

/// `<z| (a†)^p a^q |z> = conj(z)^p z^q` termwise, for normalized coherent states.
pub fn coherent_expectation(p: &NormalPolynomial) -> ZPolynomial {
    ZPolynomial::from_terms(p.terms().map(|(&k, c)| (k, real_complex(c.clone()))))
}

pub fn coherent_expectation_at(p: &NormalPolynomial, z: Complex64) -> Complex64 {
    let zc = z.conj();
    p.terms().map(|(&(a, b), c)| to_f64(c) * zc.powu(a) * z.powu(b)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::{normal_order, parse};
    use crate::combinatorics::bell;
    use num_traits::ToPrimitive;

    #[test]
    fn bell_numbers_at_z_one() {
        for n in 1..=8u32 {
            let p = normal_order(&parse(&format!("(ad*a)^{n}")).unwrap());
            let v = coherent_expectation_at(&p, Complex64::new(1.0, 0.0));
            assert_eq!(v.re, bell(n as usize).to_f64().unwrap());
            let exact = coherent_expectation(&p).radial().unwrap().eval(&crate::exact::integer(1));
            assert_eq!(exact.to_integer(), bell(n as usize));
        }
    }

    #[test]
    fn constant_maps_to_itself() {
        let p = NormalPolynomial::constant(crate::exact::rational(5, 3));
        let z = coherent_expectation(&p);
        assert_eq!(z.len(), 1);
        assert_eq!(z.coeff(0, 0), real_complex(crate::exact::rational(5, 3)));
    }

    #[test]
    fn number_operator_gives_modulus_squared() {
        let p = normal_order(&parse("ad*a").unwrap());
        let zp = coherent_expectation(&p);
        assert_eq!(zp.coeff(1, 1), real_complex(crate::exact::integer(1)));
        let z = Complex64::new(0.7, -1.3);
        assert!((coherent_expectation_at(&p, z) - z.norm_sqr()).norm() < 1e-14);
    }
}
