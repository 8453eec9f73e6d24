use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::egf::EgfSeries;
use crate::exact::ExactInteger;
use crate::poly::YPolynomial;

/// Triangle `S(n, k)` for `1 <= k <= n <= n_max`, built by
/// `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<ExactInteger>>,
}

impl StirlingTable {
    pub fn new(n_max: usize) -> Self {
        // rows[n][k] for 0 <= k <= n, with S(0,0) = 1 seeding the recurrence
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::zero(); n + 1];
            for k in 1..=n {
                let stay = if k < n { BigInt::from(k) * &prev[k] } else { BigInt::zero() };
                row[k] = stay + &prev[k - 1];
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, k)`, zero outside `1 <= k <= n`. Panics if `n > n_max`.
    pub fn get(&self, n: usize, k: i64) -> ExactInteger {
        let row = &self.rows[n];
        if k < 0 || k as usize > n || (n > 0 && k == 0) {
            return BigInt::zero();
        }
        row[k as usize].clone()
    }

    /// Row `S(n, 1..=n)`.
    pub fn row(&self, n: usize) -> &[ExactInteger] {
        if n == 0 {
            &self.rows[0][..]
        } else {
            &self.rows[n][1..]
        }
    }

    pub fn bell(&self, n: usize) -> ExactInteger {
        self.rows[n].iter().sum()
    }
}

pub fn stirling2(n: usize, k: i64) -> ExactInteger {
    StirlingTable::new(n).get(n, k)
}

/// `B(n)`, with `B(0) = 1`.
pub fn bell(n: usize) -> ExactInteger {
    StirlingTable::new(n).bell(n)
}

/// `B_n(y) = sum_k S(n,k) y^k`.
pub fn bell_polynomial(n: usize) -> YPolynomial {
    let table = StirlingTable::new(n);
    YPolynomial::new(table.rows[n].iter().cloned().map(BigRational::from_integer).collect())
}

/// Number of connected Bell graphs on `n` white dots, read off as the `n`-th
/// coefficient of the logarithm of the Bell egf.
pub fn connected_count(n: usize) -> ExactInteger {
    let table = StirlingTable::new(n);
    let bell_egf = EgfSeries::from_fn(n, |m| BigRational::from_integer(table.bell(m)));
    let connected = bell_egf.log().expect("B(0) = 1");
    connected.coeff(n).to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_partitions;

    fn brute_stirling(n: usize, k: usize) -> usize {
        enumerate_partitions(n).unwrap().filter(|p| p.block_count() == k).count()
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(5, 5), BigInt::from(1));
        assert_eq!(stirling2(3, 2), BigInt::from(brute_stirling(3, 2)));
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(4, 2), BigInt::from(brute_stirling(4, 2)));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(4, 0), BigInt::zero());
        assert_eq!(stirling2(4, 5), BigInt::zero());
        assert_eq!(stirling2(4, -1), BigInt::zero());
    }

    #[test]
    fn bell_list() {
        let got: Vec<BigInt> = (0..=6).map(bell).collect();
        let want: Vec<BigInt> = [1, 1, 2, 5, 15, 52, 203].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn bell_polynomials() {
        assert_eq!(bell_polynomial(0), YPolynomial::from_integers(&[1]));
        assert_eq!(bell_polynomial(1), YPolynomial::y());
        assert_eq!(bell_polynomial(3), YPolynomial::from_integers(&[0, 1, 3, 1]));
        assert_eq!(bell_polynomial(4).eval(&crate::exact::integer(1)), crate::exact::integer(15));
    }

    #[test]
    fn connected_counts_are_one() {
        for n in 1..=10 {
            assert_eq!(connected_count(n), BigInt::one(), "n={n}");
        }
    }

    #[test]
    fn rows_sum_to_bell() {
        let t = StirlingTable::new(14);
        for n in 1..=14 {
            assert_eq!(t.row(n).iter().sum::<BigInt>(), t.bell(n));
            assert_eq!(t.get(n, 1), BigInt::one());
            assert_eq!(t.get(n, n as i64), BigInt::one());
        }
    }

    #[test]
    fn bell_bounded_by_factorial_in_tested_range() {
        for n in 1..=14 {
            assert!(bell(n) <= crate::exact::factorial(n), "n={n}");
        }
    }
}
