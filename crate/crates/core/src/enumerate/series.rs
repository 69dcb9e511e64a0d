//! Power-series expansion of rational functions in `x` whose coefficients are
//! polynomials in `y`.

use num_bigint::BigInt;
use num_traits::Zero;

/// Dense polynomial in `y` with integer coefficients; index is the power.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolyY(pub Vec<BigInt>);

impl IntPolyY {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolyY(coeffs.iter().map(|&c| BigInt::from(c)).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn add_assign_scaled(&mut self, other: &IntPolyY, factor: &IntPolyY, sign: i8) {
        for (i, a) in factor.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                if self.0.len() <= i + j {
                    self.0.resize(i + j + 1, BigInt::zero());
                }
                let term = a * b;
                if sign >= 0 {
                    self.0[i + j] += term;
                } else {
                    self.0[i + j] -= term;
                }
            }
        }
    }
}

/// Coefficients of `N(x, y) / D(x, y)` as a power series in `x`, assuming
/// `D(0, y) = 1`. Each coefficient `c_n` satisfies
/// `c_n = N_n - sum_{j >= 1} D_j c_{n-j}`.
#[derive(Debug, Clone)]
pub struct RationalSeries {
    numer: Vec<IntPolyY>,
    denom: Vec<IntPolyY>,
    coeffs: Vec<IntPolyY>,
}

impl RationalSeries {
    pub fn new(numer: Vec<IntPolyY>, denom: Vec<IntPolyY>) -> Self {
        assert_eq!(
            denom.first(),
            Some(&IntPolyY::from_i64(&[1])),
            "denominator must have constant term 1"
        );
        RationalSeries {
            numer,
            denom,
            coeffs: Vec::new(),
        }
    }

    /// Coefficient of `x^n`.
    pub fn coefficient(&mut self, n: usize) -> &IntPolyY {
        while self.coeffs.len() <= n {
            let m = self.coeffs.len();
            let mut c = self.numer.get(m).cloned().unwrap_or_default();
            for (j, d) in self.denom.iter().enumerate().skip(1) {
                if j > m {
                    break;
                }
                c.add_assign_scaled(&self.coeffs[m - j], d, -1);
            }
            self.coeffs.push(c.trimmed());
        }
        &self.coeffs[n]
    }
}
