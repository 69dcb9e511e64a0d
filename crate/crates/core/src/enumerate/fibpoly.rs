//! Fibonacci polynomials `F_0 = 0, F_1 = 1, F_n = x F_{n-1} + F_{n-2}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::binomial;
use crate::{Nat, Rat};

/// `F_n(x)` in coefficient form, from
/// `F_n(x) = sum_{j=0}^{floor((n-1)/2)} C(n-j-1, j) x^{n-2j-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibPoly {
    pub degree_index: usize,
    /// `coeffs[p]` multiplies `x^p`.
    #[serde(skip)]
    pub coeffs: Vec<Nat>,
}

impl FibPoly {
    pub fn new(n: usize) -> Self {
        let mut coeffs = vec![Nat::zero(); n.max(1)];
        if n >= 1 {
            for j in 0..=(n - 1) / 2 {
                coeffs[n - 2 * j - 1] = binomial(n - j - 1, j);
            }
        } else {
            coeffs.clear();
        }
        FibPoly {
            degree_index: n,
            coeffs,
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(BigInt::from(c.clone()));
        }
        acc
    }

    /// Coefficients of `F_n'(x)`.
    pub fn derivative(&self) -> Vec<Nat> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(p, c)| c * p)
            .collect()
    }
}

/// `F_n(x)` by the defining recurrence, exact over the rationals.
pub fn fib_poly_eval(n: usize, x: &Rat) -> Rat {
    let (value, _) = fib_pair(n, x);
    value
}

/// `(F_n(x), F_{n-1}(x))`, with `F_{-1} = 1` so the recurrence holds at `n = 1`.
fn fib_pair(n: usize, x: &Rat) -> (Rat, Rat) {
    let mut prev = Rat::one();
    let mut cur = Rat::zero();
    for _ in 0..n {
        let next = x * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    (cur, prev)
}

/// `F_n(x)` from the coefficient sum.
pub fn fib_poly_eval_sum(n: usize, x: &Rat) -> Rat {
    FibPoly::new(n).eval(x)
}

/// `F_n(x) = ((x + r)^n - (x - r)^n) / (2^n r)` with `r = sqrt(x^2 + 4)`.
pub fn fib_poly_radical(n: usize, x: f64) -> f64 {
    let r = (x * x + 4.0).sqrt();
    let n = i32::try_from(n).expect("degree fits i32");
    (((x + r) / 2.0).powi(n) - ((x - r) / 2.0).powi(n)) / r
}

/// `F_n'(x) = (2n F_{n-1}(x) + (n-1) x F_n(x)) / (x^2 + 4)`.
pub fn fib_poly_derivative(n: usize, x: &Rat) -> Rat {
    if n == 0 {
        return Rat::zero();
    }
    let (fn_x, fn_minus_1) = fib_pair(n, x);
    let two_n = Rat::from_integer(BigInt::from(2 * n));
    let n_minus_1 = Rat::from_integer(BigInt::from(n - 1));
    let four = Rat::from_integer(BigInt::from(4));
    (two_n * fn_minus_1 + n_minus_1 * x * fn_x) / (x * x + four)
}
