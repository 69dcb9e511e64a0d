//! Counting integers by number of summands.
//!
//! `p_{n,k}` is the number of `m` in `[0, a_{2n+1})` whose decomposition has
//! exactly `k` summands. It is available three independent ways: the
//! recurrence `p_{n,k} = 2 p_{n-2,k-1} + p_{n-1,k}`, the closed form
//! `2^k C(n-k+1, k)`, and series expansion of
//! `F(x, y) = (1 + 2xy) / (1 - x - 2x^2 y)`.
//!
//! `g_n(y) = sum_k p_{n,k} y^k` likewise has three forms: the coefficient
//! polynomial, the Fibonacci-polynomial identity
//! `g_n(y) = sqrt(2y)^{n+1} F_{n+2}(1/sqrt(2y))`, and the partial-fraction
//! formula in `sqrt(1 + 8y)`.

mod fibpoly;
mod series;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub use fibpoly::{
    fib_poly_derivative, fib_poly_eval, fib_poly_eval_sum, fib_poly_radical, FibPoly,
};
pub use series::{IntPolyY, RationalSeries};

use crate::error::{Error, Result};
use crate::{Nat, Rat};

/// Largest `k` with `p_{n,k} > 0`.
pub fn max_summands(n: usize) -> usize {
    n.div_ceil(2)
}

/// `C(n, k)` computed multiplicatively.
pub fn binomial(n: usize, k: usize) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let k = k.min(n - k);
    let mut acc = Nat::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact table of `p_{n,k}` for `n = 0..=max_n`, filled by the recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandCountTable {
    rows: Vec<Vec<Nat>>,
}

impl SummandCountTable {
    pub fn build(max_n: usize) -> Self {
        Self::build_limited(max_n, usize::MAX)
    }

    /// Rows up to `max_n`, keeping only columns `k <= max_k`.
    fn build_limited(max_n: usize, max_k: usize) -> Self {
        let mut rows: Vec<Vec<Nat>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let width = max_summands(n).min(max_k) + 1;
            let row = match n {
                0 => vec![Nat::one()],
                1 => [Nat::one(), Nat::from(2u32)]
                    .into_iter()
                    .take(width)
                    .collect(),
                _ => (0..width)
                    .map(|k| {
                        let carried = rows[n - 1].get(k).cloned().unwrap_or_default();
                        let extended = k
                            .checked_sub(1)
                            .and_then(|k1| rows[n - 2].get(k1))
                            .map(|p| p << 1usize)
                            .unwrap_or_default();
                        carried + extended
                    })
                    .collect(),
            };
            rows.push(row);
        }
        SummandCountTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `p_{n,k}`, zero outside the support.
    ///
    /// # Panics
    ///
    /// If `n > max_n()`.
    pub fn get(&self, n: usize, k: usize) -> Nat {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[Nat] {
        &self.rows[n]
    }

    pub fn row_sum(&self, n: usize) -> Nat {
        self.rows[n].iter().sum()
    }
}

/// `p_{n,k}` from the recurrence with `p_{n,0} = 1`, `p_{0,k} = 0` for
/// `k > 0`, and `p_{1,1} = 2`.
pub fn pnk_recurrence(n: usize, k: usize) -> Nat {
    if k > max_summands(n) {
        return Nat::zero();
    }
    SummandCountTable::build_limited(n, k).get(n, k)
}

/// `p_{n,k} = 2^k C(n - (k-1), k)` for `k >= 1` and `n >= 2k - 1`; the table
/// conventions (`1` for `k = 0`, `0` outside the support) otherwise.
pub fn pnk_closed(n: usize, k: usize) -> Nat {
    if k == 0 {
        return Nat::one();
    }
    if n + 1 < 2 * k {
        return Nat::zero();
    }
    binomial(n + 1 - k, k) << k
}

/// Row `p_{n,0..}` from the closed form, stepping
/// `p_{n,k+1} = p_{n,k} * 2 (n-2k+1)(n-2k) / ((k+1)(n-k+1))`.
pub fn closed_row(n: usize) -> Vec<Nat> {
    let mut row = Vec::with_capacity(max_summands(n) + 1);
    let mut p = Nat::one();
    row.push(p.clone());
    for k in 0..max_summands(n) {
        p *= 2 * (n - 2 * k + 1) * (n - 2 * k);
        p /= (k + 1) * (n - k + 1);
        row.push(p.clone());
    }
    row
}

/// Row `n` of `p_{n,k}` read off the coefficient of `x^n` in
/// `(1 + 2xy) / (1 - x - 2x^2 y)`.
pub fn pnk_from_gf(n: usize) -> Result<Vec<Nat>> {
    let mut series = kentucky_series();
    series
        .coefficient(n)
        .0
        .iter()
        .map(|c| {
            c.to_biguint().ok_or_else(|| {
                Error::InvariantViolation(format!("negative coefficient {c} in row {n}"))
            })
        })
        .collect()
}

/// The bivariate generating function of `p_{n,k}` as a rational series.
pub fn kentucky_series() -> RationalSeries {
    RationalSeries::new(
        vec![IntPolyY::from_i64(&[1]), IntPolyY::from_i64(&[0, 2])],
        vec![
            IntPolyY::from_i64(&[1]),
            IntPolyY::from_i64(&[-1]),
            IntPolyY::from_i64(&[0, -2]),
        ],
    )
}

/// `g_n(y) = sum_k p_{n,k} y^k`; coefficient `k` is `p_{n,k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyInY {
    #[serde(serialize_with = "serialize_nats")]
    pub coeffs: Vec<Nat>,
}

fn serialize_nats<S: serde::Serializer>(xs: &[Nat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

impl PolyInY {
    pub fn eval(&self, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + Rat::from_integer(BigInt::from(c.clone()));
        }
        acc
    }

    pub fn eval_f64(&self, y: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * y + c.to_f64().unwrap_or(f64::INFINITY))
    }
}

pub fn gn_poly(n: usize) -> PolyInY {
    PolyInY {
        coeffs: closed_row(n),
    }
}

/// `g_n(y)` through `sqrt(2y)^{n+1} F_{n+2}(1/sqrt(2y))`, evaluated exactly in
/// `Q(u)` with `u^2 = 2y`: the odd powers of `u` cancel in the product.
pub fn gn_fibform(n: usize, y: &Rat) -> Result<Rat> {
    if y.is_zero() {
        return Err(Error::invalid("gn_fibform needs y != 0"));
    }
    let u_squared = y * Rat::from_integer(BigInt::from(2));
    let ext = QuadExt { u_squared };
    // x = 1/u = u / (2y)
    let x = (Rat::zero(), Rat::one() / &ext.u_squared);

    let mut prev = (Rat::zero(), Rat::zero());
    let mut cur = (Rat::one(), Rat::zero());
    for _ in 1..n + 2 {
        let next = ext.add(&ext.mul(&x, &cur), &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    let scale = ext.pow(&(Rat::zero(), Rat::one()), n + 1);
    let (rational, radical) = ext.mul(&scale, &cur);
    if !radical.is_zero() {
        return Err(Error::InvariantViolation(format!(
            "sqrt(2y) part {radical} did not cancel in g_{n}"
        )));
    }
    Ok(rational)
}

/// Arithmetic on `a + b u` with `u^2` fixed.
struct QuadExt {
    u_squared: Rat,
}

impl QuadExt {
    fn add(&self, p: &(Rat, Rat), q: &(Rat, Rat)) -> (Rat, Rat) {
        (&p.0 + &q.0, &p.1 + &q.1)
    }

    fn mul(&self, p: &(Rat, Rat), q: &(Rat, Rat)) -> (Rat, Rat) {
        (
            &p.0 * &q.0 + &p.1 * &q.1 * &self.u_squared,
            &p.0 * &q.1 + &p.1 * &q.0,
        )
    }

    fn pow(&self, base: &(Rat, Rat), exp: usize) -> (Rat, Rat) {
        let mut acc = (Rat::one(), Rat::zero());
        for _ in 0..exp {
            acc = self.mul(&acc, base);
        }
        acc
    }
}

/// `g_n(y)` from the partial-fraction expansion of `F(x, y)`:
/// `[4y((1+r)^n - (1-r)^n) + (1+r)^{n+1} - (1-r)^{n+1}] / (2^{n+1} r)` with
/// `r = sqrt(1 + 8y)`.
pub fn gn_radical(n: usize, y: f64) -> Result<f64> {
    if y.is_nan() || y <= 0.0 {
        return Err(Error::invalid(format!("gn_radical needs y > 0, got {y}")));
    }
    let r = (1.0 + 8.0 * y).sqrt();
    let n = i32::try_from(n).map_err(|_| Error::invalid("n too large for gn_radical"))?;
    // Divide by 2 inside the powers to keep magnitudes near 1.
    let plus = (1.0 + r) / 2.0;
    let minus = (1.0 - r) / 2.0;
    let value =
        (2.0 * y * (plus.powi(n) - minus.powi(n)) + plus.powi(n + 1) - minus.powi(n + 1)) / r;
    Ok(value)
}
