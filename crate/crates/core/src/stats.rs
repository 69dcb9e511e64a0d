//! Distribution of the summand count `Y_n` of a uniform `m` in
//! `[0, a_{2n+1})`: exact moments, their asymptotics, and numeric checks of
//! convergence to the standard normal.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use statrs::function::erf::erfc;

use crate::enumerate::closed_row;
use crate::error::{Error, Result};
use crate::kernel::term_closed_form;
use crate::numeric::{ln_nat, rat_to_f64, ratio_to_f64};
use crate::{Nat, Rat};

/// Raw sums over a `p_{n,k}` row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowMoments {
    /// `sum_k p_{n,k}`
    pub total: Nat,
    /// `sum_k k p_{n,k}`
    pub first: Nat,
    /// `sum_k k^2 p_{n,k}`
    pub second: Nat,
}

impl RowMoments {
    pub fn of_row(row: &[Nat]) -> Self {
        let mut m = RowMoments {
            total: Nat::zero(),
            first: Nat::zero(),
            second: Nat::zero(),
        };
        for (k, p) in row.iter().enumerate() {
            m.total += p;
            m.first += p * k;
            m.second += p * (k * k);
        }
        m
    }
}

fn rat(num: &Nat, den: &Nat) -> Rat {
    Rat::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// `E[Y_n] = sum_k k p_{n,k} / a_{2n+1}`.
pub fn exact_mean(n: usize) -> Rat {
    let m = RowMoments::of_row(&closed_row(n));
    rat(&m.first, &term_closed_form(2 * n + 1))
}

/// `Var[Y_n] = sum_k k^2 p_{n,k} / a_{2n+1} - E[Y_n]^2`.
pub fn exact_variance(n: usize) -> Rat {
    let m = RowMoments::of_row(&closed_row(n));
    let a = term_closed_form(2 * n + 1);
    let mean = rat(&m.first, &a);
    rat(&m.second, &a) - &mean * &mean
}

/// `g_n(1) = ((-1)^{n+1} + 2^{n+2}) / 3`.
pub fn gn_at_one_closed(n: usize) -> Nat {
    let power = Nat::one() << (n + 2);
    let numerator = if n.is_multiple_of(2) {
        power - 1u32
    } else {
        power + 1u32
    };
    numerator / 3u32
}

/// Closed-form variance
/// `[2^{2n+5}(4+3n) - 2(8+3n) - 2^{n+2}(-1)^n(28+36n+9n^2)] / [81(2^{n+2} - (-1)^n)^2]`.
pub fn variance_closed_form(n: usize) -> Rat {
    let n_int = BigInt::from(n);
    let sign = if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let p2n5 = BigInt::one() << (2 * n + 5);
    let pn2 = BigInt::one() << (n + 2);
    let quad = BigInt::from(28) + &n_int * 36 + &n_int * &n_int * 9;
    let numerator = &p2n5 * (BigInt::from(4) + &n_int * 3)
        - (BigInt::from(8) + &n_int * 3) * 2
        - &pn2 * &sign * quad;
    let base = &pn2 - &sign;
    Rat::new(numerator, base.clone() * base * 81)
}

/// Leading-order moments `(n/3 + 2/9, 2n/27 + 8/81)`.
pub fn asymptotic_moments(n: usize) -> (f64, f64) {
    let n = n as f64;
    (n / 3.0 + 2.0 / 9.0, 2.0 * n / 27.0 + 8.0 / 81.0)
}

/// The same as [`asymptotic_moments`] as exact rationals.
pub fn asymptotic_moments_exact(n: usize) -> (Rat, Rat) {
    let n = BigInt::from(n);
    let mean = Rat::new(n.clone(), 3.into()) + Rat::new(2.into(), 9.into());
    let var = Rat::new(n * 2, 27.into()) + Rat::new(8.into(), 81.into());
    (mean, var)
}

/// `P(Y_n = k) = p_{n,k} / a_{2n+1}`.
pub fn pmf(n: usize) -> Vec<Rat> {
    let a = term_closed_form(2 * n + 1);
    closed_row(n).iter().map(|p| rat(p, &a)).collect()
}

fn serialize_rat<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn serialize_rats<S: Serializer>(xs: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MgfResidual {
    pub t: f64,
    pub log_mgf: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionSummary {
    pub n: usize,
    #[serde(serialize_with = "serialize_rat")]
    pub mean: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub variance: Rat,
    #[serde(serialize_with = "serialize_rats")]
    pub pmf: Vec<Rat>,
    /// Two-sided sup distance between the step CDF of `(Y_n - mu)/sigma` and
    /// the standard normal CDF.
    pub ks_to_normal: f64,
    /// Largest `|log M(t) - t^2/2|` over the requested grid.
    pub mgf_log_residual: f64,
    pub mgf_residuals: Vec<MgfResidual>,
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Normalise `Y_n` and compare it with the standard normal, both through the
/// CDF (Kolmogorov–Smirnov distance) and through `log M(t)` against `t^2/2`.
pub fn gaussian_diagnostics(n: usize, t_grid: &[f64]) -> Result<DistributionSummary> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "gaussian diagnostics need n >= 2, got {n}"
        )));
    }
    if let Some(t) = t_grid.iter().find(|t| !(-2.0..=2.0).contains(*t)) {
        return Err(Error::invalid(format!("t = {t} lies outside [-2, 2]")));
    }

    let row = closed_row(n);
    let a = term_closed_form(2 * n + 1);
    let moments = RowMoments::of_row(&row);
    if moments.total != a {
        return Err(Error::InvariantViolation(format!(
            "row {n} sums to {} but a_{{2n+1}} = {a}",
            moments.total
        )));
    }
    let mean = rat(&moments.first, &a);
    let variance = rat(&moments.second, &a) - &mean * &mean;
    let mu = rat_to_f64(&mean);
    let sigma = rat_to_f64(&variance).sqrt();

    let mut ks: f64 = 0.0;
    let mut cumulative = Nat::zero();
    let mut below = 0.0;
    for (k, p) in row.iter().enumerate() {
        cumulative += p;
        let at = ratio_to_f64(&cumulative, &a);
        let phi = normal_cdf((k as f64 - mu) / sigma);
        ks = ks.max((at - phi).abs()).max((below - phi).abs());
        below = at;
    }

    let ln_a = ln_nat(&a);
    let log_weights: Vec<f64> = row.iter().map(|p| ln_nat(p) - ln_a).collect();
    let mgf_residuals: Vec<MgfResidual> = t_grid
        .iter()
        .map(|&t| {
            // M(0) = 1 identically.
            let log_mgf = if t == 0.0 {
                0.0
            } else {
                log_sum_exp(
                    log_weights
                        .iter()
                        .enumerate()
                        .map(|(k, lw)| lw + t * (k as f64 - mu) / sigma),
                )
            };
            MgfResidual {
                t,
                log_mgf,
                residual: (log_mgf - t * t / 2.0).abs(),
            }
        })
        .collect();
    let mgf_log_residual = mgf_residuals.iter().map(|r| r.residual).fold(0.0, f64::max);

    Ok(DistributionSummary {
        n,
        pmf: row.iter().map(|p| rat(p, &a)).collect(),
        mean,
        variance,
        ks_to_normal: ks,
        mgf_log_residual,
        mgf_residuals,
    })
}

fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// One line of the pmf CSV: `k, p_exact_num, p_exact_den, p_float, normalized_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PmfRow {
    pub k: usize,
    pub p_exact_num: String,
    pub p_exact_den: String,
    pub p_float: f64,
    pub normalized_k: f64,
}

/// Rows of the exact pmf with each `k` also given as `(k - mu) / sigma`.
pub fn pmf_rows(n: usize) -> Vec<PmfRow> {
    let probabilities = pmf(n);
    let mean = exact_mean(n);
    let mu = rat_to_f64(&mean);
    let sigma = rat_to_f64(&exact_variance(n)).sqrt();
    probabilities
        .into_iter()
        .enumerate()
        .map(|(k, p)| PmfRow {
            k,
            p_exact_num: p.numer().to_string(),
            p_exact_den: p.denom().to_string(),
            p_float: rat_to_f64(&p),
            normalized_k: if sigma > 0.0 {
                (k as f64 - mu) / sigma
            } else {
                0.0
            },
        })
        .collect()
}
