//! Monte Carlo over uniform big integers: draw `m` in `[0, bound)`, decompose,
//! and tally summand counts.
//!
//! Worker `w` draws from `ChaCha8Rng::seed_from_u64(seed)` switched to stream
//! `w`; worker `w` handles `count / workers` samples, plus one more when
//! `w < count % workers`. Tallies are exact integers merged in worker order,
//! so a report depends only on `(count, bound, seed, workers)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::summand_count;
use crate::error::{Error, Result};
use crate::kernel::{term_closed_form, SequenceTable};
use crate::numeric::{rat_to_f64, serialize_nat};
use crate::stats::asymptotic_moments;
use crate::{Nat, Rat};

/// Draws a rejection loop may spend before the stream is declared broken.
pub const MAX_REJECTIONS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    pub count: u64,
    /// Exclusive upper bound.
    #[serde(serialize_with = "serialize_nat")]
    pub bound: Nat,
    pub seed: u64,
    pub workers: usize,
}

impl SampleConfig {
    pub fn new(count: u64, bound: Nat, seed: u64, workers: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("sample count must be at least 1"));
        }
        if bound.is_zero() {
            return Err(Error::invalid("bound must be at least 1"));
        }
        if workers == 0 {
            return Err(Error::invalid("workers must be at least 1"));
        }
        Ok(SampleConfig {
            count,
            bound,
            seed,
            workers,
        })
    }

    fn share(&self, worker: usize) -> u64 {
        let workers = self.workers as u64;
        self.count / workers + u64::from((worker as u64) < self.count % workers)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub config: SampleConfig,
    pub empirical_mean: f64,
    pub empirical_std: f64,
    /// Largest `n` with `a_{2n+1} <= bound`; the predictions use it.
    pub n_eff: usize,
    pub predicted_mean: f64,
    pub predicted_std: f64,
    /// Mean and standard deviation of the summand count under the exact
    /// uniform law on `[0, bound)`.
    pub exact_mean: f64,
    pub exact_std: f64,
    /// Summand count `k` to number of samples with `k` summands.
    pub histogram: BTreeMap<usize, u64>,
}

/// A uniform draw from `[0, bound)`: fill `bits(bound - 1)` random bits and
/// reject values `>= bound`.
pub fn uniform_below<R: RngCore + ?Sized>(bound: &Nat, rng: &mut R) -> Result<Nat> {
    if bound.is_zero() {
        return Err(Error::invalid("bound must be at least 1"));
    }
    if bound.is_one() {
        return Ok(Nat::zero());
    }
    let bits = (bound - 1u32).bits();
    let words = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (words as u64 - 1);
    let mut digits = vec![0u32; words];
    for _ in 0..MAX_REJECTIONS {
        for d in digits.iter_mut() {
            *d = rng.next_u32();
        }
        if top_bits < 32 {
            digits[words - 1] &= (1u32 << top_bits) - 1;
        }
        let candidate = Nat::new(digits.clone());
        if &candidate < bound {
            return Ok(candidate);
        }
    }
    Err(Error::RngFault {
        attempts: MAX_REJECTIONS,
    })
}

/// The random stream used by `worker`.
pub fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

#[derive(Debug, Default)]
struct Tally {
    histogram: BTreeMap<usize, u64>,
    sum: u128,
    sum_sq: u128,
}

/// Draw `cfg.count` integers below `cfg.bound`, decompose each, and summarise
/// the summand counts.
pub fn run_experiment(cfg: &SampleConfig) -> Result<SampleReport> {
    let table = SequenceTable::covering(&cfg.bound);
    let tallies: Vec<Result<Tally>> = (0..cfg.workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = worker_rng(cfg.seed, w);
            let mut tally = Tally::default();
            for _ in 0..cfg.share(w) {
                let m = uniform_below(&cfg.bound, &mut rng)?;
                let k = summand_count(&table, &m)?;
                *tally.histogram.entry(k).or_insert(0) += 1;
                tally.sum += k as u128;
                tally.sum_sq += (k * k) as u128;
            }
            Ok(tally)
        })
        .collect();

    let mut merged = Tally::default();
    for tally in tallies {
        let tally = tally?;
        for (k, c) in tally.histogram {
            *merged.histogram.entry(k).or_insert(0) += c;
        }
        merged.sum += tally.sum;
        merged.sum_sq += tally.sum_sq;
    }

    let n = cfg.count as u128;
    let empirical_mean = merged.sum as f64 / n as f64;
    // (n * sum_sq - sum^2) / n^2, exact in integers before the final divide.
    let spread = n * merged.sum_sq - merged.sum * merged.sum;
    let empirical_std = (spread as f64 / (n as f64 * n as f64)).sqrt();

    let n_eff = effective_n(&cfg.bound);
    let (predicted_mean, predicted_var) = asymptotic_moments(n_eff);
    let (exact_mean, exact_var) = exact_moments_below(&cfg.bound);

    Ok(SampleReport {
        config: cfg.clone(),
        empirical_mean,
        empirical_std,
        n_eff,
        predicted_mean,
        predicted_std: predicted_var.sqrt(),
        exact_mean: rat_to_f64(&exact_mean),
        exact_std: rat_to_f64(&exact_var).sqrt(),
        histogram: merged.histogram,
    })
}

/// Largest `n` with `a_{2n+1} <= bound` (0 when `bound <= 1`).
pub fn effective_n(bound: &Nat) -> usize {
    let mut n = bound.bits() as usize;
    while n > 0 && &term_closed_form(2 * n + 1) > bound {
        n -= 1;
    }
    n
}

/// Sums `(count, sum k, sum k^2)` of summand counts over a range of integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct PowerSums {
    count: Nat,
    first: Nat,
    second: Nat,
}

impl PowerSums {
    /// Sums after adding one summand to every decomposition in the range.
    fn shifted(self) -> Self {
        PowerSums {
            second: self.second + (&self.first << 1usize) + &self.count,
            first: self.first + &self.count,
            count: self.count,
        }
    }

    fn add(self, other: Self) -> Self {
        PowerSums {
            count: self.count + other.count,
            first: self.first + other.first,
            second: self.second + other.second,
        }
    }
}

/// `(g_n(1), g_n'(1), g_n''(1) + g_n'(1))` for `n = 0..=max_n`, from
/// `g_n = g_{n-1} + 2y g_{n-2}` differentiated at `y = 1`.
fn row_power_sums(max_n: usize) -> Vec<PowerSums> {
    let mut sums: Vec<PowerSums> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let next = match n {
            0 => PowerSums {
                count: Nat::one(),
                ..Default::default()
            },
            1 => PowerSums {
                count: Nat::from(3u32),
                first: Nat::from(2u32),
                second: Nat::from(2u32),
            },
            _ => {
                let (a1, a2) = (&sums[n - 1], &sums[n - 2]);
                PowerSums {
                    count: &a1.count + (&a2.count << 1usize),
                    first: &a1.first + (&a2.count << 1usize) + (&a2.first << 1usize),
                    second: &a1.second
                        + (&a2.count << 1usize)
                        + (&a2.first << 2usize)
                        + (&a2.second << 1usize),
                }
            }
        };
        sums.push(next);
    }
    sums
}

/// Exact mean and variance of the summand count of a uniform integer in
/// `[0, bound)`.
///
/// Below `a_l` the top summand is fixed once `m >= a_l`, so
/// `S[0, B) = S[0, a_l) + shift(S[0, B - a_l))` with `a_l` the largest term
/// below `B`; odd `l = 2n+1` are read off the `p_{n,k}` rows.
pub fn exact_moments_below(bound: &Nat) -> (Rat, Rat) {
    assert!(!bound.is_zero(), "bound must be at least 1");
    let table = SequenceTable::covering(bound);
    let rows = row_power_sums(table.len() / 2 + 1);

    fn sums_below(bound: &Nat, table: &SequenceTable, rows: &[PowerSums]) -> PowerSums {
        if bound.is_zero() {
            return PowerSums::default();
        }
        if bound.is_one() {
            return rows[0].clone();
        }
        let below = bound - 1u32;
        let l = table
            .largest_at_most(&below, table.len())
            .expect("bound >= 2 so a_1 = 1 qualifies");
        let a_l = &table.terms()[l - 1];
        let head = if l % 2 == 1 {
            rows[(l - 1) / 2].clone()
        } else {
            // [0, a_{2n}) splits at a_{2n-1}, leaving a_{2n} - a_{2n-1} = a_{2n-3}.
            let n = l / 2;
            let tail = if n >= 2 {
                rows[n - 2].clone()
            } else {
                rows[0].clone()
            };
            rows[n - 1].clone().add(tail.shifted())
        };
        head.add(sums_below(&(bound - a_l), table, rows).shifted())
    }

    let s = sums_below(bound, &table, &rows);
    let b = BigInt::from(s.count.clone());
    let mean = Rat::new(BigInt::from(s.first), b.clone());
    let var = Rat::new(BigInt::from(s.second), b) - &mean * &mean;
    (mean, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::decompose;
    use crate::enumerate::closed_row;
    use crate::stats::{exact_mean, exact_variance, RowMoments};

    #[test]
    fn bound_one_is_always_zero() {
        let mut rng = worker_rng(7, 0);
        for _ in 0..100 {
            assert!(uniform_below(&Nat::one(), &mut rng).unwrap().is_zero());
        }
        assert!(uniform_below(&Nat::zero(), &mut rng).is_err());
    }

    #[test]
    fn power_of_two_never_rejects() {
        // With no rejection each draw consumes exactly one u32 for k <= 32.
        let bound = Nat::one() << 20usize;
        let mut a = worker_rng(1, 0);
        let mut b = worker_rng(1, 0);
        for _ in 0..1000 {
            let x = uniform_below(&bound, &mut a).unwrap();
            assert!(x < bound);
            assert_eq!(x, Nat::from(b.next_u32() & ((1 << 20) - 1)));
        }
    }

    struct StuckRng;
    impl RngCore for StuckRng {
        fn next_u32(&mut self) -> u32 {
            u32::MAX
        }
        fn next_u64(&mut self) -> u64 {
            u64::MAX
        }
        fn fill_bytes(&mut self, dst: &mut [u8]) {
            dst.fill(0xff);
        }
    }

    #[test]
    fn broken_stream_faults() {
        assert!(matches!(
            uniform_below(&Nat::from(5u32), &mut StuckRng),
            Err(Error::RngFault { .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(SampleConfig::new(0, Nat::one(), 0, 1).is_err());
        assert!(SampleConfig::new(1, Nat::zero(), 0, 1).is_err());
        assert!(SampleConfig::new(1, Nat::one(), 0, 0).is_err());
        let cfg = SampleConfig::new(10, Nat::one(), 0, 3).unwrap();
        assert_eq!((0..3).map(|w| cfg.share(w)).sum::<u64>(), 10);
        assert_eq!(cfg.share(0), 4);
        assert_eq!(cfg.share(2), 3);
    }

    #[test]
    fn single_sample() {
        let cfg = SampleConfig::new(1, Nat::from(2u32), 99, 1).unwrap();
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.histogram.values().sum::<u64>(), 1);
        assert!(report.empirical_mean == 0.0 || report.empirical_mean == 1.0);
        assert_eq!(report.empirical_std, 0.0);
    }

    #[test]
    fn reproducible() {
        let cfg = SampleConfig::new(2000, Nat::from(10u32).pow(50u32), 5, 3).unwrap();
        assert_eq!(run_experiment(&cfg).unwrap(), run_experiment(&cfg).unwrap());
    }

    #[test]
    fn effective_n_values() {
        assert_eq!(effective_n(&Nat::one()), 0);
        assert_eq!(effective_n(&Nat::from(3u32)), 1);
        assert_eq!(effective_n(&Nat::from(10u32)), 2);
        assert_eq!(effective_n(&Nat::from(11u32)), 3);
        let a = term_closed_form(4001);
        assert_eq!(effective_n(&a), 2000);
        assert_eq!(effective_n(&(a - 1u32)), 1999);
    }

    #[test]
    fn row_power_sums_match_rows() {
        let sums = row_power_sums(60);
        for (n, s) in sums.iter().enumerate() {
            let m = RowMoments::of_row(&closed_row(n));
            assert_eq!(
                (&s.count, &s.first, &s.second),
                (&m.total, &m.first, &m.second),
                "n={n}"
            );
        }
    }

    #[test]
    fn exact_moments_below_match_enumeration() {
        let table = SequenceTable::with_terms(30);
        let mut count = 0u64;
        let mut first = 0u64;
        let mut second = 0u64;
        for m in 0u64..3000 {
            let bound = Nat::from(m + 1);
            let k = decompose(&table, &Nat::from(m)).unwrap().summand_count() as u64;
            count += 1;
            first += k;
            second += k * k;
            let (mean, var) = exact_moments_below(&bound);
            let mean_direct = Rat::new(first.into(), count.into());
            let var_direct = Rat::new(second.into(), count.into()) - &mean_direct * &mean_direct;
            assert_eq!(mean, mean_direct, "bound={bound}");
            assert_eq!(var, var_direct, "bound={bound}");
        }
    }

    #[test]
    fn exact_moments_below_term_match_stats() {
        for n in [1usize, 4, 17, 40] {
            let (mean, var) = exact_moments_below(&term_closed_form(2 * n + 1));
            assert_eq!(mean, exact_mean(n));
            assert_eq!(var, exact_variance(n));
        }
    }
}
