//! Gap-length statistics over all decompositions of `m` in `[0, a_{2n+1})`.
//!
//! A gap of length `g` starting at index `i` is counted as
//! `left(i) * right(i + g)`: the number of legal decompositions using only
//! indices below the range forbidden by `a_i`, times the number using only
//! indices above the range forbidden by `a_{i+g}`. Both factors are terms
//! `(2^e +- 1) / 3` of the sequence, so the count is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{decompose, gaps_of, GapList};
use crate::enumerate::closed_row;
use crate::error::{Error, Result};
use crate::kernel::{term_closed_form, SequenceTable};
use crate::numeric::{rat_to_f64, serialize_nat};
use crate::{Nat, Rat};

/// Largest `n` for which [`gap_histogram_bruteforce`] will enumerate
/// `[0, a_{2n+1})`.
pub const MAX_BRUTEFORCE_N: usize = 22;

/// Exact gap counts at a fixed `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapHistogram {
    pub n: usize,
    /// Count of gaps of each length `g`; lengths with no gaps may be absent.
    #[serde(serialize_with = "serialize_counts")]
    pub counts: BTreeMap<usize, Nat>,
    #[serde(serialize_with = "serialize_nat")]
    pub total_gaps: Nat,
}

fn serialize_counts<S: serde::Serializer>(
    counts: &BTreeMap<usize, Nat>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(counts.iter().map(|(g, c)| (g.to_string(), c.to_string())))
}

impl GapHistogram {
    pub fn count(&self, g: usize) -> Nat {
        self.counts.get(&g).cloned().unwrap_or_default()
    }

    /// `count(g) / total_gaps`, or `None` when there are no gaps at all.
    pub fn probability(&self, g: usize) -> Option<Rat> {
        (!self.total_gaps.is_zero()).then(|| {
            Rat::new(
                BigInt::from(self.count(g)),
                BigInt::from(self.total_gaps.clone()),
            )
        })
    }

    /// Histogram from the closed-form counts for every `3 <= g <= 2n - 1`.
    pub fn from_formula(n: usize) -> Self {
        let counts: BTreeMap<usize, Nat> = (3..2 * n)
            .map(|g| (g, gap_count_formula(n, g)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let total_gaps = counts.values().sum();
        GapHistogram {
            n,
            counts,
            total_gaps,
        }
    }
}

/// Decompose every `m` in `[0, a_{2n+1})` and tally consecutive-index gaps.
/// With `include_wait`, the index of the first summand is tallied as well.
pub fn gap_histogram_bruteforce(n: usize, include_wait: bool) -> Result<GapHistogram> {
    if n > MAX_BRUTEFORCE_N {
        return Err(Error::BudgetExceeded {
            what: "brute-force gap histogram",
            requested: n,
            limit: MAX_BRUTEFORCE_N,
        });
    }
    let bound = term_closed_form(2 * n + 1).to_u64().expect("a_45 fits u64");
    let table = SequenceTable::with_terms(2 * n + 1);

    const CHUNK: u64 = 1 << 14;
    let chunks = bound.div_ceil(CHUNK);
    let tallies: Vec<Result<BTreeMap<usize, u64>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = BTreeMap::new();
            for m in c * CHUNK..((c + 1) * CHUNK).min(bound) {
                let d = decompose(&table, &Nat::from(m))?;
                let gaps = if include_wait {
                    GapList::with_wait(&d)
                } else {
                    gaps_of(&d)
                };
                for g in gaps.gaps {
                    *local.entry(g).or_insert(0u64) += 1;
                }
            }
            Ok(local)
        })
        .collect();

    let mut counts: BTreeMap<usize, Nat> = BTreeMap::new();
    for tally in tallies {
        for (g, c) in tally? {
            *counts.entry(g).or_default() += c;
        }
    }
    let total_gaps = counts.values().sum();
    Ok(GapHistogram {
        n,
        counts,
        total_gaps,
    })
}

/// `(2^e + sign) / 3`, exact.
fn third_of(e: usize, sign_positive: bool) -> BigInt {
    let power = BigInt::one() << e;
    let numerator: BigInt = if sign_positive {
        power + 1u32
    } else {
        power - 1u32
    };
    debug_assert!((&numerator % 3u32).is_zero());
    numerator / 3u32
}

fn minus_one_pow_is_positive(e: usize) -> bool {
    e.is_multiple_of(2)
}

/// Decompositions with every summand strictly below the bins blocked by
/// `a_i`: indices up to `i - 4` for even `i`, `i - 3` for odd `i`.
fn left_configurations(i: usize) -> BigInt {
    if i.is_multiple_of(2) {
        // (2^{i/2} + (-1)^{(i-2)/2}) / 3
        third_of(i / 2, minus_one_pow_is_positive((i - 2) / 2))
    } else {
        // (2^{(i-1)/2 + 1} + (-1)^{(i-1)/2}) / 3
        third_of((i - 1) / 2 + 1, minus_one_pow_is_positive((i - 1) / 2))
    }
}

/// Decompositions with every summand above the bins blocked by `a_j`, and
/// no index beyond `2n`.
fn right_configurations(n: usize, j: usize) -> BigInt {
    if j.is_multiple_of(2) {
        // (2^{(2n-j)/2 + 1} + (-1)^{(2n-j)/2}) / 3
        let e = (2 * n - j) / 2;
        third_of(e + 1, minus_one_pow_is_positive(e))
    } else {
        // (2^{(2n-j-1)/2 + 1} + (-1)^{(2n-j-1)/2}) / 3
        let e = (2 * n - j - 1) / 2;
        third_of(e + 1, minus_one_pow_is_positive(e))
    }
}

/// Number of gaps of length `g` over all decompositions of `m` in
/// `[0, a_{2n+1})`, summing `left(i) * right(i + g)` over start indices `i`.
/// A gap of 3 cannot start at an odd index. Returns zero for `g < 3`.
pub fn gap_count_formula(n: usize, g: usize) -> Nat {
    if g < 3 || g >= 2 * n {
        return Nat::zero();
    }
    let mut total = BigInt::zero();
    for i in 1..=2 * n - g {
        if g == 3 && i % 2 == 1 {
            continue;
        }
        total += left_configurations(i) * right_configurations(n, i + g);
    }
    debug_assert!(!total.is_negative());
    total.to_biguint().expect("counts are non-negative")
}

/// `sum_m max(k(m) - 1, 0)` over `m` in `[0, a_{2n+1})`, from the `p_{n,k}`
/// row. This equals `(mu_n - 1) a_{2n+1} + 1`.
pub fn total_gaps(n: usize) -> Nat {
    closed_row(n)
        .iter()
        .enumerate()
        .skip(2)
        .map(|(k, p)| p * (k - 1))
        .sum()
}

/// `P_n(g)`: fraction of all gaps (over `m` in `[0, a_{2n+1})`) that have
/// length `g`.
pub fn pn_of_g(n: usize, g: usize) -> Result<Rat> {
    let total = total_gaps(n);
    if total.is_zero() {
        return Err(Error::invalid(format!(
            "no gaps occur below a_{{2n+1}} for n = {n}"
        )));
    }
    Ok(Rat::new(
        BigInt::from(gap_count_formula(n, g)),
        BigInt::from(total),
    ))
}

/// Limiting gap distribution: `0` for `g <= 2`, `1/8` for `g = 3`,
/// `2^{-j}` for `g = 2j >= 4` and `(3/4) 2^{-j}` for `g = 2j + 1 >= 5`.
pub fn limit_p(g: usize) -> Rat {
    let j = g / 2;
    match g {
        0..=2 => Rat::zero(),
        3 => Rat::new(1.into(), 8.into()),
        _ if g.is_multiple_of(2) => Rat::new(1.into(), BigInt::one() << j),
        _ => Rat::new(3.into(), BigInt::one() << (j + 2)),
    }
}

/// One line of the gap CSV: `g, count, p_n_float, p_limit_float`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub g: usize,
    pub count: String,
    pub p_n_float: f64,
    pub p_limit_float: f64,
}

impl GapHistogram {
    /// Rows for every `g` in `3..=2n-1`, zero counts included.
    pub fn rows(&self) -> Vec<GapRow> {
        (3..2 * self.n.max(2))
            .map(|g| GapRow {
                g,
                count: self.count(g).to_string(),
                p_n_float: self.probability(g).map(|p| rat_to_f64(&p)).unwrap_or(0.0),
                p_limit_float: rat_to_f64(&limit_p(g)),
            })
            .collect()
    }
}
