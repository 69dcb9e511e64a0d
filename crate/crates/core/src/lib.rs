//! Exact arithmetic for the Kentucky-2 sequence, the `(s, b) = (1, 2)` member
//! of the Generacci family.
//!
//! Terms are grouped in bins of two, `b_k = {a_{2k-1}, a_{2k}}`, and a legal
//! decomposition never takes two summands from the same bin or from adjacent
//! bins. Every non-negative integer has exactly one such decomposition.
//!
//! The crate is organised bottom-up:
//!
//! * [`kernel`] holds the sequence itself (recurrence, closed form, and the
//!   exhaustive "adjoin the smallest unrepresentable integer" builder for any
//!   `(s, b)`).
//! * [`decomp`] has greedy decomposition, legality checks, an exhaustive
//!   enumerator used as a uniqueness oracle, and gap extraction.
//! * [`enumerate`] gives `p_{n,k}` (how many `m < a_{2n+1}` have `k` summands)
//!   computed three ways, plus the Fibonacci-polynomial forms of
//!   `g_n(y) = sum_k p_{n,k} y^k`.
//! * [`stats`] has exact moments of the summand count and Gaussian diagnostics.
//! * [`gaps`] has exact gap-length counts and their limiting distribution.
//! * [`sampler`] runs Monte Carlo over uniform big integers.
//!
//! All counts are [`Nat`] (arbitrary precision) and all exact moments are
//! [`Rat`]. Floating point only appears in diagnostics and reports.

#![forbid(unsafe_code)]

pub mod decomp;
pub mod enumerate;
pub mod error;
pub mod gaps;
pub mod kernel;
mod numeric;
pub mod sampler;
pub mod stats;

#[cfg(test)]
mod invariants;
#[cfg(test)]
#[path = "../tests/common/mod.rs"]
mod oracles;

pub use decomp::{decompose, enumerate_all, gaps_of, is_legal, Decomposition, GapList};
pub use enumerate::{
    gn_fibform, gn_poly, gn_radical, pnk_closed, pnk_from_gf, pnk_recurrence, FibPoly, PolyInY,
    SummandCountTable,
};
pub use error::{Error, Result};
pub use gaps::{gap_count_formula, gap_histogram_bruteforce, limit_p, pn_of_g, GapHistogram};
pub use kernel::{build_constructive, term_closed_form, BinRule, SequenceTable};
pub use numeric::{ln_nat, rat_to_f64, ratio_to_f64};
pub use sampler::{run_experiment, uniform_below, SampleConfig, SampleReport};
pub use stats::{
    asymptotic_moments, exact_mean, exact_variance, gaussian_diagnostics, DistributionSummary,
};

/// Arbitrary-precision non-negative integer.
pub type Nat = num_bigint::BigUint;

/// Exact rational in canonical form (positive denominator, reduced).
pub type Rat = num_rational::BigRational;

/// 1-based position in a sequence.
pub type Index = usize;
