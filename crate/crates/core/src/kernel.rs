//! Sequence generation: the Kentucky-2 recurrence and closed form, and the
//! exhaustive constructive builder for arbitrary `(s, b)` bin rules.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::{Index, Nat};

/// Largest number of terms [`build_constructive`] will produce.
pub const MAX_CONSTRUCTIVE_TERMS: usize = 40;

/// Upper bound on the number of legal subsets the constructive builder may
/// enumerate in a single step.
pub const CONSTRUCTIVE_SUBSET_BUDGET: usize = 20_000_000;

/// Bin structure of an `(s, b)`-Generacci rule: terms are grouped `bin_size`
/// at a time and two summands must sit more than `skip` bins apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BinRule {
    pub skip: usize,
    pub bin_size: usize,
}

impl BinRule {
    pub const KENTUCKY_2: BinRule = BinRule {
        skip: 1,
        bin_size: 2,
    };
    pub const FIBONACCI: BinRule = BinRule {
        skip: 1,
        bin_size: 1,
    };

    pub fn new(skip: usize, bin_size: usize) -> Result<Self> {
        if skip == 0 || bin_size == 0 {
            return Err(Error::invalid(format!(
                "bin rule needs s >= 1 and b >= 1, got s={skip}, b={bin_size}"
            )));
        }
        Ok(BinRule { skip, bin_size })
    }

    /// 1-based bin containing the 1-based `index`.
    pub fn bin_of(&self, index: Index) -> usize {
        index.div_ceil(self.bin_size)
    }

    /// Whether summands at `lower < upper` may appear together.
    pub fn separated(&self, lower: Index, upper: Index) -> bool {
        self.bin_of(upper) > self.bin_of(lower) + self.skip
    }
}

/// Append-only cache of Kentucky-2 terms `a_1, a_2, ...`.
///
/// Indices are 1-based. Once fully extended the table is only read, so a
/// shared `&SequenceTable` can be used from any number of threads.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SequenceTable {
    terms: Vec<Nat>,
}

impl SequenceTable {
    pub const RULE: BinRule = BinRule::KENTUCKY_2;

    pub fn new() -> Self {
        Self::default()
    }

    /// A table holding `a_1..=a_up_to`.
    pub fn with_terms(up_to: Index) -> Self {
        let mut table = Self::new();
        table.extend(up_to);
        table
    }

    /// A table whose largest term exceeds `m`, so every value `<= m` can be
    /// decomposed against it.
    pub fn covering(m: &Nat) -> Self {
        let mut table = Self::new();
        table.cover(m);
        table
    }

    /// Populate terms up to `up_to` via `a_n = n` for `n <= 4` and
    /// `a_n = a_{n-2} + 2 a_{n-4}` afterwards. Already cached terms are kept.
    pub fn extend(&mut self, up_to: Index) -> &mut Self {
        self.terms.reserve(up_to.saturating_sub(self.terms.len()));
        while self.terms.len() < up_to {
            let n = self.terms.len() + 1;
            let next = if n <= 4 {
                Nat::from(n)
            } else {
                &self.terms[n - 3] + (&self.terms[n - 5] << 1usize)
            };
            self.terms.push(next);
        }
        self
    }

    /// Extend until the largest cached term is strictly greater than `m`.
    pub fn cover(&mut self, m: &Nat) -> &mut Self {
        // a_{2k} = 2^k, so 2 * bits(m) + 2 is always enough.
        let want = 2 * usize::try_from(m.bits()).expect("bit length fits usize") + 2;
        self.extend(want.max(1));
        while !self.covers(m) {
            let next = self.terms.len() + 2;
            self.extend(next);
        }
        self
    }

    pub fn covers(&self, m: &Nat) -> bool {
        self.terms.last().is_some_and(|last| last > m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a_n`, or `None` if `n == 0` or not yet cached.
    pub fn term(&self, n: Index) -> Option<&Nat> {
        n.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    pub fn terms(&self) -> &[Nat] {
        &self.terms
    }

    /// 1-based bin of a 1-based index: `ceil(index / 2)`.
    pub fn bin(index: Index) -> usize {
        Self::RULE.bin_of(index)
    }

    /// Largest cached index `l <= limit` with `a_l <= value`.
    pub(crate) fn largest_at_most(&self, value: &Nat, limit: Index) -> Option<Index> {
        let limit = limit.min(self.terms.len());
        if limit == 0 {
            return None;
        }
        // A value with B bits lies in [2^(B-1), 2^B) = [a_{2B-2}, a_{2B}), so
        // the answer is 2B-2 or 2B-1 unless `limit` cuts in first.
        let bits = usize::try_from(value.bits()).ok()?;
        let mut idx = limit.min((2 * bits).saturating_sub(1));
        while idx > 0 && &self.terms[idx - 1] > value {
            idx -= 1;
        }
        (idx > 0).then_some(idx)
    }
}

/// `a_n` from the closed forms `a_{2k} = 2^k` and
/// `a_{2k-1} = (2^{k+1} + (-1)^k) / 3`.
///
/// # Panics
///
/// If `n == 0`.
pub fn term_closed_form(n: Index) -> Nat {
    assert!(n >= 1, "sequence indices are 1-based");
    if n.is_multiple_of(2) {
        return Nat::one() << (n / 2);
    }
    let k = n.div_ceil(2);
    let power = Nat::one() << (k + 1);
    let numerator = if k.is_multiple_of(2) {
        power + 1u32
    } else {
        power - 1u32
    };
    let (quotient, remainder) = (&numerator / 3u32, &numerator % 3u32);
    debug_assert!(remainder.is_zero());
    quotient
}

/// Terms produced by [`build_constructive`] together with the rule used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedSequence {
    pub rule: BinRule,
    pub terms: Vec<Nat>,
}

/// Build the first `count` terms of the `(s, b)`-Generacci sequence by
/// repeatedly adjoining the smallest positive integer that no legal sum of the
/// current terms reaches.
///
/// Representability is decided by listing every legal subset sum, so this is
/// independent of the greedy decomposition and serves as its oracle.
pub fn build_constructive(s: usize, b: usize, count: usize) -> Result<ConstructedSequence> {
    let rule = BinRule::new(s, b)?;
    if count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    if count > MAX_CONSTRUCTIVE_TERMS {
        return Err(Error::BudgetExceeded {
            what: "constructive sequence length",
            requested: count,
            limit: MAX_CONSTRUCTIVE_TERMS,
        });
    }

    let mut terms: Vec<u64> = Vec::with_capacity(count);
    while terms.len() < count {
        let mut sums = legal_subset_sums(&terms, rule)?;
        sums.sort_unstable();
        sums.dedup();
        let mut next = 1u64;
        for &s in sums.iter().skip_while(|&&s| s == 0) {
            if s != next {
                break;
            }
            next += 1;
        }
        terms.push(next);
    }

    Ok(ConstructedSequence {
        rule,
        terms: terms.into_iter().map(Nat::from).collect(),
    })
}

/// Every legal subset sum (with multiplicity) of `terms`, including the empty
/// sum.
fn legal_subset_sums(terms: &[u64], rule: BinRule) -> Result<Vec<u64>> {
    fn walk(
        terms: &[u64],
        rule: BinRule,
        max_bin: usize,
        acc: u64,
        out: &mut Vec<u64>,
    ) -> Result<()> {
        for index in 1..=terms.len() {
            let bin = rule.bin_of(index);
            if bin > max_bin {
                break;
            }
            let sum = acc.checked_add(terms[index - 1]).ok_or_else(|| {
                Error::InvariantViolation("constructive subset sum overflowed u64".into())
            })?;
            out.push(sum);
            if out.len() > CONSTRUCTIVE_SUBSET_BUDGET {
                return Err(Error::BudgetExceeded {
                    what: "constructive subset enumeration",
                    requested: out.len(),
                    limit: CONSTRUCTIVE_SUBSET_BUDGET,
                });
            }
            if bin > rule.skip + 1 {
                walk(terms, rule, bin - rule.skip - 1, sum, out)?;
            }
        }
        Ok(())
    }

    let mut out = vec![0];
    walk(terms, rule, usize::MAX, 0, &mut out)?;
    Ok(out)
}
