//! Kentucky-2 legal decompositions: greedy construction, legality checks,
//! exhaustive enumeration, and gap extraction.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::SequenceTable;
use crate::{Index, Nat};

/// Largest index [`enumerate_all`] will search over.
pub const MAX_ENUMERATION_INDEX: Index = 50;

/// A legal decomposition `value = a_{l_1} + ... + a_{l_k}` with
/// `l_1 < ... < l_k`. Zero is the empty decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Decomposition {
    pub indices: Vec<Index>,
    #[serde(serialize_with = "crate::numeric::serialize_nat")]
    pub value: Nat,
}

impl Decomposition {
    pub fn summand_count(&self) -> usize {
        self.indices.len()
    }

    pub fn bins(&self) -> Vec<usize> {
        self.indices
            .iter()
            .map(|&i| SequenceTable::bin(i))
            .collect()
    }

    /// The summands `a_{l_j}`, read from `table`.
    pub fn terms(&self, table: &SequenceTable) -> Option<Vec<Nat>> {
        self.indices
            .iter()
            .map(|&i| table.term(i).cloned())
            .collect()
    }

    /// Sum of the summands, recomputed from `table`.
    pub fn evaluate(&self, table: &SequenceTable) -> Option<Nat> {
        self.indices
            .iter()
            .try_fold(Nat::zero(), |acc, &i| table.term(i).map(|t| acc + t))
    }
}

/// Consecutive index differences of a decomposition, in decomposition order.
/// Compare with [`GapList::multiset`] when order should not matter.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct GapList {
    pub gaps: Vec<usize>,
}

impl GapList {
    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn multiset(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for &g in &self.gaps {
            *counts.entry(g).or_insert(0) += 1;
        }
        counts
    }

    /// Gaps preceded by the wait `l_1` before the first summand.
    pub fn with_wait(d: &Decomposition) -> Self {
        let mut list = gaps_of(d);
        if let Some(&first) = d.indices.first() {
            list.gaps.insert(0, first);
        }
        list
    }
}

/// Whether `indices` (sorted ascending, 1-based) is a legal index set:
/// consecutive summands sit at least two bins apart.
pub fn is_legal(indices: &[Index]) -> Result<bool> {
    if indices.contains(&0) {
        return Err(Error::invalid("indices are 1-based"));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("indices must be strictly increasing"));
    }
    Ok(indices
        .windows(2)
        .all(|w| SequenceTable::bin(w[1]) >= SequenceTable::bin(w[0]) + 2))
}

/// Greedy decomposition of `m` against a table that already covers it.
///
/// Take the largest `a_l <= remainder`; the next summand then has index at
/// most `l - 4` for even `l` and `l - 3` for odd `l`.
pub fn decompose(table: &SequenceTable, m: &Nat) -> Result<Decomposition> {
    let indices = greedy_indices(table, m)?;
    Ok(Decomposition {
        indices,
        value: m.clone(),
    })
}

/// Number of summands in the decomposition of `m`, without materialising it.
pub fn summand_count(table: &SequenceTable, m: &Nat) -> Result<usize> {
    let mut remainder = m.clone();
    let mut limit = table.len();
    let mut count = 0;
    while !remainder.is_zero() {
        let idx = next_index(table, &remainder, limit)?;
        remainder -= &table.terms()[idx - 1];
        count += 1;
        limit = index_limit_below(idx);
    }
    Ok(count)
}

fn greedy_indices(table: &SequenceTable, m: &Nat) -> Result<Vec<Index>> {
    if !table.covers(m) && !m.is_zero() {
        return Err(Error::NotCovered {
            covered: table.terms().last().map(Nat::to_string).unwrap_or_default(),
            requested: m.to_string(),
        });
    }
    let mut remainder = m.clone();
    let mut limit = table.len();
    let mut indices = Vec::new();
    while !remainder.is_zero() {
        let idx = next_index(table, &remainder, limit)?;
        remainder -= &table.terms()[idx - 1];
        indices.push(idx);
        limit = index_limit_below(idx);
    }
    indices.reverse();
    Ok(indices)
}

fn next_index(table: &SequenceTable, remainder: &Nat, limit: Index) -> Result<Index> {
    table.largest_at_most(remainder, limit).ok_or_else(|| {
        Error::InvariantViolation(format!(
            "greedy step found no term <= {remainder} at or below index {limit}"
        ))
    })
}

fn index_limit_below(idx: Index) -> Index {
    if idx.is_multiple_of(2) {
        idx.saturating_sub(4)
    } else {
        idx.saturating_sub(3)
    }
}

impl SequenceTable {
    /// Extend the table as needed and decompose `m`.
    pub fn decompose(&mut self, m: &Nat) -> Decomposition {
        self.cover(m);
        decompose(self, m).expect("table covers m after cover()")
    }
}

/// Every legal index set over `a_1..=a_max_index` whose terms sum to `m`,
/// found by depth-first search over bins (none / first / second element of
/// each bin, skipping the neighbouring bin after a pick).
pub fn enumerate_all(m: &Nat, max_index: Index) -> Result<Vec<Decomposition>> {
    if max_index > MAX_ENUMERATION_INDEX {
        return Err(Error::BudgetExceeded {
            what: "exhaustive decomposition search",
            requested: max_index,
            limit: MAX_ENUMERATION_INDEX,
        });
    }
    let Some(target) = m.to_u64() else {
        return Ok(Vec::new());
    };
    let table = SequenceTable::with_terms(max_index);
    let terms: Vec<u64> = table
        .terms()
        .iter()
        .map(|t| t.to_u64().expect("terms below index 50 fit u64"))
        .collect();
    let bins = max_index.div_ceil(2);

    // best[k]: largest legal sum using bins 1..=k.
    let mut best = vec![0u64; bins + 1];
    for k in 1..=bins {
        let top = bin_members(k, max_index)
            .map(|i| terms[i - 1])
            .max()
            .unwrap_or(0);
        let with = top + if k >= 2 { best[k - 2] } else { 0 };
        best[k] = best[k - 1].max(with);
    }

    let mut search = BinSearch {
        terms: &terms,
        best: &best,
        max_index,
        target,
        picked: Vec::new(),
        found: Vec::new(),
    };
    search.walk(bins, 0);

    Ok(search
        .found
        .into_iter()
        .map(|mut indices| {
            indices.reverse();
            Decomposition {
                indices,
                value: m.clone(),
            }
        })
        .collect())
}

fn bin_members(bin: usize, max_index: Index) -> impl Iterator<Item = Index> {
    [2 * bin - 1, 2 * bin]
        .into_iter()
        .filter(move |&i| i <= max_index)
}

struct BinSearch<'a> {
    terms: &'a [u64],
    best: &'a [u64],
    max_index: Index,
    target: u64,
    picked: Vec<Index>,
    found: Vec<Vec<Index>>,
}

impl BinSearch<'_> {
    fn walk(&mut self, bin: usize, acc: u64) {
        if acc == self.target {
            self.found.push(self.picked.clone());
            return;
        }
        if bin == 0 || acc + self.best[bin] < self.target {
            return;
        }
        self.walk(bin - 1, acc);
        for idx in bin_members(bin, self.max_index) {
            let sum = acc + self.terms[idx - 1];
            if sum > self.target {
                continue;
            }
            self.picked.push(idx);
            self.walk(bin.saturating_sub(2), sum);
            self.picked.pop();
        }
    }
}

/// Gaps `l_2 - l_1, ..., l_k - l_{k-1}`; the wait before `l_1` is excluded.
pub fn gaps_of(d: &Decomposition) -> GapList {
    GapList {
        gaps: d.indices.windows(2).map(|w| w[1] - w[0]).collect(),
    }
}
