//! Brute-force oracles built straight from the bin rule, sharing no code with
//! the library beyond its public types.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// `a_n` for `n <= 120`: `a_{2k} = 2^k` and `a_{2k-1}` is `2^{k+1} / 3`
/// rounded to the nearest integer.
pub fn term(n: usize) -> u128 {
    assert!((1..=120).contains(&n));
    if n.is_multiple_of(2) {
        1u128 << (n / 2)
    } else {
        let k = n.div_ceil(2);
        ((1u128 << (k + 1)) + 1) / 3
    }
}

pub fn bin(index: usize) -> usize {
    index.div_ceil(2)
}

/// Every legal index set drawn from `1..=max_index`, with its value.
pub fn legal_sets(max_index: usize) -> Vec<(Vec<usize>, u128)> {
    fn walk(
        next: usize,
        max_index: usize,
        current: &mut Vec<usize>,
        sum: u128,
        out: &mut Vec<(Vec<usize>, u128)>,
    ) {
        out.push((current.clone(), sum));
        for idx in next..=max_index {
            if let Some(&last) = current.last() {
                if bin(idx) < bin(last) + 2 {
                    continue;
                }
            }
            current.push(idx);
            walk(idx + 1, max_index, current, sum + term(idx), out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    walk(1, max_index, &mut Vec::new(), 0, &mut out);
    out
}

/// `value -> decomposition` over every legal set with indices `<= 2n`, which
/// covers exactly `[0, a_{2n+1})`. Panics if any value repeats.
pub fn unique_decompositions(n: usize) -> BTreeMap<u128, Vec<usize>> {
    let mut map = BTreeMap::new();
    for (set, value) in legal_sets(2 * n) {
        assert!(
            map.insert(value, set).is_none(),
            "{value} represented twice"
        );
    }
    map
}

/// `p_{n,k}` by counting summands of every legal set with indices `<= 2n`.
pub fn pnk_bruteforce(n: usize) -> Vec<u128> {
    let mut row = vec![0u128; n.div_ceil(2) + 1];
    for (set, _) in legal_sets(2 * n) {
        row[set.len()] += 1;
    }
    row
}

/// Consecutive-index gap counts over every legal set with indices `<= 2n`.
pub fn gaps_bruteforce(n: usize) -> BTreeMap<usize, u128> {
    let mut counts = BTreeMap::new();
    for (set, _) in legal_sets(2 * n) {
        for w in set.windows(2) {
            *counts.entry(w[1] - w[0]).or_insert(0) += 1;
        }
    }
    counts
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Non-negative integer solutions of `y_1 + ... + y_parts = total`.
pub fn compositions(total: usize, parts: usize) -> u128 {
    if parts == 0 {
        return u128::from(total == 0);
    }
    if parts == 1 {
        return 1;
    }
    (0..=total)
        .map(|first| compositions(total - first, parts - 1))
        .sum()
}

/// `k`-subsets of `{1..n}` with no two consecutive elements.
pub fn nonadjacent_subsets(n: usize, k: usize) -> u128 {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k && mask & (mask >> 1) == 0)
        .count() as u128
}

pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    (0..len)
        .map(|i| (p.get(i).unwrap_or(&0.0) - q.get(i).unwrap_or(&0.0)).abs())
        .sum::<f64>()
        / 2.0
}
