//! Counting `k`-subsets of `[n]` by element sum, plus the composition and
//! partition counts that relate to it.
//!
//! `E(r, k, n)` is the number of `k`-subsets of `[n]` whose elements sum to
//! `r`. [`SubsetSumTable`] holds one layer `(k, r)` of the DP for a fixed `n`
//! and can be advanced one element at a time; the free functions answer
//! single queries and return zero for any out-of-range argument.

use num_traits::Zero;

use crate::combinatorics::{binomial, factorial, Count};

/// `k(k+1)/2`, the smallest sum of `k` distinct positive integers.
fn min_sum(k: usize) -> usize {
    k * (k + 1) / 2
}

/// `kn - k(k-1)/2`, the largest sum of a `k`-subset of `[n]`.
fn max_sum(k: usize, n: usize) -> usize {
    if k > n {
        0
    } else {
        k * n - k * (k.saturating_sub(1)) / 2
    }
}

/// Layer `E(·, ·, n)` of the subset-sum DP, truncated to `r <= r_max` and
/// `k <= k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumTable {
    n: usize,
    r_max: usize,
    k_max: usize,
    // rows[k][r]
    rows: Vec<Vec<Count>>,
}

impl SubsetSumTable {
    /// The empty layer `n = 0`.
    pub fn new(r_max: usize, k_max: usize) -> Self {
        let mut rows = vec![vec![Count::zero(); r_max + 1]; k_max + 1];
        rows[0][0] = Count::from(1u32);
        SubsetSumTable {
            n: 0,
            r_max,
            k_max,
            rows,
        }
    }

    /// Largest `k` that can contribute to some `r <= r_max`.
    pub fn default_k_max(r_max: usize) -> usize {
        let mut k = 0;
        while min_sum(k + 1) <= r_max {
            k += 1;
        }
        k
    }

    /// Layer `n`, with `k_max` defaulting to [`Self::default_k_max`] (and
    /// never more than `n`).
    pub fn build(n: usize, r_max: usize, k_max: Option<usize>) -> Self {
        let k_max = k_max.unwrap_or_else(|| Self::default_k_max(r_max)).min(n);
        let mut table = Self::new(r_max, k_max);
        while table.n < n {
            table.push_element();
        }
        table
    }

    /// Every entry of layer `n`: `r` up to `n(n+1)/2`, `k` up to `n`.
    pub fn full(n: usize) -> Self {
        Self::build(n, min_sum(n), Some(n))
    }

    /// Advances from layer `n` to `n + 1` by allowing element `n + 1`.
    pub fn push_element(&mut self) {
        let x = self.n + 1;
        for k in (1..=self.k_max.min(x)).rev() {
            let (lower, upper) = self.rows.split_at_mut(k);
            let prev = &lower[k - 1];
            let cur = &mut upper[0];
            // previous row is supported on sums of k-1 elements of [x-1]
            let lo = x + min_sum(k - 1);
            let hi = self.r_max.min(x + max_sum(k - 1, x - 1));
            for r in lo..=hi {
                let add = &prev[r - x];
                if !add.is_zero() {
                    cur[r] += add;
                }
            }
        }
        self.n = x;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `E(r, k, n)`, or `None` when `(r, k)` lies outside the stored window.
    pub fn get(&self, r: usize, k: usize) -> Option<&Count> {
        self.rows.get(k).and_then(|row| row.get(r))
    }
}

/// `E(r, k, n)`: the number of `k`-subsets of `[n]` with element sum `r`.
pub fn count_subsets(r: i64, k: i64, n: i64) -> Count {
    if r < 0 || k < 0 || n < 0 || k > n {
        return Count::zero();
    }
    let (r, k, n) = (r as usize, k as usize, n as usize);
    if r < min_sum(k) || r > max_sum(k, n) {
        return Count::zero();
    }
    SubsetSumTable::build(n, r, Some(k))
        .get(r, k)
        .cloned()
        .unwrap_or_default()
}

/// Compositions of `r` into exactly `k` positive parts: `C(r-1, k-1)`.
///
/// The empty composition of 0 counts once.
pub fn count_compositions_unrestricted(r: i64, k: i64) -> Count {
    if r == 0 && k == 0 {
        return Count::from(1u32);
    }
    if k <= 0 || r < k {
        return Count::zero();
    }
    binomial(r - 1, k - 1)
}

/// Partitions of `r` into exactly `k` positive parts.
pub fn count_partitions(r: i64, k: i64) -> Count {
    count_partitions_min_part(r, k, 0)
}

/// Partitions of `r` into exactly `k` parts, each part greater than `n`.
///
/// Recurses on the smallest part: either it equals `n + 1` and is removed,
/// or every part exceeds `n + 1` and one is subtracted from each.
pub fn count_partitions_min_part(r: i64, k: i64, n: i64) -> Count {
    if r < 0 || k < 0 {
        return Count::zero();
    }
    let (r, k) = (r as usize, k as usize);
    let step = n.max(0) as usize + 1;
    // q[j][s] = partitions of s into exactly j parts, all >= step
    let mut q = vec![vec![Count::zero(); r + 1]; k + 1];
    q[0][0] = Count::from(1u32);
    for j in 1..=k {
        for s in 0..=r {
            let mut v = Count::zero();
            if s >= step {
                v += &q[j - 1][s - step];
            }
            if s >= j {
                v += &q[j][s - j];
            }
            q[j][s] = v;
        }
    }
    std::mem::take(&mut q[k][r])
}

/// Compositions of `r` into exactly `k` distinct parts, each at most `n`
/// (`None` for no bound): `k! · E(r, k, n)`.
pub fn count_compositions_distinct(r: i64, k: i64, n: Option<i64>) -> Count {
    if k < 0 {
        return Count::zero();
    }
    let bound = n.unwrap_or(r);
    factorial(k as usize) * count_subsets(r, k, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn brute_subsets(r: usize, k: usize, n: usize) -> u64 {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .filter(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| i + 1)
                    .sum::<usize>()
                    == r
            })
            .count() as u64
    }

    fn brute_partitions(r: usize, k: usize, min_part: usize) -> u64 {
        // nonincreasing sequences of k parts >= min_part summing to r
        fn go(r: usize, k: usize, max: usize, min: usize) -> u64 {
            if k == 0 {
                return (r == 0) as u64;
            }
            (min..=max.min(r)).map(|p| go(r - p, k - 1, p, min)).sum()
        }
        go(r, k, r, min_part.max(1))
    }

    #[test]
    fn subset_examples() {
        assert_eq!(count_subsets(7, 1, 15), c(1));
        assert_eq!(count_subsets(6, 3, 3), c(1));
        assert_eq!(count_subsets(5, 2, 4), c(2));
        assert_eq!(brute_subsets(5, 2, 4), 2);
        assert_eq!(count_subsets(0, 0, 5), c(1));
        assert_eq!(count_subsets(-1, 1, 5), c(0));
        assert_eq!(count_subsets(3, 4, 3), c(0));
    }

    #[test]
    fn single_element_subsets() {
        for n in 0..20 {
            for r in -2..25 {
                let expected = (r > 0 && r <= n) as u64;
                assert_eq!(count_subsets(r, 1, n), c(expected));
            }
        }
    }

    #[test]
    fn table_matches_brute_force() {
        for n in 0..=10 {
            let table = SubsetSumTable::full(n);
            for k in 0..=n {
                for r in 0..=min_sum(n) {
                    assert_eq!(table.get(r, k).unwrap(), &c(brute_subsets(r, k, n)));
                }
            }
        }
    }

    #[test]
    fn table_zero_outside_support() {
        let table = SubsetSumTable::full(12);
        for k in 0..=12 {
            for r in 0..=table.r_max() {
                if r < min_sum(k) || r > max_sum(k, 12) {
                    assert!(table.get(r, k).unwrap().is_zero(), "({r},{k})");
                }
            }
        }
    }

    #[test]
    fn truncated_table_agrees_with_full() {
        let full = SubsetSumTable::full(15);
        let part = SubsetSumTable::build(15, 30, None);
        assert_eq!(part.k_max(), 7);
        for k in 0..=part.k_max() {
            for r in 0..=30 {
                assert_eq!(part.get(r, k), full.get(r, k));
            }
        }
        assert_eq!(part.get(31, 1), None);
    }

    #[test]
    fn default_k_max() {
        assert_eq!(SubsetSumTable::default_k_max(0), 0);
        assert_eq!(SubsetSumTable::default_k_max(1), 1);
        assert_eq!(SubsetSumTable::default_k_max(5), 2);
        assert_eq!(SubsetSumTable::default_k_max(6), 3);
        assert_eq!(SubsetSumTable::default_k_max(1000), 44);
    }

    #[test]
    fn composition_examples() {
        assert_eq!(count_compositions_unrestricted(5, 2), c(4));
        for r in 1..30 {
            assert_eq!(count_compositions_unrestricted(r, 1), c(1));
        }
        assert_eq!(count_compositions_unrestricted(3, 5), c(0));
        assert_eq!(count_compositions_unrestricted(3, 0), c(0));
        assert_eq!(count_compositions_unrestricted(0, 0), c(1));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(count_partitions(5, 2), c(2));
        for r in 1..30 {
            assert_eq!(count_partitions(r, 1), c(1));
        }
        assert_eq!(count_partitions(0, 0), c(1));
        assert_eq!(
            count_partitions(7, 2) * 2u32,
            count_compositions_distinct(8, 2, None)
        );
    }

    #[test]
    fn partitions_match_brute_force() {
        for r in 0..=25usize {
            for k in 0..=6usize {
                for n in 0..=5usize {
                    assert_eq!(
                        count_partitions_min_part(r as i64, k as i64, n as i64),
                        c(brute_partitions(r, k, n + 1)),
                        "({r},{k},{n})"
                    );
                }
            }
        }
    }

    #[test]
    fn min_part_examples() {
        assert_eq!(count_partitions_min_part(7, 2, 2), c(1));
        assert_eq!(count_partitions_min_part(7, 2, 2), count_partitions(3, 2));
        for r in 0..20 {
            for k in 0..5 {
                assert_eq!(count_partitions_min_part(r, k, 0), count_partitions(r, k));
            }
        }
        assert_eq!(count_partitions_min_part(5, 3, 2), c(0));
    }

    #[test]
    fn distinct_composition_examples() {
        assert_eq!(count_compositions_distinct(5, 2, Some(4)), c(4));
        assert_eq!(count_compositions_distinct(6, 3, Some(3)), c(6));
        assert_eq!(count_compositions_distinct(3, 2, None), c(2));
    }
}
