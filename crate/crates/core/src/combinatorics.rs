//! Exact combinatorial primitives: binomials, the exponential formula for
//! labeled structures built from connected components, parity splitting by
//! component count, and binomial inversion between total and fixed-point-free
//! sequences.
//!
//! Everything here is exact. The only floating-point entry point is
//! [`ratio_to_f64`], used at the boundary where exact ratios become reals.

use std::sync::{Arc, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type Count = BigUint;

/// Rows of Pascal's triangle below this index are cached; larger binomials
/// fall back to the multiplicative formula.
const PASCAL_CACHE_ROWS: usize = 512;

/// Published rows are never mutated, only appended.
static PASCAL: RwLock<Vec<Arc<[Count]>>> = RwLock::new(Vec::new());

fn pascal_row(n: usize) -> Arc<[Count]> {
    {
        let rows = PASCAL.read().unwrap_or_else(|e| e.into_inner());
        if let Some(row) = rows.get(n) {
            return Arc::clone(row);
        }
    }
    let mut rows = PASCAL.write().unwrap_or_else(|e| e.into_inner());
    while rows.len() <= n {
        let next: Vec<Count> = match rows.last() {
            None => vec![Count::one()],
            Some(prev) => {
                let mut row = Vec::with_capacity(prev.len() + 1);
                row.push(Count::one());
                row.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
                row.push(Count::one());
                row
            }
        };
        rows.push(next.into());
    }
    Arc::clone(&rows[n])
}

/// `n` choose `k`, zero whenever `n < 0`, `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Count {
    if n < 0 || k < 0 || k > n {
        return Count::zero();
    }
    let (n, k) = (n as usize, k as usize);
    if n < PASCAL_CACHE_ROWS {
        return pascal_row(n)[k].clone();
    }
    let k = k.min(n - k);
    let mut acc = Count::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The full row `binomial(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<Count> {
    if n < PASCAL_CACHE_ROWS {
        return pascal_row(n).to_vec();
    }
    let mut row = Vec::with_capacity(n + 1);
    let mut acc = Count::one();
    row.push(acc.clone());
    for k in 0..n {
        acc *= n - k;
        acc /= k + 1;
        row.push(acc.clone());
    }
    row
}

pub fn factorial(n: usize) -> Count {
    (1..=n).fold(Count::one(), |acc, i| acc * i)
}

/// Exact `num / den` rounded to the nearest double (up to one unit of
/// truncation in the 64-bit intermediate quotient).
///
/// Panics if `den` is zero.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "ratio with zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let mantissa = quotient.to_f64().expect("quotient fits in 66 bits");
    scale_pow2(mantissa, -shift)
}

fn scale_pow2(mut x: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        x *= 2f64.powi(1000);
        exp -= 1000;
    }
    while exp < -1000 {
        x *= 2f64.powi(-1000);
        exp += 1000;
    }
    x * 2f64.powi(exp as i32)
}

/// Number of allowed connected components on `m` labeled points, for
/// `1 <= m <= max_size()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentWeights {
    // index 0 is unused and always zero
    weights: Vec<Count>,
}

impl ComponentWeights {
    pub fn from_fn(max_size: usize, mut weight: impl FnMut(usize) -> Count) -> Self {
        let mut weights = Vec::with_capacity(max_size + 1);
        weights.push(Count::zero());
        weights.extend((1..=max_size).map(&mut weight));
        ComponentWeights { weights }
    }

    pub fn max_size(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight(&self, m: usize) -> &Count {
        &self.weights[m]
    }

    /// The same weights with the singleton weight replaced.
    pub fn with_singletons(mut self, c1: Count) -> Self {
        if self.weights.len() > 1 {
            self.weights[1] = c1;
        }
        self
    }

    /// Cycles: `(m-1)!` cyclic orders on `m` points.
    pub fn cycles(max_size: usize) -> Self {
        let mut fact = Count::one();
        Self::from_fn(max_size, |m| {
            if m > 1 {
                fact *= m - 1;
            }
            fact.clone()
        })
    }

    /// Cycles of odd length only.
    pub fn odd_cycles(max_size: usize) -> Self {
        let all = Self::cycles(max_size);
        Self::from_fn(max_size, |m| {
            if m % 2 == 1 {
                all.weight(m).clone()
            } else {
                Count::zero()
            }
        })
    }

    /// Blocks of a set partition: one block on any `m` points.
    pub fn blocks(max_size: usize) -> Self {
        Self::from_fn(max_size, |_| Count::one())
    }

    /// Cycles of length at most two (involutions).
    pub fn involution_cycles(max_size: usize) -> Self {
        Self::from_fn(
            max_size,
            |m| if m <= 2 { Count::one() } else { Count::zero() },
        )
    }

    /// Rooted labeled trees: `m^(m-1)`.
    pub fn rooted_trees(max_size: usize) -> Self {
        Self::from_fn(max_size, |m| Count::from(m).pow(m as u32 - 1))
    }

    /// Unrooted labeled trees: `m^(m-2)` (one tree on a single vertex).
    pub fn unrooted_trees(max_size: usize) -> Self {
        Self::from_fn(max_size, |m| {
            if m == 1 {
                Count::one()
            } else {
                Count::from(m).pow(m as u32 - 2)
            }
        })
    }
}

/// Runs `G_n = Σ_{m=1..n} C(n-1, m-1) w_m G_{n-m}` with `G_0 = 1` over signed
/// weights.
fn exp_formula_signed(weights: &[BigInt], n_max: usize) -> Vec<BigInt> {
    let mut totals: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    totals.push(BigInt::one());
    for n in 1..=n_max {
        let row = binomial_row(n - 1);
        let mut acc = BigInt::zero();
        for m in 1..=n {
            if weights[m].is_zero() || totals[n - m].is_zero() {
                continue;
            }
            let ways = BigInt::from_biguint(Sign::Plus, row[m - 1].clone());
            acc += ways * &weights[m] * &totals[n - m];
        }
        totals.push(acc);
    }
    totals
}

fn check_weights(weights: &ComponentWeights, n_max: usize) {
    assert!(
        weights.max_size() >= n_max,
        "component weights defined up to {} but {} requested",
        weights.max_size(),
        n_max
    );
}

/// Counts `G_0..=G_{n_max}` of structures that are sets of components, where
/// `weights.weight(m)` components may sit on any `m` labeled points.
///
/// Panics if the weights are not defined up to `n_max`.
pub fn exp_formula_counts(weights: &ComponentWeights, n_max: usize) -> Vec<Count> {
    check_weights(weights, n_max);
    let mut totals: Vec<Count> = Vec::with_capacity(n_max + 1);
    totals.push(Count::one());
    for n in 1..=n_max {
        let row = binomial_row(n - 1);
        let mut acc = Count::zero();
        for m in 1..=n {
            let w = weights.weight(m);
            if w.is_zero() || totals[n - m].is_zero() {
                continue;
            }
            acc += &row[m - 1] * w * &totals[n - m];
        }
        totals.push(acc);
    }
    totals
}

/// Structures split by the parity of their number of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySplit {
    pub even: Vec<Count>,
    pub odd: Vec<Count>,
}

/// Splits [`exp_formula_counts`] by the parity of the component count.
///
/// Runs the recurrence with weights `w` and `-w`; the second run weighs each
/// structure by `(-1)^components`, so half the sum and half the difference
/// are the even and odd totals.
pub fn parity_split_counts(weights: &ComponentWeights, n_max: usize) -> ParitySplit {
    check_weights(weights, n_max);
    let plus: Vec<BigInt> = weights
        .weights
        .iter()
        .map(|w| BigInt::from_biguint(Sign::Plus, w.clone()))
        .collect();
    let minus: Vec<BigInt> = plus.iter().map(|w| -w).collect();
    let total = exp_formula_signed(&plus, n_max);
    let signed = exp_formula_signed(&minus, n_max);

    let two = BigInt::from(2);
    let halve = |x: BigInt| -> Count {
        debug_assert!((&x % &two).is_zero());
        (x / &two)
            .to_biguint()
            .expect("parity class count is nonnegative")
    };
    let even = total
        .iter()
        .zip(&signed)
        .map(|(t, s)| halve(t + s))
        .collect();
    let odd = total
        .iter()
        .zip(&signed)
        .map(|(t, s)| halve(t - s))
        .collect();
    ParitySplit { even, odd }
}

/// Inverts `G_n = Σ_k C(n,k) c^k D_{n-k}`:
/// `D_n = Σ_k (-1)^k C(n,k) c^k G_{n-k}`.
///
/// Fails with [`Error::DecompositionViolation`] at the first negative `D_n`.
pub fn binomial_inversion(totals: &[Count], c: u64, n_max: usize) -> Result<Vec<Count>> {
    assert!(
        totals.len() > n_max,
        "totals defined up to {}",
        totals.len() - 1
    );
    let mut powers = Vec::with_capacity(n_max + 1);
    let mut p = BigInt::one();
    for _ in 0..=n_max {
        powers.push(p.clone());
        p *= c;
    }
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let row = binomial_row(n);
        let mut acc = BigInt::zero();
        for k in 0..=n {
            let term = BigInt::from_biguint(Sign::Plus, &row[k] * &totals[n - k]) * &powers[k];
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        match acc.to_biguint() {
            Some(d) => out.push(d),
            None => return Err(Error::DecompositionViolation { c, n }),
        }
    }
    Ok(out)
}

/// The forward transform `G_n = Σ_k C(n,k) c^k D_{n-k}`.
pub fn binomial_transform(free: &[Count], c: u64, n_max: usize) -> Vec<Count> {
    (0..=n_max)
        .map(|n| {
            let row = binomial_row(n);
            let mut power = Count::one();
            let mut acc = Count::zero();
            for k in 0..=n {
                acc += &row[k] * &power * &free[n - k];
                power *= c;
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn cycle_count(p: &[usize]) -> usize {
        let mut seen = vec![false; p.len()];
        let mut cycles = 0;
        for s in 0..p.len() {
            if !seen[s] {
                cycles += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = p[x];
                }
            }
        }
        cycles
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), c(6));
        assert_eq!(binomial(5 - 1, 2 - 1), c(4));
        assert_eq!(binomial(3, 5), c(0));
        assert_eq!(binomial(-1, 0), c(0));
        assert_eq!(binomial(3, -1), c(0));
        assert_eq!(binomial(0, 0), c(1));
    }

    #[test]
    fn binomial_symmetry_up_to_200() {
        for n in 0..=200i64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n, n - k), "({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_beyond_cache_matches_pascal_recurrence() {
        let n = PASCAL_CACHE_ROWS as i64 + 7;
        for k in [0, 1, 2, 17, 200, n / 2, n - 1, n] {
            assert_eq!(
                binomial(n, k),
                binomial(n - 1, k - 1) + binomial(n - 1, k),
                "k = {k}"
            );
        }
        assert_eq!(binomial_row(n as usize)[5], binomial(n, 5));
    }

    #[test]
    fn derangements_via_exp_formula() {
        let w = ComponentWeights::cycles(8).with_singletons(c(0));
        assert_eq!(exp_formula_counts(&w, 3)[3], c(2));
    }

    #[test]
    fn permutations_via_exp_formula() {
        let g = exp_formula_counts(&ComponentWeights::cycles(8), 8);
        for (n, v) in g.iter().enumerate() {
            assert_eq!(*v, factorial(n));
        }
    }

    #[test]
    fn singleton_free_partitions_of_four() {
        // Oracle: restricted growth strings of length 4, dropping any with a
        // singleton block.
        let mut brute = 0;
        for code in 0..4usize.pow(4) {
            let s: Vec<usize> = (0..4).map(|i| (code / 4usize.pow(i)) % 4).collect();
            let rgs = s[0] == 0 && (1..4).all(|i| s[i] <= *s[..i].iter().max().unwrap() + 1);
            if !rgs {
                continue;
            }
            let singleton = (0..4).any(|b| s.iter().filter(|&&x| x == b).count() == 1);
            if !singleton {
                brute += 1;
            }
        }
        assert_eq!(brute, 4);
        let w = ComponentWeights::blocks(4).with_singletons(c(0));
        assert_eq!(exp_formula_counts(&w, 4)[4], c(brute));
    }

    #[test]
    fn parity_split_against_cycle_counts() {
        for n in 0..=6 {
            let (mut even, mut odd) = (0u64, 0u64);
            for p in permutations(n) {
                if cycle_count(&p) % 2 == 0 {
                    even += 1;
                } else {
                    odd += 1;
                }
            }
            let split = parity_split_counts(&ComponentWeights::cycles(6), 6);
            assert_eq!(split.even[n], c(even), "n = {n}");
            assert_eq!(split.odd[n], c(odd), "n = {n}");
        }
        let split = parity_split_counts(&ComponentWeights::cycles(3), 3);
        assert_eq!((split.even[3].clone(), split.odd[3].clone()), (c(3), c(3)));
        assert_eq!((split.even[0].clone(), split.odd[0].clone()), (c(1), c(0)));
    }

    #[test]
    fn parity_split_sums_to_total() {
        let registered = [
            ComponentWeights::cycles(30),
            ComponentWeights::cycles(30).with_singletons(c(0)),
            ComponentWeights::odd_cycles(30),
            ComponentWeights::odd_cycles(30).with_singletons(c(0)),
            ComponentWeights::blocks(30),
            ComponentWeights::blocks(30).with_singletons(c(0)),
            ComponentWeights::involution_cycles(30),
            ComponentWeights::rooted_trees(30),
            ComponentWeights::unrooted_trees(30),
        ];
        for w in &registered {
            let total = exp_formula_counts(w, 30);
            let split = parity_split_counts(w, 30);
            for n in 0..=30 {
                assert_eq!(&split.even[n] + &split.odd[n], total[n]);
            }
        }
    }

    #[test]
    fn singleton_weight_shift_is_binomial_convolution() {
        for base in [
            ComponentWeights::cycles(20),
            ComponentWeights::blocks(20),
            ComponentWeights::rooted_trees(20),
        ] {
            let free = exp_formula_counts(&base.clone().with_singletons(c(0)), 20);
            for t in [1u64, 2] {
                let shifted = base.clone().with_singletons(c(t));
                let g = exp_formula_counts(&shifted, 20);
                assert_eq!(g, binomial_transform(&free, t, 20));
            }
        }
    }

    #[test]
    fn inversion_recovers_derangements() {
        let g: Vec<Count> = (0..=5).map(factorial).collect();
        let brute = permutations(5)
            .iter()
            .filter(|p| p.iter().enumerate().all(|(i, &x)| i != x))
            .count() as u64;
        assert_eq!(brute, 44);
        assert_eq!(binomial_inversion(&g, 1, 5).unwrap()[5], c(brute));
    }

    #[test]
    fn inversion_with_zero_is_identity() {
        let g: Vec<Count> = (0..=10u64).map(|n| c(n * n + 3)).collect();
        assert_eq!(binomial_inversion(&g, 0, 10).unwrap(), g);
    }

    #[test]
    fn inversion_of_rooted_forests() {
        let g: Vec<Count> = (0..=6u32)
            .map(|m| {
                if m == 0 {
                    c(1)
                } else {
                    c(m as u64 + 1).pow(m - 1)
                }
            })
            .collect();
        let d = binomial_inversion(&g, 1, 6).unwrap();
        assert_eq!(d[2], c(2));
        let engine =
            exp_formula_counts(&ComponentWeights::rooted_trees(6).with_singletons(c(0)), 6);
        assert_eq!(d, engine);
    }

    #[test]
    fn inversion_flags_non_decomposable_input() {
        // G = 1, 0, ...: D_1 = G_1 - C G_0 = -1
        let g = vec![c(1), c(0), c(5)];
        assert_eq!(
            binomial_inversion(&g, 1, 2),
            Err(Error::DecompositionViolation { c: 1, n: 1 })
        );
    }

    #[test]
    fn ratio_conversion() {
        assert_eq!(ratio_to_f64(&c(1), &c(3)), 1.0 / 3.0);
        assert_eq!(ratio_to_f64(&c(0), &c(3)), 0.0);
        let big = factorial(300);
        let ratio = ratio_to_f64(&(&big * 7u32), &(&big * 2u32));
        assert_eq!(ratio, 3.5);
        let tiny = ratio_to_f64(&c(1), &factorial(100));
        assert!((tiny / 1.071_510_288_125_467e-158 - 1.0).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn inversion_undoes_forward_transform(
            free in proptest::collection::vec(0u64..1_000_000, 31),
            cc in 1u64..=3,
        ) {
            let free: Vec<Count> = free.into_iter().map(Count::from).collect();
            let g = binomial_transform(&free, cc, 30);
            prop_assert_eq!(binomial_inversion(&g, cc, 30).unwrap(), free);
        }
    }
}
