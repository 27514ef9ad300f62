//! `f(n, r)`: the number of structures of size `n` whose fixed-point labels
//! sum to `r`.
//!
//! The exact profile uses `f(n, 0) = D_n` and, for `r >= 1`,
//! `f(n, r) = Σ_{k >= 1} E(r, k, n) g(k, n)`, summing only over `k` with
//! `k(k+1)/2 <= r`.

mod brute_force;

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::asymptotics::{predicted_scaled, KernelParams};
use crate::combinatorics::{ratio_to_f64, Count};
use crate::error::{Error, Result};
use crate::families::{FamilyCounts, FamilyId};
use crate::subset_sum::SubsetSumTable;

/// Largest possible fixed-point label sum on `[n]`.
pub fn max_label_sum(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Sparse `r ↦ f(n, r)` over `0..=r_max`; zeros are not stored except at
/// `r = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    family: FamilyId,
    n: usize,
    r_max: usize,
    values: BTreeMap<usize, Count>,
}

impl Profile {
    fn from_dense(family: FamilyId, n: usize, dense: Vec<Count>) -> Self {
        let r_max = dense.len() - 1;
        let values = dense
            .into_iter()
            .enumerate()
            .filter(|(r, v)| *r == 0 || !v.is_zero())
            .collect();
        Profile {
            family,
            n,
            r_max,
            values,
        }
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest `r` covered.
    pub fn r_max(&self) -> usize {
        self.r_max
    }

    /// Whether every `r` up to `n(n+1)/2` is covered.
    pub fn is_complete(&self) -> bool {
        self.r_max == max_label_sum(self.n)
    }

    /// `f(n, r)`. Panics if `r` lies in the support but beyond `r_max`.
    pub fn value(&self, r: usize) -> Count {
        assert!(
            r <= self.r_max || r > max_label_sum(self.n),
            "r = {r} beyond computed range {}",
            self.r_max
        );
        self.values.get(&r).cloned().unwrap_or_default()
    }

    /// Nonzero entries plus `r = 0`, in increasing `r`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Count)> {
        self.values.iter().map(|(r, v)| (*r, v))
    }

    /// `f(n, 0..=r_max)` with zeros filled in.
    pub fn dense(&self) -> Vec<Count> {
        (0..=self.r_max).map(|r| self.value(r)).collect()
    }

    /// `Σ_r f(n, r)` over the covered range.
    pub fn total(&self) -> Count {
        self.values.values().sum()
    }
}

/// Exact profile up to `r_max` (default and cap: `n(n+1)/2`).
pub fn exact_profile(family: FamilyId, n: usize, r_max: Option<usize>) -> Profile {
    exact_profile_with(&FamilyCounts::new(family, n), n, r_max)
}

/// [`exact_profile`] reusing precomputed family counts.
pub fn exact_profile_with(counts: &FamilyCounts, n: usize, r_max: Option<usize>) -> Profile {
    let r_max = r_max.unwrap_or(max_label_sum(n)).min(max_label_sum(n));
    let table = SubsetSumTable::build(n, r_max, None);
    let fixed_sets: Vec<Count> = (0..=table.k_max())
        .map(|k| counts.fixed_set(k, n).expect("k <= n"))
        .collect();
    let mut dense: Vec<Count> = (0..=r_max)
        .into_par_iter()
        .map(|r| {
            let mut f = Count::zero();
            for (k, g) in fixed_sets.iter().enumerate().skip(1) {
                if k * (k + 1) / 2 > r {
                    break;
                }
                let e = table.get(r, k).expect("within table");
                if !e.is_zero() && !g.is_zero() {
                    f += e * g;
                }
            }
            f
        })
        .collect();
    dense[0] = counts.fixed_point_free(n);
    Profile::from_dense(counts.id(), n, dense)
}

/// Profile by exhaustive enumeration, for `n` up to the family's brute-force
/// bound.
pub fn brute_force_profile(family: FamilyId, n: usize) -> Result<Profile> {
    let max = family.info().supports_bruteforce_up_to;
    if n > max {
        return Err(Error::TooLarge {
            family: family.as_str(),
            n,
            max,
        });
    }
    let tally = brute_force::label_sum_tally(family, n);
    Ok(Profile::from_dense(
        family,
        n,
        tally.into_iter().map(Count::from).collect(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledRow {
    pub r: usize,
    pub alpha: f64,
    /// `f(n, r) / g(1, n)`.
    pub scaled: f64,
    /// `χ(α <= 1) + K_μ(α)`.
    pub predicted: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScaledProfile {
    pub family: FamilyId,
    pub n: usize,
    pub mu: f64,
    pub rows: Vec<ScaledRow>,
}

impl ScaledProfile {
    /// Largest `|scaled - predicted|` over the rows.
    pub fn max_deviation(&self) -> Option<f64> {
        self.rows
            .iter()
            .map(|row| (row.scaled - row.predicted).abs())
            .reduce(f64::max)
    }
}

/// Integer `r` with `alpha_min <= r/n <= alpha_max`, clipped to the support.
fn r_window(n: usize, alpha_min: f64, alpha_max: f64) -> std::ops::RangeInclusive<usize> {
    let nf = n as f64;
    // tolerate rounding in α·n when it is meant to be an integer
    let lo = (alpha_min * nf - 1e-9).ceil().max(0.0) as usize;
    let hi = ((alpha_max * nf + 1e-9).floor() as usize).min(max_label_sum(n));
    lo..=hi
}

/// Exact `f(n, r) / g(1, n)` next to its predicted limit for every integer
/// `r` in the window `[alpha_min·n, alpha_max·n]`.
pub fn scaled_profile(
    family: FamilyId,
    n: usize,
    alpha_min: f64,
    alpha_max: f64,
    params: &KernelParams,
) -> Result<ScaledProfile> {
    scaled_profile_with(
        &FamilyCounts::new(family, n),
        n,
        alpha_min,
        alpha_max,
        params,
    )
}

pub fn scaled_profile_with(
    counts: &FamilyCounts,
    n: usize,
    alpha_min: f64,
    alpha_max: f64,
    params: &KernelParams,
) -> Result<ScaledProfile> {
    if !(alpha_min > 0.0 && alpha_min < alpha_max && alpha_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < alpha_min < alpha_max, got [{alpha_min}, {alpha_max}]"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let g1 = counts.fixed_set(1, n)?;
    if g1.is_zero() {
        return Err(Error::Degenerate(format!(
            "g(1, {n}) = 0 for {}, nothing to scale by",
            counts.id()
        )));
    }
    let window = r_window(n, alpha_min, alpha_max);
    let rows = if window.is_empty() {
        Vec::new()
    } else {
        let profile = exact_profile_with(counts, n, Some(*window.end()));
        window
            .map(|r| {
                let alpha = r as f64 / n as f64;
                ScaledRow {
                    r,
                    alpha,
                    scaled: ratio_to_f64(&profile.value(r), &g1),
                    predicted: predicted_scaled(params, alpha),
                }
            })
            .collect()
    };
    Ok(ScaledProfile {
        family: counts.id(),
        n,
        mu: params.mu(),
        rows,
    })
}

/// `(f(n, n), f(n, n+1))`, failing when the denominator is zero.
pub fn jump_ratio_exact(family: FamilyId, n: usize) -> Result<(Count, Count)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let profile = exact_profile(family, n, Some(n + 1));
    let (at, after) = (profile.value(n), profile.value(n + 1));
    if after.is_zero() {
        return Err(Error::Degenerate(format!(
            "f({n}, {}) = 0 for {family}",
            n + 1
        )));
    }
    Ok((at, after))
}

/// `f(n, n) / f(n, n+1)`: the height of the drop at `r = n`.
pub fn jump_ratio(family: FamilyId, n: usize) -> Result<f64> {
    let (at, after) = jump_ratio_exact(family, n)?;
    Ok(ratio_to_f64(&at, &after))
}
