//! Measured Poisson-family parameters and the distance between exact scaled
//! profiles and their predicted limit.
//!
//! Every estimate is an exact ratio of big integers converted to `f64` only
//! at the end.

use num_traits::Zero;

use crate::combinatorics::{ratio_to_f64, Count};
use crate::error::{Error, Result};
use crate::families::{FamilyCounts, FamilyId};
use crate::profile::scaled_profile_with;

use super::KernelParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PmfRow {
    pub k: usize,
    /// `G_{n,k} / G_n`.
    pub observed: f64,
    /// `e^{-λ̂} λ̂^k / k!`.
    pub poisson: f64,
}

/// Estimates are `None` when their denominator vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonDiagnostics {
    pub family: FamilyId,
    pub n: usize,
    /// `n G_{n-1} / G_n`.
    pub rho_hat: Option<f64>,
    /// `g(1, n) / D_{n-1}`.
    pub c_hat: Option<f64>,
    /// Mean number of fixed points, `Σ_k k G_{n,k} / G_n`.
    pub lambda_hat: Option<f64>,
    /// `n g(2, n) / g(1, n)`.
    pub mu_hat: Option<f64>,
    pub pmf_rows: Vec<PmfRow>,
}

fn ratio(num: &Count, den: &Count) -> Option<f64> {
    (!den.is_zero()).then(|| ratio_to_f64(num, den))
}

/// `μ̂ = n g(2, n) / g(1, n)`, the factor scaling the `k = 2` term of the
/// profile.
pub fn measured_mu(counts: &FamilyCounts, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let g1 = counts.fixed_set(1, n)?;
    let g2 = counts.fixed_set(2, n)?;
    ratio(&(g2 * n), &g1)
        .ok_or_else(|| Error::Degenerate(format!("g(1, {n}) = 0 for {}", counts.id())))
}

/// Poisson diagnostics at size `n`, with the pmf table for `k <= k_max`.
pub fn estimate_parameters(family: FamilyId, n: usize, k_max: usize) -> Result<PoissonDiagnostics> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
    }
    let counts = FamilyCounts::new(family, n);
    let total = counts.total(n);
    if total.is_zero() {
        return Err(Error::Degenerate(format!("G_{n} = 0 for {family}")));
    }
    let exactly = counts.exactly_fixed_all(n);
    let mass: Count = exactly.iter().sum();
    debug_assert_eq!(mass, total, "G_(n,k) must partition G_n");

    let first_moment: Count = exactly.iter().enumerate().map(|(k, g)| g * k).sum();
    let lambda_hat = ratio(&first_moment, &total);
    let g1 = counts.fixed_set(1, n)?;
    let g2 = counts.fixed_set(2, n)?;
    let rho_hat = ratio(&(counts.total(n - 1) * n), &total);
    let c_hat = ratio(&g1, &counts.fixed_point_free(n - 1));
    let mu_hat = ratio(&(g2 * n), &g1);

    let pmf_rows = (0..=k_max.min(n))
        .map(|k| {
            let observed = ratio_to_f64(&exactly[k], &total);
            let poisson = lambda_hat.map_or(f64::NAN, |l| poisson_pmf(l, k));
            PmfRow {
                k,
                observed,
                poisson,
            }
        })
        .collect();

    Ok(PoissonDiagnostics {
        family,
        n,
        rho_hat,
        c_hat,
        lambda_hat,
        mu_hat,
        pmf_rows,
    })
}

fn poisson_pmf(lambda: f64, k: usize) -> f64 {
    let mut p = (-lambda).exp();
    for i in 1..=k {
        p *= lambda / i as f64;
    }
    p
}

/// Largest `|f(n, r) / g(1, n) - (χ(r <= n) + K_μ(r/n))|` over integer `r`
/// in the window.
pub fn gap_deviation(
    family: FamilyId,
    n: usize,
    mu: f64,
    alpha_min: f64,
    alpha_max: f64,
) -> Result<f64> {
    let params = KernelParams::new(mu)?;
    let counts = FamilyCounts::new(family, n);
    let scaled = scaled_profile_with(&counts, n, alpha_min, alpha_max, &params)?;
    scaled
        .max_deviation()
        .ok_or_else(|| Error::Degenerate(format!("no r in [{alpha_min}, {alpha_max}]·{n}")))
}
