//! Seeded Monte-Carlo sampling of the fixed-point label sum `X_n` of a
//! uniform random structure.
//!
//! Trial `t` draws from its own ChaCha stream (`set_stream(t)` on the seeded
//! generator), so a histogram does not depend on how trials are split across
//! threads.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::FamilyId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub family: FamilyId,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Discard draws with no fixed point.
    pub condition_on_fixed_points: bool,
}

impl SampleConfig {
    pub fn new(family: FamilyId, n: usize, trials: u64, seed: u64) -> Self {
        SampleConfig {
            family,
            n,
            trials,
            seed,
            condition_on_fixed_points: false,
        }
    }

    pub fn conditioned(mut self, yes: bool) -> Self {
        self.condition_on_fixed_points = yes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalHistogram {
    pub counts: BTreeMap<u64, u64>,
    /// Draws made, accepted or not.
    pub trials: u64,
    /// Draws discarded by conditioning.
    pub rejections: u64,
    pub seed: u64,
}

impl EmpiricalHistogram {
    /// Draws kept in the histogram.
    pub fn accepted(&self) -> u64 {
        self.trials - self.rejections
    }

    pub fn count(&self, r: u64) -> u64 {
        self.counts.get(&r).copied().unwrap_or(0)
    }

    /// `count(r) / accepted`; zero when nothing was accepted.
    pub fn probability(&self, r: u64) -> f64 {
        match self.accepted() {
            0 => 0.0,
            a => self.count(r) as f64 / a as f64,
        }
    }

    /// `sqrt(p̂ (1 - p̂) / N)` with `N` the accepted draws.
    pub fn stderr(&self, r: u64) -> f64 {
        let a = self.accepted();
        if a == 0 {
            return 0.0;
        }
        let p = self.probability(r);
        (p * (1.0 - p) / a as f64).sqrt()
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted() as f64 / self.trials as f64
    }

    /// Total-variation distance to a reference distribution given as
    /// `(r, probability)` pairs. Reference mass missing from the list counts
    /// as disjoint from the histogram.
    pub fn total_variation(&self, reference: impl IntoIterator<Item = (u64, f64)>) -> f64 {
        let mut diff = 0.0;
        let mut seen_mass = 0.0;
        let mut covered = std::collections::BTreeSet::new();
        for (r, p) in reference {
            diff += (self.probability(r) - p).abs();
            seen_mass += p;
            covered.insert(r);
        }
        for &r in self.counts.keys() {
            if !covered.contains(&r) {
                diff += self.probability(r);
            }
        }
        diff += (1.0 - seen_mass).max(0.0);
        diff / 2.0
    }
}

fn check_family(family: FamilyId) -> Result<()> {
    if family.info().supports_sampling {
        Ok(())
    } else {
        Err(Error::UnsupportedFamily(format!(
            "no uniform sampler for {family}"
        )))
    }
}

/// `X` for one uniform structure of the family on `[n]`.
pub fn sample_fixed_point_sum<R: Rng + ?Sized>(
    family: FamilyId,
    n: usize,
    rng: &mut R,
) -> Result<u64> {
    check_family(family)?;
    Ok(draw(family, n, rng))
}

fn draw<R: Rng + ?Sized>(family: FamilyId, n: usize, rng: &mut R) -> u64 {
    let label = |i: usize| i as u64 + 1;
    match family {
        FamilyId::Permutations => {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            (0..n).filter(|&i| p[i] == i).map(label).sum()
        }
        FamilyId::AllFunctions => (0..n)
            .filter(|&i| rng.gen_range(0..n) == i)
            .map(label)
            .sum(),
        FamilyId::PartialFunctions => (0..n)
            .filter(|&i| {
                // value n is "undefined"
                let v = rng.gen_range(0..=n);
                v == i || v == n
            })
            .map(label)
            .sum(),
        _ => unreachable!("checked by check_family"),
    }
}

/// Histogram of `X` over `config.trials` seeded draws.
pub fn empirical_distribution(config: &SampleConfig) -> Result<EmpiricalHistogram> {
    check_family(config.family)?;
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let (counts, rejections) = (0..config.trials)
        .into_par_iter()
        .fold(
            || (BTreeMap::new(), 0u64),
            |(mut counts, mut rejected), t| {
                let mut rng = base.clone();
                rng.set_stream(t);
                let x = draw(config.family, config.n, &mut rng);
                if config.condition_on_fixed_points && x == 0 {
                    rejected += 1;
                } else {
                    *counts.entry(x).or_insert(0u64) += 1;
                }
                (counts, rejected)
            },
        )
        .reduce(
            || (BTreeMap::new(), 0u64),
            |(mut a, ra), (b, rb)| {
                for (r, c) in b {
                    *a.entry(r).or_insert(0) += c;
                }
                (a, ra + rb)
            },
        );
    Ok(EmpiricalHistogram {
        counts,
        trials: config.trials,
        rejections,
        seed: config.seed,
    })
}
