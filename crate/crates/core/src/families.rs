//! Registry of labeled-structure families.
//!
//! Each family exposes, for a given size `n`:
//!
//! - the total count `G_n`,
//! - the fixed-point-free count `D_n`,
//! - `g(k, n)`: the number of structures whose fixed points are exactly a
//!   given `k`-set `K` (the same for every `K` of that size),
//! - `G_{n,k} = C(n, k) g(k, n)`: structures with exactly `k` fixed points.
//!
//! For the two function families `g(k, n)` is *not* `C^k D_{n-k}`: a
//! non-fixed point may map into the fixed set, so those counts are stored as
//! the true closed forms.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::combinatorics::{
    binomial_row, exp_formula_counts, parity_split_counts, ComponentWeights, Count,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Permutations,
    AllFunctions,
    PartialFunctions,
    Involutions,
    SetPartitions,
    OddCyclePermutations,
    OddCycleCountPermutations,
    RootedForests,
    UnrootedForests,
}

impl FamilyId {
    pub const ALL: [FamilyId; 9] = [
        FamilyId::Permutations,
        FamilyId::AllFunctions,
        FamilyId::PartialFunctions,
        FamilyId::Involutions,
        FamilyId::SetPartitions,
        FamilyId::OddCyclePermutations,
        FamilyId::OddCycleCountPermutations,
        FamilyId::RootedForests,
        FamilyId::UnrootedForests,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Permutations => "permutations",
            FamilyId::AllFunctions => "all_functions",
            FamilyId::PartialFunctions => "partial_functions",
            FamilyId::Involutions => "involutions",
            FamilyId::SetPartitions => "set_partitions",
            FamilyId::OddCyclePermutations => "odd_cycle_permutations",
            FamilyId::OddCycleCountPermutations => "odd_cycle_count_permutations",
            FamilyId::RootedForests => "rooted_forests",
            FamilyId::UnrootedForests => "unrooted_forests",
        }
    }

    pub fn info(self) -> Family {
        use FamilyId::*;
        let (description, exact_c_decomposable, supports_sampling, supports_bruteforce_up_to) =
            match self {
                Permutations => ("permutations; fixed points are 1-cycles", Some(1), true, 8),
                AllFunctions => (
                    "all maps [n] to [n]; fixed points have f(x) = x",
                    None,
                    true,
                    6,
                ),
                PartialFunctions => (
                    "partial maps on [n]; fixed points have f(x) = x or f(x) undefined",
                    None,
                    true,
                    5,
                ),
                Involutions => ("involutions; fixed points are 1-cycles", Some(1), false, 8),
                SetPartitions => (
                    "set partitions; fixed points are singleton blocks",
                    Some(1),
                    false,
                    9,
                ),
                OddCyclePermutations => (
                    "permutations with all cycles of odd length",
                    Some(1),
                    false,
                    8,
                ),
                OddCycleCountPermutations => {
                    ("permutations with an odd number of cycles", None, false, 8)
                }
                RootedForests => (
                    "forests of rooted trees; fixed points are 1-vertex trees",
                    Some(1),
                    false,
                    5,
                ),
                UnrootedForests => (
                    "forests of unrooted trees; fixed points are isolated vertices",
                    Some(1),
                    false,
                    5,
                ),
            };
        Family {
            id: self,
            description,
            g_depends_only_on_k: true,
            exact_c_decomposable,
            supports_sampling,
            supports_bruteforce_up_to,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Metadata of a registered family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub id: FamilyId,
    pub description: &'static str,
    pub g_depends_only_on_k: bool,
    /// `Some(C)` when `g(k, n) = C^k D_{n-k}` holds exactly.
    pub exact_c_decomposable: Option<u64>,
    pub supports_sampling: bool,
    pub supports_bruteforce_up_to: usize,
}

/// All registered families, in a fixed order.
pub fn list_families() -> Vec<Family> {
    FamilyId::ALL.iter().map(|id| id.info()).collect()
}

#[derive(Clone, Debug)]
enum Tables {
    /// `g(k, n) = free[n - k]`.
    Decomposable { total: Vec<Count>, free: Vec<Count> },
    /// Fixed-point-free parts split by the parity of their cycle count; the
    /// structure's total cycle count must be odd.
    CycleParity {
        total: Vec<Count>,
        free_even: Vec<Count>,
        free_odd: Vec<Count>,
    },
    /// Maps where each fixed point can be made in `fixed_kinds` ways and each
    /// other point has `n - 1` targets.
    Functional { fixed_kinds: u32 },
}

/// Exact counts of one family for every size up to `n_max`.
#[derive(Clone, Debug)]
pub struct FamilyCounts {
    id: FamilyId,
    n_max: usize,
    tables: Tables,
}

fn factorials(n_max: usize) -> Vec<Count> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Count::one());
    for n in 1..=n_max {
        let next = &out[n - 1] * n;
        out.push(next);
    }
    out
}

fn derangements(n_max: usize) -> Vec<Count> {
    let mut d = vec![Count::one()];
    if n_max >= 1 {
        d.push(Count::zero());
    }
    for n in 2..=n_max {
        let next = (&d[n - 1] + &d[n - 2]) * (n - 1);
        d.push(next);
    }
    d
}

fn involution_totals(n_max: usize) -> Vec<Count> {
    let mut t = vec![Count::one()];
    if n_max >= 1 {
        t.push(Count::one());
    }
    for n in 2..=n_max {
        let next = &t[n - 1] + &t[n - 2] * (n - 1);
        t.push(next);
    }
    t
}

/// `n! / (2^{n/2} (n/2)!)` for even `n`, else zero.
fn perfect_matchings(n_max: usize) -> Vec<Count> {
    let mut m = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = match n {
            0 => Count::one(),
            n if n % 2 == 1 => Count::zero(),
            n => &m[n - 2] * (n - 1),
        };
        m.push(v);
    }
    m
}

fn without_singletons(w: ComponentWeights) -> ComponentWeights {
    w.with_singletons(Count::zero())
}

fn pow(base: usize, exp: usize) -> Count {
    Count::from(base).pow(exp as u32)
}

impl FamilyCounts {
    pub fn new(id: FamilyId, n_max: usize) -> Self {
        use FamilyId::*;
        let tables = match id {
            Permutations => Tables::Decomposable {
                total: factorials(n_max),
                free: derangements(n_max),
            },
            Involutions => Tables::Decomposable {
                total: involution_totals(n_max),
                free: perfect_matchings(n_max),
            },
            SetPartitions => {
                let w = ComponentWeights::blocks(n_max);
                Tables::Decomposable {
                    total: exp_formula_counts(&w, n_max),
                    free: exp_formula_counts(&without_singletons(w), n_max),
                }
            }
            OddCyclePermutations => {
                let w = ComponentWeights::odd_cycles(n_max);
                Tables::Decomposable {
                    total: exp_formula_counts(&w, n_max),
                    free: exp_formula_counts(&without_singletons(w), n_max),
                }
            }
            RootedForests => Tables::Decomposable {
                total: (0..=n_max)
                    .map(|n| {
                        if n == 0 {
                            Count::one()
                        } else {
                            pow(n + 1, n - 1)
                        }
                    })
                    .collect(),
                free: exp_formula_counts(
                    &without_singletons(ComponentWeights::rooted_trees(n_max)),
                    n_max,
                ),
            },
            UnrootedForests => {
                let w = ComponentWeights::unrooted_trees(n_max);
                Tables::Decomposable {
                    total: exp_formula_counts(&w, n_max),
                    free: exp_formula_counts(&without_singletons(w), n_max),
                }
            }
            OddCycleCountPermutations => {
                let all = parity_split_counts(&ComponentWeights::cycles(n_max), n_max);
                let free = parity_split_counts(
                    &without_singletons(ComponentWeights::cycles(n_max)),
                    n_max,
                );
                Tables::CycleParity {
                    total: all.odd,
                    free_even: free.even,
                    free_odd: free.odd,
                }
            }
            AllFunctions => Tables::Functional { fixed_kinds: 1 },
            PartialFunctions => Tables::Functional { fixed_kinds: 2 },
        };
        FamilyCounts { id, n_max, tables }
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check(&self, n: usize) {
        assert!(
            n <= self.n_max,
            "{} counts built up to n = {}, asked for n = {}",
            self.id,
            self.n_max,
            n
        );
    }

    /// `G_n`.
    pub fn total(&self, n: usize) -> Count {
        self.check(n);
        match &self.tables {
            Tables::Decomposable { total, .. } | Tables::CycleParity { total, .. } => {
                total[n].clone()
            }
            Tables::Functional { fixed_kinds } => pow(n + *fixed_kinds as usize - 1, n),
        }
    }

    /// `D_n`.
    pub fn fixed_point_free(&self, n: usize) -> Count {
        self.fixed_set_unchecked(0, n)
    }

    /// `g(k, n)`: structures whose fixed points are exactly a given `k`-set.
    pub fn fixed_set(&self, k: usize, n: usize) -> Result<Count> {
        if k > n {
            return Err(Error::Domain(format!(
                "fixed set of size {k} exceeds n = {n}"
            )));
        }
        Ok(self.fixed_set_unchecked(k, n))
    }

    fn fixed_set_unchecked(&self, k: usize, n: usize) -> Count {
        self.check(n);
        let rest = n - k;
        match &self.tables {
            Tables::Decomposable { free, .. } => free[rest].clone(),
            Tables::CycleParity {
                free_even,
                free_odd,
                ..
            } => {
                // k fixed points contribute k cycles; total must be odd
                if k % 2 == 0 {
                    free_odd[rest].clone()
                } else {
                    free_even[rest].clone()
                }
            }
            Tables::Functional { fixed_kinds } => {
                // n - 1 wraps to usize::MAX only for n = 0, where rest = 0
                let others = if rest == 0 {
                    Count::one()
                } else {
                    pow(n - 1, rest)
                };
                Count::from(*fixed_kinds).pow(k as u32) * others
            }
        }
    }

    /// `G_{n,k}`: structures with exactly `k` fixed points.
    pub fn exactly_fixed(&self, k: usize, n: usize) -> Result<Count> {
        let g = self.fixed_set(k, n)?;
        Ok(g * &binomial_row(n)[k])
    }

    /// `G_{n,k}` for every `k` in `0..=n`.
    pub fn exactly_fixed_all(&self, n: usize) -> Vec<Count> {
        binomial_row(n)
            .into_iter()
            .enumerate()
            .map(|(k, b)| b * self.fixed_set_unchecked(k, n))
            .collect()
    }

    /// The idealized count `C^k D_{n-k}`, which equals `g(k, n)` exactly only
    /// for `C`-decomposable families.
    pub fn idealized_fixed_set(&self, c: u64, k: usize, n: usize) -> Result<Count> {
        if k > n {
            return Err(Error::Domain(format!(
                "fixed set of size {k} exceeds n = {n}"
            )));
        }
        Ok(Count::from(c).pow(k as u32) * self.fixed_point_free(n - k))
    }
}

/// `G_n` for a single size.
pub fn family_total(id: FamilyId, n: usize) -> Count {
    FamilyCounts::new(id, n).total(n)
}

/// `D_n` for a single size.
pub fn family_fixed_point_free(id: FamilyId, n: usize) -> Count {
    FamilyCounts::new(id, n).fixed_point_free(n)
}

/// `g(k, n)` for a single size.
pub fn family_fixed_set(id: FamilyId, k: usize, n: usize) -> Result<Count> {
    FamilyCounts::new(id, n).fixed_set(k, n)
}

/// `G_{n,k}` for a single size.
pub fn family_exactly_fixed(id: FamilyId, k: usize, n: usize) -> Result<Count> {
    FamilyCounts::new(id, n).exactly_fixed(k, n)
}
