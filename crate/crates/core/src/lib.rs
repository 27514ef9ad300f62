//! Exact and asymptotic enumeration of the *fixed-point label sum* on labeled
//! combinatorial families.
//!
//! For a family of labeled structures on `[n] = {1, …, n}` with a notion of
//! "fixed point" (a 1-cycle, a point with `f(x) = x`, a singleton block, an
//! isolated vertex, …), `f(n, r)` counts the structures whose fixed points
//! have labels summing to `r`. The crate computes `f(n, r)` exactly with
//! arbitrary-precision integers, checks it against brute-force enumeration,
//! evaluates the limiting kernel `K_μ(α)` together with the cutoff functions
//! `c_k(α)`, measures Poisson-type parameters of each family, and quantifies
//! the jump of `f(n, r)` at `r = n`.
//!
//! Layout:
//!
//! - [`combinatorics`]: binomials, the exponential formula, parity splitting
//!   and binomial inversion.
//! - [`subset_sum`]: `E(r, k, n)`, compositions and partitions with part
//!   constraints.
//! - [`families`]: the registry of nine families and their exact counts.
//! - [`profile`]: exact and brute-force profiles, scaled profiles, jump ratio.
//! - [`asymptotics`]: `c_k`, `K_μ`, Poisson diagnostics and gap deviation.
//! - [`sampler`]: seeded Monte-Carlo estimation of the label-sum distribution.

pub mod asymptotics;
pub mod combinatorics;
mod error;
pub mod families;
pub mod profile;
pub mod sampler;
pub mod subset_sum;

pub use asymptotics::{
    cutoff, estimate_parameters, gap_deviation, kernel_value, predicted_scaled, KernelParams,
    PoissonDiagnostics,
};
pub use combinatorics::{binomial, Count};
pub use error::{Error, Result};
pub use families::{list_families, Family, FamilyCounts, FamilyId};
pub use profile::{brute_force_profile, exact_profile, jump_ratio, Profile, ScaledProfile};
pub use sampler::{empirical_distribution, EmpiricalHistogram, SampleConfig};
pub use subset_sum::{count_subsets, SubsetSumTable};
