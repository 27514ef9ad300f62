//! Limit shapes of the scaled profile.
//!
//! The cutoff functions
//!
//! ```text
//! c_k(α) = Σ_{0 <= j < α} C(k, j) (-1)^j (1 - j/α)^(k-1)
//! ```
//!
//! describe how `k! E(r, k, n) / C(r-1, k-1)` behaves for `r = αn`, and the
//! kernel
//!
//! ```text
//! K_μ(α) = Σ_{k >= 2} c_k(α) (αμ)^(k-1) / (k! (k-1)!)
//! ```
//!
//! is the continuous part of `f(n, r) / g(1, n)`; the full limit adds the unit
//! step `χ(α <= 1)`.
//!
//! All evaluation is in `f64`.

mod diagnostics;

pub use diagnostics::{
    estimate_parameters, gap_deviation, measured_mu, PmfRow, PoissonDiagnostics,
};

use crate::error::{Error, Result};

/// `c_k(α)` straight from its defining alternating sum.
///
/// Accurate for moderate `α`; for `α` near `k` the terms cancel badly and
/// [`cutoff`] should be used instead.
pub fn cutoff_by_definition(k: usize, alpha: f64) -> f64 {
    assert!(k >= 1, "cutoff index starts at 1");
    if alpha <= 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut choose = 1.0;
    let mut j = 0usize;
    while (j as f64) < alpha && j <= k {
        let term = choose * (1.0 - j as f64 / alpha).powi(k as i32 - 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        choose = choose * (k - j) as f64 / (j + 1) as f64;
        j += 1;
    }
    sum
}

/// `c_k(α)`.
///
/// `c_1` is the step `χ(0 < α <= 1)`. For `k >= 2` the value is zero outside
/// `(0, k)`, and for `α > k/2` it is computed from the reflection
/// `c_k(α) = ((k-α)/α)^(k-1) c_k(k-α)`, which comes from the symmetry of the
/// Irwin-Hall density and keeps the sum short and free of cancellation near
/// `α = k`.
pub fn cutoff(k: usize, alpha: f64) -> f64 {
    assert!(k >= 1, "cutoff index starts at 1");
    if k == 1 {
        return if alpha > 0.0 && alpha <= 1.0 {
            1.0
        } else {
            0.0
        };
    }
    let kf = k as f64;
    if alpha <= 0.0 || alpha >= kf {
        return 0.0;
    }
    if alpha <= 1.0 {
        return 1.0;
    }
    if alpha <= kf / 2.0 {
        return cutoff_by_definition(k, alpha);
    }
    let mirror = kf - alpha;
    ((mirror / alpha).powi(k as i32 - 1) * cutoff_by_definition(k, mirror)).clamp(0.0, 1.0)
}

/// Kernel parameter `μ` and the series truncation tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams {
    mu: f64,
    tolerance: f64,
}

impl KernelParams {
    pub const DEFAULT_TOLERANCE: f64 = 1e-12;

    pub fn new(mu: f64) -> Result<Self> {
        Self::with_tolerance(mu, Self::DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(mu: f64, tolerance: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "kernel parameter must be positive and finite, got {mu}"
            )));
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(KernelParams { mu, tolerance })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// `K_μ(α)`, truncated once the remainder (bounded with `c_k <= 1`) drops
/// below the tolerance. Zero for `α <= 0`.
pub fn kernel_value(params: &KernelParams, alpha: f64) -> f64 {
    if alpha <= 0.0 {
        return 0.0;
    }
    let x = alpha * params.mu;
    // weight_k = x^(k-1) / (k! (k-1)!)
    let mut k = 2usize;
    let mut weight = x / 2.0;
    let mut sum = 0.0;
    loop {
        sum += cutoff(k, alpha) * weight;
        let next = weight * x / ((k + 1) * k) as f64;
        // successive weight ratios x/((j+1)j) only shrink, so the tail is
        // dominated by a geometric series starting at `next`
        let ratio = x / ((k + 2) * (k + 1)) as f64;
        if ratio < 1.0 && next / (1.0 - ratio) < params.tolerance {
            break;
        }
        weight = next;
        k += 1;
    }
    sum
}

/// `χ(α <= 1) + K_μ(α)`: the limit of `f(n, r) / g(1, n)` at `r = αn`.
pub fn predicted_scaled(params: &KernelParams, alpha: f64) -> f64 {
    let step = if alpha <= 1.0 { 1.0 } else { 0.0 };
    step + kernel_value(params, alpha)
}

/// Residual of the delay equation
/// `c_{k+1}'(α) = -(k(k+1)/α²) (1 - 1/α)^(k-1) c_k(α - 1)`,
/// with the derivative taken as a central difference of step `h`.
pub fn cutoff_ode_residual(k: usize, alpha: f64, h: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("cutoff index starts at 1".into()));
    }
    if alpha.is_nan() || alpha <= 1.0 {
        return Err(Error::Domain(format!("need alpha > 1, got {alpha}")));
    }
    let to_integer = (alpha - alpha.round()).abs();
    if h.is_nan() || h <= 0.0 || h >= to_integer {
        return Err(Error::Domain(format!(
            "step {h} must be positive and below the distance {to_integer} from alpha = {alpha} to the nearest integer"
        )));
    }
    let derivative = (cutoff(k + 1, alpha + h) - cutoff(k + 1, alpha - h)) / (2.0 * h);
    let kf = k as f64;
    let rhs = -(kf * (kf + 1.0) / (alpha * alpha))
        * (1.0 - 1.0 / alpha).powi(k as i32 - 1)
        * cutoff(k, alpha - 1.0);
    Ok((derivative - rhs).abs())
}
