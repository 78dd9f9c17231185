//! Knill–Glancy probability that one Steane stabilization round leaves no
//! logical error.
//!
//! In the modular (Zak) picture the probability density of the physical
//! `0_ω` codeword over the cell `ξ ∈ [−ω̄/2, ω̄/2]`, `τ ∈ [−π/2ω̄, π/2ω̄]` is,
//! once the large-envelope phase factor is dropped, a product of a time part
//!
//! `Σ_{n,m} e^{−κ²π²(m−n)²/4} e^{−κ²(τ − (n+m)π/2)²}`
//!
//! and a frequency part `Σ_{k,l} e^{−(k−l)²/σ²} e^{−(ξ−l)²/σ²}`. The no-error
//! probability is the mass inside the window `|ξ| < f·ω̄`, `|τ| < f·π/ω̄`
//! (`f = 1/6` by default) divided by the mass of the whole cell.

use std::f64::consts::PI;

use libm::{erf, erfc};

use crate::analytic::parity_sum;
use crate::comb::CombSpec;
use crate::error::{Error, Result};
use crate::fidelity::FidelityMap;

pub const DEFAULT_THRESHOLD_FRACTION: f64 = 1.0 / 6.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularSpec {
    spec: CombSpec,
    threshold_fraction: f64,
}

impl ModularSpec {
    pub fn new(spec: CombSpec) -> Self {
        Self { spec, threshold_fraction: DEFAULT_THRESHOLD_FRACTION }
    }

    /// Window half-width as a fraction of the displacement that flips the codeword.
    /// `1/2` covers the whole cell.
    pub fn with_threshold(spec: CombSpec, threshold_fraction: f64) -> Result<Self> {
        if !(threshold_fraction > 0.0 && threshold_fraction <= 0.5) {
            return Err(Error::InvalidArgument(format!(
                "threshold fraction {threshold_fraction} outside (0, 1/2]"
            )));
        }
        Ok(Self { spec, threshold_fraction })
    }

    pub fn spec(&self) -> &CombSpec {
        &self.spec
    }

    pub fn threshold_fraction(&self) -> f64 {
        self.threshold_fraction
    }

    /// Large-κ, small-σ normalization `√(κ/πσ)` of the Zak function.
    pub fn zak_norm(&self) -> f64 {
        (self.spec.kappa() / (PI * self.spec.sigma())).sqrt()
    }

    /// Normalization that makes the phase-dropped density integrate to one over the cell.
    pub fn zak_norm_exact(&self) -> Result<f64> {
        let (kappa, sigma) = (self.spec.kappa(), self.spec.sigma());
        let (th0, th1) = time_thetas(kappa, cap(&self.spec))?;
        let theta_sigma = parity_sum(|u| (-((u * u) as f64) / (sigma * sigma)).exp(), 0, cap(&self.spec))?
            + parity_sum(|u| (-((u * u) as f64) / (sigma * sigma)).exp(), 1, cap(&self.spec))?;
        let cell = (PI.sqrt() / kappa) * (th0 + th1) * (PI.sqrt() * sigma) * theta_sigma;
        Ok(1.0 / cell.sqrt())
    }
}

fn cap(spec: &CombSpec) -> i64 {
    (20.0 * spec.kappa().max(1.0 / spec.sigma()).max(1.0)).ceil() as i64 + 8
}

/// `erf(b) − erf(a)` for `a ≤ b` without cancellation in the tails.
fn erf_window(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        erfc(a) - erfc(b)
    } else if b <= 0.0 {
        erfc(-b) - erfc(-a)
    } else {
        erf(b) + erf(-a)
    }
}

/// Weights `Σ_{d≡p} e^{−κ²π²d²/4}` of the two parity classes of `n+m`.
fn time_thetas(kappa: f64, cap: i64) -> Result<(f64, f64)> {
    let g = |d: i64| (-0.25 * kappa * kappa * PI * PI * (d * d) as f64).exp();
    Ok((parity_sum(g, 0, cap)?, parity_sum(g, 1, cap)?))
}

/// Fraction of the time-part mass inside `|τ| < fπ`.
fn time_fraction(kappa: f64, f: f64, cap: i64) -> Result<f64> {
    let (th0, th1) = time_thetas(kappa, cap)?;
    // Window integral of e^{−κ²(τ − sπ/2)²}, in units of √π/(2κ).
    let window = |s: i64| erf_window(kappa * PI * (0.5 * s as f64 - f), kappa * PI * (0.5 * s as f64 + f));
    let inside = th0 * parity_sum(window, 0, cap)? + th1 * parity_sum(window, 1, cap)?;
    // A full parity class of windows tiles the line: 2 in the same units.
    Ok(inside / (2.0 * (th0 + th1)))
}

/// Fraction of the frequency-part mass inside `|ξ| < f`.
fn freq_fraction(sigma: f64, f: f64, cap: i64) -> Result<f64> {
    let window = |l: i64| erf_window((l as f64 - f) / sigma, (l as f64 + f) / sigma);
    let sum = parity_sum(window, 0, cap)? + parity_sum(window, 1, cap)?;
    Ok(0.5 * sum)
}

/// No-error probability from the full erf lattice sum.
pub fn p_no_error_exact(m: &ModularSpec) -> Result<f64> {
    let spec = m.spec;
    let f = m.threshold_fraction;
    let t = time_fraction(spec.kappa(), f, cap(&spec))?;
    let x = freq_fraction(spec.sigma(), f, cap(&spec))?;
    Ok((t * x).clamp(0.0, 1.0))
}

pub fn p_error_exact(m: &ModularSpec) -> Result<f64> {
    Ok(1.0 - p_no_error_exact(m)?)
}

/// `erf(fπκ)·erf(f/σ)`, which is `erf(πκ/6)·erf(1/6σ)` at the default threshold.
pub fn p_no_error_asymptotic(m: &ModularSpec) -> f64 {
    let f = m.threshold_fraction;
    erf(f * PI * m.spec.kappa()) * erf(f / m.spec.sigma())
}

/// `P_error` over a `(κ, σ)` grid; cells that fail to converge become NaN.
pub fn error_map(kappa_axis: &[f64], sigma_axis: &[f64], threshold_fraction: f64) -> FidelityMap {
    FidelityMap::evaluate(kappa_axis, sigma_axis, None, |kappa, sigma| {
        let spec = CombSpec::with_parts(sigma, kappa, 1, crate::grid::GridSpec::covering(16, 4.0 + 10.0 * sigma)?)?;
        p_error_exact(&ModularSpec::with_threshold(spec, threshold_fraction)?)
    })
}
