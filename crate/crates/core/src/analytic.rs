//! Closed-form lattice sums for codeword overlaps and normalization constants.
//!
//! Every double sum over peak indices `(n, m)` is rewritten in the difference
//! and sum indices `d = n − m`, `s = n + m`, which share a parity. The Gaussian
//! weights then factorize, so each double sum is a sum over the two parity
//! classes of a product of one-dimensional lattice sums.

use std::f64::consts::PI;

use crate::comb::CombSpec;
use crate::error::{Error, Result};

const SHELL_TOLERANCE: f64 = 1e-14;

/// `Σ f(j)` over integers `j ≡ parity (mod 2)`, expanded in symmetric shells
/// until a shell adds less than `1e-14` of the running total.
pub(crate) fn parity_sum(f: impl Fn(i64) -> f64, parity: i64, cap: i64) -> Result<f64> {
    let parity = parity.rem_euclid(2);
    let mut total = 0.0;
    let mut r = parity;
    loop {
        let shell = if r == 0 { f(0) } else { f(r) + f(-r) };
        total += shell;
        if r >= 3 && shell.abs() <= SHELL_TOLERANCE * total.abs() {
            return Ok(total);
        }
        r += 2;
        if r > cap {
            return Err(Error::NonConvergence { cap });
        }
    }
}

fn shell_cap(spec: &CombSpec) -> i64 {
    (20.0 * spec.kappa().max(1.0 / spec.sigma())).ceil() as i64 + 8
}

fn parity_product(
    spec: &CombSpec,
    diff: impl Fn(i64) -> f64 + Copy,
    sum: impl Fn(i64) -> f64 + Copy,
) -> f64 {
    let cap = shell_cap(spec);
    let mut total = 0.0;
    for parity in 0..2 {
        let a = parity_sum(diff, parity, cap);
        let b = parity_sum(sum, parity, cap);
        match (a, b) {
            (Ok(a), Ok(b)) => total += a * b,
            (a, b) => {
                log::warn!("lattice sum hit its shell cap for {spec:?}");
                total += a.unwrap_or(f64::NAN) * b.unwrap_or(f64::NAN);
            }
        }
    }
    total
}

/// Frequency-domain double sums `(S_00, S_11, S_01)` for the `0_ω`, `1_ω` pair.
fn freq_sums(spec: &CombSpec) -> (f64, f64, f64) {
    let s2 = spec.sigma() * spec.sigma();
    let e2 = spec.kappa() * spec.kappa() + s2;
    let s00 = parity_product(spec, |d| (-(d * d) as f64 / s2).exp(), |s| (-(s * s) as f64 / e2).exp());
    let s11 = parity_product(spec, |d| (-(d * d) as f64 / s2).exp(), |s| {
        let x = (s + 1) as f64;
        (-x * x / e2).exp()
    });
    let s01 = parity_product(
        spec,
        |d| {
            let x = d as f64 - 0.5;
            (-x * x / s2).exp()
        },
        |s| {
            let x = s as f64 + 0.5;
            (-x * x / e2).exp()
        },
    );
    (s00, s11, s01)
}

/// Time-domain double sums `(S_00, S_11, S_01)` for the `0_t`, `1_t` pair.
fn time_sums(spec: &CombSpec) -> (f64, f64, f64) {
    let p2 = PI * PI;
    let s2 = spec.sigma() * spec.sigma();
    let w = p2 * (s2 + spec.kappa() * spec.kappa());
    let a = move |d: i64| (-w * (d * d) as f64).exp();
    let s00 = parity_product(spec, a, |s| (-p2 * s2 * (s * s) as f64).exp());
    let s11 = parity_product(spec, a, |s| {
        let x = (s + 1) as f64;
        (-p2 * s2 * x * x).exp()
    });
    let s01 = parity_product(
        spec,
        |d| {
            let x = d as f64 - 0.5;
            (-w * x * x).exp()
        },
        |s| {
            let x = s as f64 + 0.5;
            (-p2 * s2 * x * x).exp()
        },
    );
    (s00, s11, s01)
}

/// `⟨0_ω|1_ω⟩` from the converged double sum.
pub fn analytic_overlap_freq(spec: &CombSpec) -> f64 {
    let (s00, s11, s01) = freq_sums(spec);
    (s01 / (s00 * s11).sqrt()).clamp(0.0, 1.0)
}

/// `⟨0_t|1_t⟩` from the converged double sum.
pub fn analytic_overlap_time(spec: &CombSpec) -> f64 {
    let (s00, s11, s01) = time_sums(spec);
    (s01 / (s00 * s11).sqrt()).clamp(0.0, 1.0)
}

/// Leading large-κ, small-σ term of `⟨0_ω|1_ω⟩`: each peak meets two
/// neighbours of the other parity, giving `2·e^{−1/4σ²}`.
pub fn asymptotic_overlap_freq(sigma: f64) -> f64 {
    2.0 * (-0.25 / (sigma * sigma)).exp()
}

/// Leading term of `⟨0_t|1_t⟩`: `2·e^{−π²κ²/4}`.
pub fn asymptotic_overlap_time(kappa: f64) -> f64 {
    2.0 * (-0.25 * PI * PI * kappa * kappa).exp()
}

/// Prefactors `N` that make `N·e^{−ω²/2κ²}·Σ e^{−(ω−n)²/2σ²}` (frequency) or the
/// discrete time-domain comb unit-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationFactors {
    pub n0_omega: f64,
    pub n1_omega: f64,
    pub n0_t: f64,
    pub n1_t: f64,
    /// `√(2/πκσ)`, shared by both frequency codewords.
    pub asymptotic_omega: f64,
    /// `√(2κσ)`, shared by both time codewords.
    pub asymptotic_t: f64,
    /// Set when any exact factor departs from its asymptote by more than 1 %.
    pub outside_asymptotic_regime: bool,
}

pub fn normalization_factors(spec: &CombSpec) -> NormalizationFactors {
    let (sigma, kappa) = (spec.sigma(), spec.kappa());
    let freq_pre = (PI * kappa * kappa * sigma * sigma / (kappa * kappa + sigma * sigma)).sqrt();
    let time_pre = PI.sqrt() / kappa;
    let (f00, f11, _) = freq_sums(spec);
    let (t00, t11, _) = time_sums(spec);
    let n0_omega = 1.0 / (freq_pre * f00).sqrt();
    let n1_omega = 1.0 / (freq_pre * f11).sqrt();
    let n0_t = 1.0 / (time_pre * t00).sqrt();
    let n1_t = 1.0 / (time_pre * t11).sqrt();
    let asymptotic_omega = (2.0 / (PI * kappa * sigma)).sqrt();
    let asymptotic_t = (2.0 * kappa * sigma).sqrt();
    let off = |exact: f64, asym: f64| (exact / asym - 1.0).abs() > 1e-2;
    let outside_asymptotic_regime = off(n0_omega, asymptotic_omega)
        || off(n1_omega, asymptotic_omega)
        || off(n0_t, asymptotic_t)
        || off(n1_t, asymptotic_t);
    NormalizationFactors {
        n0_omega,
        n1_omega,
        n0_t,
        n1_t,
        asymptotic_omega,
        asymptotic_t,
        outside_asymptotic_regime,
    }
}
