//! Chronocyclic Wigner distribution of the collective variable and the
//! generalized Hong–Ou–Mandel observables built on it.
//!
//! `W(μ, τ) = ∫ dω e^{2iωτ} ψ(ω−μ) ψ*(ω+μ)`, real for the even states used
//! here. A shift `μ` in one arm and a delay `τ` give the coincidence
//! probability `I = (1 − W)/2`; dips (`I < ½`) and antidips (`I > ½`) sit on a
//! lattice whose signs identify the codeword.
//!
//! Lattice points are indexed on the common pitch `τ = sπ/2ω̄`, `μ = kω̄/2`,
//! which contains the peaks of all six codewords.

use std::f64::consts::{FRAC_PI_2, PI};

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::comb::{Domain, LogicalLabel, SpectralState};
use crate::error::{Error, Result};
use crate::propagation::{apply_chirp, Chirp};
use crate::transform::fourier_sum;

pub const TAU_PITCH: f64 = FRAC_PI_2;
pub const MU_PITCH: f64 = 0.5;
const IMAG_RESIDUE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Wigner,
    Coincidence,
    Visibility,
}

/// `values[[i_mu, k_tau]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceMap {
    pub mu_axis: Vec<f64>,
    pub tau_axis: Vec<f64>,
    pub values: Array2<f64>,
    pub kind: MapKind,
}

fn wigner_column(state: &SpectralState, mu: f64, taus: &[f64]) -> Result<Vec<Complex64>> {
    let grid = state.grid();
    let m = grid.steps_in(mu)?.unsigned_abs() as usize;
    let sign_flip = mu < 0.0;
    let n = grid.len();
    if 2 * m >= n {
        return Ok(vec![Complex64::new(0.0, 0.0); taus.len()]);
    }
    let psi = state.amplitudes();
    // ψ(ω_j − μ)ψ*(ω_j + μ) for j ∈ [m, n − m).
    let product: Vec<Complex64> = (m..n - m)
        .map(|j| {
            let (lo, hi) = (psi[j - m], psi[j + m]);
            if sign_flip {
                hi * lo.conj()
            } else {
                lo * hi.conj()
            }
        })
        .collect();
    let h = grid.d_omega();
    Ok(fourier_sum(&product, grid.omega(m), h, taus, 2.0)
        .into_iter()
        .map(|v| v * h)
        .collect())
}

fn check_state(state: &SpectralState) -> Result<()> {
    if state.domain() != Domain::Frequency {
        return Err(Error::WrongDomain { expected: "frequency" });
    }
    Ok(())
}

fn real_part(values: Vec<Complex64>, mu: f64) -> Vec<f64> {
    let residue = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if residue > IMAG_RESIDUE {
        log::warn!("Wigner column μ = {mu}: discarded imaginary residue {residue:.3e}");
    }
    values.into_iter().map(|v| v.re).collect()
}

/// `W(μ, τ)` on the product of the two axes. Each `μ` must be a multiple of the grid step.
pub fn wigner_minus(state: &SpectralState, mu_axis: &[f64], tau_axis: &[f64]) -> Result<PhaseSpaceMap> {
    check_state(state)?;
    let columns: Vec<Vec<f64>> = mu_axis
        .par_iter()
        .map(|&mu| Ok(real_part(wigner_column(state, mu, tau_axis)?, mu)))
        .collect::<Result<_>>()?;
    let mut values = Array2::zeros((mu_axis.len(), tau_axis.len()));
    for (i, col) in columns.into_iter().enumerate() {
        values.row_mut(i).iter_mut().zip(col).for_each(|(slot, v)| *slot = v);
    }
    Ok(PhaseSpaceMap {
        mu_axis: mu_axis.to_vec(),
        tau_axis: tau_axis.to_vec(),
        values,
        kind: MapKind::Wigner,
    })
}

/// `W` at a single point.
pub fn wigner_at(state: &SpectralState, mu: f64, tau: f64) -> Result<f64> {
    check_state(state)?;
    Ok(wigner_column(state, mu, &[tau])?[0].re)
}

/// `I = (1 − W)/2`, clipped to `[0, 1]`.
pub fn hom_coincidence(state: &SpectralState, mu_axis: &[f64], tau_axis: &[f64]) -> Result<PhaseSpaceMap> {
    let mut map = wigner_minus(state, mu_axis, tau_axis)?;
    let mut clipped = 0.0f64;
    map.values.mapv_inplace(|w| {
        let i = 0.5 * (1.0 - w);
        let c = i.clamp(0.0, 1.0);
        clipped = clipped.max((i - c).abs());
        c
    });
    if clipped > 0.0 {
        log::info!("coincidence clipped by at most {clipped:.3e}");
    }
    map.kind = MapKind::Coincidence;
    Ok(map)
}

/// Maximum of `|W_β(μ, τ) − W_0(μ, τ − 2βμ)|` over the axes.
pub fn shear_check(state: &SpectralState, chirp: Chirp, mu_axis: &[f64], tau_axis: &[f64]) -> Result<f64> {
    check_state(state)?;
    let moved = apply_chirp(state, chirp)?;
    let deviations: Vec<f64> = mu_axis
        .par_iter()
        .map(|&mu| {
            let after = wigner_column(&moved, mu, tau_axis)?;
            let shifted: Vec<f64> = tau_axis.iter().map(|t| t - 2.0 * chirp.beta() * mu).collect();
            let before = wigner_column(state, mu, &shifted)?;
            Ok(after.iter().zip(&before).map(|(a, b)| (a.re - b.re).abs()).fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    Ok(deviations.into_iter().fold(0.0, f64::max))
}

/// `V = |W|` at the lattice point `τ = sπ/2`, `μ = k/2`.
pub fn visibility(state: &SpectralState, lattice_point: (i64, i64)) -> Result<f64> {
    let (s, k) = lattice_point;
    Ok(wigner_at(state, k as f64 * MU_PITCH, s as f64 * TAU_PITCH)?.abs())
}

/// Visibility map over explicit axes.
pub fn visibility_map(state: &SpectralState, mu_axis: &[f64], tau_axis: &[f64]) -> Result<PhaseSpaceMap> {
    let mut map = wigner_minus(state, mu_axis, tau_axis)?;
    map.values.mapv_inplace(f64::abs);
    map.kind = MapKind::Visibility;
    Ok(map)
}

fn parity_sign(exponent: i64) -> i8 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the ideal-codeword Wigner peak at `τ = sπ/2`, `μ = k/2`, or 0 where
/// the ideal lattice has no peak.
pub fn ideal_sign(label: LogicalLabel, s: i64, k: i64) -> i8 {
    let (s_even, k_even) = (s.rem_euclid(2) == 0, k.rem_euclid(2) == 0);
    match label.canonical() {
        LogicalLabel::ZeroT if s_even => parity_sign((s / 2) * k),
        LogicalLabel::OneT if s_even => parity_sign((s / 2 + 1) * k),
        LogicalLabel::ZeroOmega if k_even => parity_sign(s * (k / 2)),
        LogicalLabel::OneOmega if k_even => parity_sign(s * (k / 2 + 1)),
        LogicalLabel::PlusIT | LogicalLabel::MinusIT => {
            let flip = if label.canonical() == LogicalLabel::PlusIT { 1 } else { -1 };
            match (s_even, k_even) {
                (true, true) => 1,
                (false, false) => flip * parity_sign((s + k) / 2),
                _ => 0,
            }
        }
        _ => 0,
    }
}

/// Ideal peak signs over the elementary cell `τ ∈ [−2π, 2π]`, `μ ∈ [−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealLattice {
    pub label: LogicalLabel,
    pub s_range: (i64, i64),
    pub k_range: (i64, i64),
    /// `(τ, μ)` pitch of the common indexing.
    pub pitch: (f64, f64),
    /// `(τ, μ)` pitch of this codeword's own peak lattice.
    pub native_pitch: (f64, f64),
    /// Peak weight relative to the `0_t` lattice.
    pub weight: f64,
    /// `sign[[s − s_min, k − k_min]] ∈ {−1, 0, 1}`.
    pub sign: Array2<i8>,
}

impl IdealLattice {
    pub fn sign_at(&self, s: i64, k: i64) -> i8 {
        ideal_sign(self.label, s, k)
    }

    pub fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.s_range.0..=self.s_range.1).flat_map(move |s| (self.k_range.0..=self.k_range.1).map(move |k| (s, k)))
    }
}

pub fn ideal_lattice(label: LogicalLabel) -> IdealLattice {
    let s_range = (-4, 4);
    let k_range = (-2, 2);
    let native_pitch = match label.canonical() {
        LogicalLabel::ZeroT | LogicalLabel::OneT => (PI, 0.5),
        LogicalLabel::ZeroOmega | LogicalLabel::OneOmega => (FRAC_PI_2, 1.0),
        _ => (FRAC_PI_2, 0.5),
    };
    let sign = Array2::from_shape_fn(
        ((s_range.1 - s_range.0 + 1) as usize, (k_range.1 - k_range.0 + 1) as usize),
        |(i, j)| ideal_sign(label, s_range.0 + i as i64, k_range.0 + j as i64),
    );
    IdealLattice {
        label,
        s_range,
        k_range,
        pitch: (TAU_PITCH, MU_PITCH),
        native_pitch,
        weight: 1.0,
        sign,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_lattice_signs() {
        // 0_t at native (s=1, k=1), i.e. τ = π, μ = 1/2.
        assert_eq!(ideal_sign(LogicalLabel::ZeroT, 2, 1), -1);
        assert_eq!(ideal_sign(LogicalLabel::OneT, 2, 1), 1);
        assert_eq!(ideal_sign(LogicalLabel::ZeroT, 0, 0), 1);
        // 0_ω: "+1 if s or k is even, −1 if both odd" in its native (τ = sπ/2, μ = k) indices.
        for s in -4..=4 {
            for k in -1..=1i64 {
                let expected = if s % 2 != 0 && k % 2 != 0 { -1 } else { 1 };
                assert_eq!(ideal_sign(LogicalLabel::ZeroOmega, s, 2 * k), expected);
                assert_eq!(ideal_sign(LogicalLabel::ZeroOmega, s, 2 * k + 1), 0);
            }
        }
    }

    #[test]
    fn dual_names_share_lattices() {
        assert_eq!(ideal_lattice(LogicalLabel::PlusOmega).sign, ideal_lattice(LogicalLabel::ZeroT).sign);
        assert_eq!(ideal_lattice(LogicalLabel::MinusOmega).sign, ideal_lattice(LogicalLabel::OneT).sign);
    }

    #[test]
    fn plus_and_minus_i_differ_only_on_odd_points() {
        for s in -4..=4 {
            for k in -2..=2 {
                let (p, m) = (ideal_sign(LogicalLabel::PlusIT, s, k), ideal_sign(LogicalLabel::MinusIT, s, k));
                if s % 2 != 0 && k % 2 != 0 {
                    assert_eq!(p, -m);
                    assert_ne!(p, 0);
                } else {
                    assert_eq!(p, m);
                }
            }
        }
    }
}
