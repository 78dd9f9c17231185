//! Quadratic spectral phase, Fourier transforms and Talbot carpets.
//!
//! Propagation through a dispersive medium multiplies the frequency-domain
//! wavefunction by `e^{iβω²}`. The Talbot chirp is `β_T = π/ω̄²`, so with
//! `ω̄ = 1` every chirp is quoted as a multiple of π.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::comb::{build_physical_state, CombSpec, Domain, LogicalLabel, SpectralState};
use crate::error::{Error, Result};
use crate::grid::trapezoid_weight;
use crate::transform::{fft_in_place, fourier_sum};

/// Talbot chirp for a unit free spectral range.
pub const BETA_TALBOT: f64 = PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chirp {
    beta: f64,
}

impl Chirp {
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_finite() {
            Ok(Self { beta })
        } else {
            Err(Error::InvalidArgument(format!("chirp {beta} is not finite")))
        }
    }

    /// `fraction·β_T`.
    pub fn talbot(fraction: f64) -> Result<Self> {
        Self::new(fraction * BETA_TALBOT)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn beta_talbot(&self) -> f64 {
        BETA_TALBOT
    }

    /// The chirp in units of `β_T`.
    pub fn in_talbot_units(&self) -> f64 {
        self.beta / BETA_TALBOT
    }
}

/// Largest chirp, in Talbot units, that the grid propagates without
/// the outermost peaks wrapping around the time window.
pub fn chirp_capacity(spec: &CombSpec) -> f64 {
    let grid = spec.grid();
    let free = PI * grid.samples_per_fsr() as f64 - 8.0 / spec.sigma() - 8.0 / spec.kappa();
    (free / (2.0 * BETA_TALBOT * (spec.n_max() as f64 + 1.0))).max(0.0)
}

pub fn apply_chirp(state: &SpectralState, chirp: Chirp) -> Result<SpectralState> {
    state.require(Domain::Frequency)?;
    let grid = state.grid();
    let beta = chirp.beta;
    Ok(state.map_amplitudes(|j, a| {
        let w = grid.omega(j);
        a * Complex64::from_polar(1.0, beta * w * w)
    }))
}

fn alternate(data: &mut [Complex64]) {
    data.iter_mut().skip(1).step_by(2).for_each(|v| *v = -*v);
}

/// `ψ̃(t) = ∫ dω/√(2π) ψ(ω) e^{−iωt}` on the grid's time samples.
pub fn to_time_domain(state: &SpectralState) -> Result<SpectralState> {
    state.require(Domain::Frequency)?;
    let grid = state.grid();
    let mut data = state.amplitudes().to_vec();
    alternate(&mut data);
    fft_in_place(&mut data, false);
    alternate(&mut data);
    let scale = grid.d_omega() / (2.0 * PI).sqrt();
    data.iter_mut().for_each(|v| *v *= scale);
    SpectralState::new(grid, Domain::Time, data)
}

/// Inverse of [`to_time_domain`].
pub fn to_freq_domain(state: &SpectralState) -> Result<SpectralState> {
    state.require(Domain::Time)?;
    let grid = state.grid();
    let mut data = state.amplitudes().to_vec();
    alternate(&mut data);
    fft_in_place(&mut data, true);
    alternate(&mut data);
    let scale = grid.d_time() / (2.0 * PI).sqrt();
    data.iter_mut().for_each(|v| *v *= scale);
    SpectralState::new(grid, Domain::Frequency, data)
}

/// `ψ̃(t)` at arbitrary times, evaluated exactly from the frequency samples.
pub fn time_amplitudes_at(state: &SpectralState, times: &[f64]) -> Result<Vec<Complex64>> {
    state.require(Domain::Frequency)?;
    let grid = state.grid();
    let n = grid.len();
    let scale = grid.d_omega() / (2.0 * PI).sqrt();
    let weighted: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(j, &a)| a * trapezoid_weight(j, n) * scale)
        .collect();
    Ok(fourier_sum(&weighted, grid.omega(0), grid.d_omega(), times, -1.0))
}

/// Uniform samples of `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

pub const DEFAULT_CARPET_HALF_WIDTH: f64 = 4.0 * PI;

#[derive(Debug, Clone, PartialEq)]
pub struct TalbotCarpet {
    /// Times in units of `1/ω̄`.
    pub t_axis: Vec<f64>,
    /// Chirps in units of `β_T`.
    pub beta_axis: Vec<f64>,
    /// `intensity[[b, t]]`, each row normalized to unit integral over `t_axis`.
    pub intensity: Array2<f64>,
    /// Fraction of the full time-domain norm that fell inside `t_axis`, per row.
    pub raw_norms: Vec<f64>,
}

/// Carpet over `t ∈ [−4π, 4π]`.
pub fn talbot_carpet(
    spec: &CombSpec,
    label: LogicalLabel,
    beta_range: (f64, f64),
    n_beta: usize,
    n_t: usize,
) -> Result<TalbotCarpet> {
    let w = DEFAULT_CARPET_HALF_WIDTH;
    talbot_carpet_in(spec, label, beta_range, n_beta, (-w, w), n_t)
}

/// Joint temporal intensity `|ψ̃(t, β)|²` for `β` in Talbot units.
pub fn talbot_carpet_in(
    spec: &CombSpec,
    label: LogicalLabel,
    beta_range: (f64, f64),
    n_beta: usize,
    t_range: (f64, f64),
    n_t: usize,
) -> Result<TalbotCarpet> {
    if n_beta < 2 || n_t < 2 {
        return Err(Error::InvalidArgument("carpet needs n_beta ≥ 2 and n_t ≥ 2".into()));
    }
    if !(t_range.1 > t_range.0) {
        return Err(Error::InvalidArgument("carpet time window is empty".into()));
    }
    let reach = beta_range.0.abs().max(beta_range.1.abs());
    if reach > chirp_capacity(spec) {
        log::warn!(
            "chirp {reach} β_T exceeds the grid capacity {:.3} β_T; outer peaks wrap in time",
            chirp_capacity(spec)
        );
    }
    let state = build_physical_state(label, spec)?;
    let beta_axis = linspace(beta_range.0, beta_range.1, n_beta);
    let t_axis = linspace(t_range.0, t_range.1, n_t);
    let dt = (t_range.1 - t_range.0) / (n_t - 1) as f64;

    let rows: Vec<(Vec<f64>, f64)> = beta_axis
        .par_iter()
        .map(|&b| -> Result<(Vec<f64>, f64)> {
            let chirped = apply_chirp(&state, Chirp::talbot(b)?)?;
            let amps = time_amplitudes_at(&chirped, &t_axis)?;
            let row: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
            let mass: f64 = row.iter().enumerate().map(|(k, v)| trapezoid_weight(k, n_t) * v).sum::<f64>() * dt;
            log::debug!("carpet row β = {b} β_T keeps {mass:.6} of the norm");
            Ok((row.into_iter().map(|v| v / mass).collect(), mass))
        })
        .collect::<Result<_>>()?;

    let mut intensity = Array2::zeros((n_beta, n_t));
    let mut raw_norms = Vec::with_capacity(n_beta);
    for (b, (row, mass)) in rows.into_iter().enumerate() {
        intensity.row_mut(b).iter_mut().zip(row).for_each(|(slot, v)| *slot = v);
        raw_norms.push(mass);
    }
    Ok(TalbotCarpet { t_axis, beta_axis, intensity, raw_norms })
}
