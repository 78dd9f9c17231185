//! Cavity-filtered SPDC biphoton and its collective-variable reduction.
//!
//! `F(ω_s, ω_i) = f₊(ω₊) f₋(ω₋) f_cav(ω_s) f_cav(ω_i)` with
//! `ω± = (ω_s ± ω_i)/√2`, Gaussian `f₊` (pump, centred on `ω_p`) and `f₋`
//! (phase matching), and `f_cav` a comb of Gaussian peaks on integer
//! frequencies. Under a monochromatic pump the pair lives on the antidiagonal
//! `ω_s + ω_i = √2·ω_p` and is described by `F₋(ω₋)`. Measuring `ω₋` in units of
//! `√2·ω̄`, i.e. `u = ω₋/√2`, puts the collective comb back on integers:
//!
//! `F₋(u) = f₋(√2u) f_cav(c + u) f_cav(c − u)`, `c = ω_p/√2`,
//!
//! which for a comb line at `c` is the `+_ω` codeword with
//! `σ_eff = σ/√2` and `κ_eff = pm_width/√2`.

use std::f64::consts::SQRT_2;

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::comb::{CombSpec, Domain, SpectralState};
use crate::error::{check_width, Error, Result};
use crate::grid::GridSpec;

const MIN_SAMPLES_PER_WIDTH: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JsaSpec {
    /// Width of `f₊`; zero selects the monochromatic pump.
    pub pump_width: f64,
    /// Width of `f₋`.
    pub pm_width: f64,
    /// Peak width of the cavity comb, or `None` for no cavity.
    pub cavity_width: Option<f64>,
    /// Pump frequency `ω_p` relative to the carrier.
    pub pump_center: f64,
}

impl JsaSpec {
    pub fn new(pump_width: f64, pm_width: f64, cavity_width: Option<f64>, pump_center: f64) -> Result<Self> {
        if !(pump_width.is_finite() && pump_width >= 0.0) {
            return Err(Error::NonPositiveWidth { name: "pump_width", value: pump_width });
        }
        check_width("pm_width", pm_width)?;
        if let Some(w) = cavity_width {
            check_width("cavity_width", w)?;
        }
        if !pump_center.is_finite() {
            return Err(Error::InvalidArgument("pump_center must be finite".into()));
        }
        Ok(Self { pump_width, pm_width, cavity_width, pump_center })
    }

    pub fn is_monochromatic(&self) -> bool {
        self.pump_width == 0.0
    }

    /// Degenerate signal/idler frequency `c = ω_p/√2`.
    pub fn degenerate_frequency(&self) -> f64 {
        self.pump_center / SQRT_2
    }

    /// `(σ_eff, κ_eff) = (σ/√2, pm_width/√2)` of the collective comb.
    pub fn effective_widths(&self) -> Option<(f64, f64)> {
        self.cavity_width.map(|s| (s / SQRT_2, self.pm_width / SQRT_2))
    }

    /// Comb spec with the effective widths and the default grid policy.
    pub fn effective_comb(&self) -> Result<CombSpec> {
        let (sigma, kappa) = self
            .effective_widths()
            .ok_or_else(|| Error::InvalidArgument("no cavity comb, so no effective comb".into()))?;
        CombSpec::new(sigma, kappa)
    }

    fn f_plus(&self, w_plus: f64) -> f64 {
        let x = w_plus - self.pump_center;
        (-x * x / (2.0 * self.pump_width * self.pump_width)).exp()
    }

    fn f_minus(&self, w_minus: f64) -> f64 {
        (-w_minus * w_minus / (2.0 * self.pm_width * self.pm_width)).exp()
    }

    fn f_cav(&self, w: f64) -> f64 {
        match self.cavity_width {
            None => 1.0,
            Some(sigma) => {
                let reach = sigma * 38.6;
                let lo = (w - reach).ceil() as i64;
                let hi = (w + reach).floor() as i64;
                (lo..=hi)
                    .map(|n| {
                        let d = w - n as f64;
                        (-d * d / (2.0 * sigma * sigma)).exp()
                    })
                    .sum()
            }
        }
    }

    /// Unnormalized `F₋` at rescaled collective frequency `u = ω₋/√2`.
    pub fn collective_amplitude(&self, u: f64) -> f64 {
        let c = self.degenerate_frequency();
        self.f_minus(SQRT_2 * u) * self.f_cav(c + u) * self.f_cav(c - u)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JsaGrid {
    pub omega_s: Vec<f64>,
    pub omega_i: Vec<f64>,
    /// `amplitude[[j_s, j_i]]`, normalized so `Σ|F|²·dω² = 1`.
    pub amplitude: Array2<Complex64>,
    pub step: f64,
    centre_index: usize,
}

impl JsaGrid {
    pub fn intensity(&self) -> Array2<f64> {
        self.amplitude.mapv(|a| a.norm_sqr())
    }

    pub fn norm(&self) -> f64 {
        (self.amplitude.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.step * self.step).sqrt()
    }

    /// Largest `|F(ω_s, ω_i) − F(ω_i, ω_s)|`.
    pub fn exchange_asymmetry(&self) -> f64 {
        let n = self.omega_s.len();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..a {
                worst = worst.max((self.amplitude[[a, b]] - self.amplitude[[b, a]]).norm());
            }
        }
        worst
    }

    /// Samples on `ω_s + ω_i = 2c`, returned as `(u = ω_s − c, F)`.
    pub fn antidiagonal_slice(&self) -> (Vec<f64>, Vec<Complex64>) {
        let n = self.omega_s.len();
        let pivot = 2 * self.centre_index;
        let c = self.omega_s[self.centre_index];
        (0..n)
            .filter(|&j| pivot >= j && pivot - j < n)
            .map(|j| (self.omega_s[j] - c, self.amplitude[[j, pivot - j]]))
            .unzip()
    }

    /// Fraction of `|F|²` with `|ω₊ − ω_p| > band`.
    pub fn mass_outside_band(&self, pump_center: f64, band: f64) -> f64 {
        let mut outside = 0.0;
        let mut total = 0.0;
        for (a, &ws) in self.omega_s.iter().enumerate() {
            for (b, &wi) in self.omega_i.iter().enumerate() {
                let p = self.amplitude[[a, b]].norm_sqr();
                total += p;
                if ((ws + wi) / SQRT_2 - pump_center).abs() > band {
                    outside += p;
                }
            }
        }
        outside / total
    }
}

/// Sampled `F(ω_s, ω_i)` on an `n × n` grid centred on the degenerate frequency.
pub fn build_jsa(spec: &JsaSpec, n: usize) -> Result<JsaGrid> {
    if n < 64 {
        return Err(Error::InvalidArgument(format!("JSA grid needs n ≥ 64, got {n}")));
    }
    let half = 6.0 * (spec.pm_width + spec.pump_width) / SQRT_2 + 1.0;
    let per_fsr = (n as f64 / (2.0 * half)).floor().max(1.0);
    let step = 1.0 / per_fsr;
    let finest = [spec.cavity_width, (!spec.is_monochromatic()).then_some(spec.pump_width)]
        .into_iter()
        .flatten()
        .fold(f64::INFINITY, f64::min);
    if finest.is_finite() && finest / step < MIN_SAMPLES_PER_WIDTH {
        return Err(Error::GridTooCoarse { samples_per_width: finest / step });
    }

    let c = spec.degenerate_frequency();
    let centre_index = n / 2;
    let axis: Vec<f64> = (0..n).map(|j| c + (j as f64 - centre_index as f64) * step).collect();
    let cav: Vec<f64> = axis.iter().map(|&w| spec.f_cav(w)).collect();

    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| {
                    let (ws, wi) = (axis[a], axis[b]);
                    let pump = if spec.is_monochromatic() {
                        if a + b == 2 * centre_index {
                            1.0
                        } else {
                            0.0
                        }
                    } else {
                        spec.f_plus((ws + wi) / SQRT_2)
                    };
                    if pump == 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    Complex64::new(pump * spec.f_minus((ws - wi) / SQRT_2) * cav[a] * cav[b], 0.0)
                })
                .collect()
        })
        .collect();

    let mut amplitude = Array2::zeros((n, n));
    for (a, row) in rows.into_iter().enumerate() {
        amplitude.row_mut(a).iter_mut().zip(row).for_each(|(slot, v)| *slot = v);
    }
    let norm = (amplitude.iter().map(|v: &Complex64| v.norm_sqr()).sum::<f64>() * step * step).sqrt();
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument("JSA vanishes on the grid".into()));
    }
    amplitude.mapv_inplace(|v| v / norm);
    Ok(JsaGrid { omega_s: axis.clone(), omega_i: axis, amplitude, step, centre_index })
}

/// Unit-norm collective-variable state `F₋(u)` on `grid`.
pub fn reduce_to_minus(spec: &JsaSpec, grid: GridSpec) -> Result<SpectralState> {
    if !spec.is_monochromatic() {
        return Err(Error::NonMonochromatic(spec.pump_width));
    }
    let amplitudes = (0..grid.len())
        .into_par_iter()
        .map(|j| Complex64::new(spec.collective_amplitude(grid.omega(j)), 0.0))
        .collect();
    SpectralState::new(grid, Domain::Frequency, amplitudes)?.normalized()
}
