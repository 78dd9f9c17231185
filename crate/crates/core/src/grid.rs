//! Uniform sampling grids shared by the frequency and time representations.
//!
//! Frequencies are in units of the free spectral range and times in units of
//! its inverse. Sample `j` sits at `ω_j = (j − N/2)·dω` and, after the Fourier
//! transform, at `t_j = (j − N/2)·dt` with `N·dω·dt = 2π`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MIN_SAMPLES_PER_FSR: usize = 16;
pub const DEFAULT_SAMPLES_PER_FSR: usize = 64;
const MIN_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    samples_per_fsr: usize,
    len: usize,
}

impl GridSpec {
    pub fn new(samples_per_fsr: usize, len: usize) -> Result<Self> {
        if samples_per_fsr < MIN_SAMPLES_PER_FSR {
            return Err(Error::InvalidGrid(format!(
                "samples_per_fsr = {samples_per_fsr} is below {MIN_SAMPLES_PER_FSR}"
            )));
        }
        if len < MIN_LEN || !len.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "sample count {len} must be a power of two ≥ {MIN_LEN}"
            )));
        }
        Ok(Self { samples_per_fsr, len })
    }

    /// Smallest power-of-two grid at this resolution whose span reaches `min_span`.
    pub fn covering(samples_per_fsr: usize, min_span: f64) -> Result<Self> {
        if !(min_span.is_finite() && min_span > 0.0) {
            return Err(Error::InvalidGrid(format!("span {min_span} must be positive")));
        }
        let needed = (min_span * samples_per_fsr as f64).ceil() as usize;
        Self::new(samples_per_fsr, needed.max(MIN_LEN).next_power_of_two())
    }

    pub fn samples_per_fsr(&self) -> usize {
        self.samples_per_fsr
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn span(&self) -> f64 {
        self.len as f64 / self.samples_per_fsr as f64
    }

    pub fn d_omega(&self) -> f64 {
        1.0 / self.samples_per_fsr as f64
    }

    pub fn d_time(&self) -> f64 {
        2.0 * PI / self.span()
    }

    pub fn omega(&self, j: usize) -> f64 {
        self.offset(j) as f64 * self.d_omega()
    }

    pub fn time(&self, j: usize) -> f64 {
        self.offset(j) as f64 * self.d_time()
    }

    pub fn omega_axis(&self) -> Vec<f64> {
        (0..self.len).map(|j| self.omega(j)).collect()
    }

    pub fn time_axis(&self) -> Vec<f64> {
        (0..self.len).map(|j| self.time(j)).collect()
    }

    /// Number of whole frequency steps in `shift`, if it is a grid multiple.
    pub fn steps_in(&self, shift: f64) -> Result<i64> {
        let steps = shift * self.samples_per_fsr as f64;
        let rounded = steps.round();
        if (steps - rounded).abs() > 1e-9 * rounded.abs().max(1.0) {
            return Err(Error::OffGridShift { shift, step: self.d_omega() });
        }
        Ok(rounded as i64)
    }

    fn offset(&self, j: usize) -> i64 {
        j as i64 - (self.len / 2) as i64
    }
}

/// Trapezoidal weights on a uniform grid of `len` points.
pub(crate) fn trapezoid_weight(j: usize, len: usize) -> f64 {
    if j == 0 || j + 1 == len {
        0.5
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_rounds_up_to_power_of_two() {
        let g = GridSpec::covering(64, 100.5).unwrap();
        assert_eq!(g.len(), 8192);
        assert!(g.span() >= 100.5);
        assert!((g.len() as f64 * g.d_omega() * g.d_time() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn rejects_coarse_or_odd_grids() {
        assert!(GridSpec::new(8, 1024).is_err());
        assert!(GridSpec::new(64, 1000).is_err());
    }

    #[test]
    fn zero_sits_at_half_length() {
        let g = GridSpec::new(16, 64).unwrap();
        assert_eq!(g.omega(32), 0.0);
        assert_eq!(g.time(32), 0.0);
        assert_eq!(g.steps_in(0.5).unwrap(), 8);
        assert!(g.steps_in(0.51).is_err());
    }
}
