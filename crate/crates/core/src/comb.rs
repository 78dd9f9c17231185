//! Physical frequency-comb codewords and their inner products.
//!
//! A physical codeword is a Gaussian envelope of width κ multiplying a comb of
//! Gaussian peaks of width σ, with peak signs and parity set by the logical
//! label. All widths are in units of the free spectral range.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{check_width, Error, Result};
use crate::grid::{trapezoid_weight, GridSpec, DEFAULT_SAMPLES_PER_FSR};

/// Largest `x` with `exp(-x)` still a normal double.
const EXP_UNDERFLOW: f64 = 745.0;

/// Chirp (in Talbot units) the default grid is sized to propagate without wrap-around.
pub const DEFAULT_MAX_CHIRP: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicalLabel {
    ZeroT,
    OneT,
    PlusIT,
    MinusIT,
    ZeroOmega,
    OneOmega,
    PlusOmega,
    MinusOmega,
}

impl LogicalLabel {
    pub const ALL: [LogicalLabel; 8] = [
        LogicalLabel::ZeroT,
        LogicalLabel::OneT,
        LogicalLabel::PlusIT,
        LogicalLabel::MinusIT,
        LogicalLabel::ZeroOmega,
        LogicalLabel::OneOmega,
        LogicalLabel::PlusOmega,
        LogicalLabel::MinusOmega,
    ];

    /// The six distinct codewords, one name per state.
    pub const CODEWORDS: [LogicalLabel; 6] = [
        LogicalLabel::ZeroT,
        LogicalLabel::OneT,
        LogicalLabel::PlusIT,
        LogicalLabel::MinusIT,
        LogicalLabel::ZeroOmega,
        LogicalLabel::OneOmega,
    ];

    /// The other name of the same state when the enum carries both (`0_t = +_ω`, `1_t = −_ω`).
    pub fn dual(self) -> Option<LogicalLabel> {
        match self {
            LogicalLabel::ZeroT => Some(LogicalLabel::PlusOmega),
            LogicalLabel::PlusOmega => Some(LogicalLabel::ZeroT),
            LogicalLabel::OneT => Some(LogicalLabel::MinusOmega),
            LogicalLabel::MinusOmega => Some(LogicalLabel::OneT),
            _ => None,
        }
    }

    /// Canonical representative used for construction.
    pub fn canonical(self) -> LogicalLabel {
        match self {
            LogicalLabel::PlusOmega => LogicalLabel::ZeroT,
            LogicalLabel::MinusOmega => LogicalLabel::OneT,
            other => other,
        }
    }

    /// Real coefficient of the peak at `n·ω̄`, or `None` for the complex superpositions.
    pub fn peak_coefficient(self, n: i64) -> Option<f64> {
        let odd = n.rem_euclid(2) == 1;
        match self.canonical() {
            LogicalLabel::ZeroT => Some(1.0),
            LogicalLabel::OneT => Some(if odd { -1.0 } else { 1.0 }),
            LogicalLabel::ZeroOmega => Some(if odd { 0.0 } else { 1.0 }),
            LogicalLabel::OneOmega => Some(if odd { 1.0 } else { 0.0 }),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogicalLabel::ZeroT => "zero_t",
            LogicalLabel::OneT => "one_t",
            LogicalLabel::PlusIT => "plus_i_t",
            LogicalLabel::MinusIT => "minus_i_t",
            LogicalLabel::ZeroOmega => "zero_omega",
            LogicalLabel::OneOmega => "one_omega",
            LogicalLabel::PlusOmega => "plus_omega",
            LogicalLabel::MinusOmega => "minus_omega",
        }
    }
}

impl fmt::Display for LogicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogicalLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let label = match s.trim() {
            "zero_t" | "0t" => LogicalLabel::ZeroT,
            "one_t" | "1t" => LogicalLabel::OneT,
            "plus_i_t" | "+it" => LogicalLabel::PlusIT,
            "minus_i_t" | "-it" => LogicalLabel::MinusIT,
            "zero_omega" | "0w" | "plus_t" | "+t" => LogicalLabel::ZeroOmega,
            "one_omega" | "1w" | "minus_t" | "-t" => LogicalLabel::OneOmega,
            "plus_omega" | "+w" => LogicalLabel::PlusOmega,
            "minus_omega" | "-w" => LogicalLabel::MinusOmega,
            _ => return Err(Error::InvalidArgument(format!("unknown logical label `{s}`"))),
        };
        Ok(label)
    }
}

/// Comb parameters `(σ, κ)` together with truncation and sampling policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombSpec {
    peak_width: f64,
    envelope_width: f64,
    n_max: usize,
    grid: GridSpec,
}

impl CombSpec {
    /// Default truncation and a grid sized for chirps up to two Talbot lengths.
    pub fn new(sigma: f64, kappa: f64) -> Result<Self> {
        Self::for_chirp(sigma, kappa, DEFAULT_MAX_CHIRP)
    }

    /// Default truncation with a grid sized for chirps up to `max_chirp` Talbot lengths.
    pub fn for_chirp(sigma: f64, kappa: f64, max_chirp: f64) -> Result<Self> {
        check_width("sigma", sigma)?;
        check_width("kappa", kappa)?;
        let n_max = Self::default_n_max(kappa);
        let grid = Self::default_grid(sigma, kappa, n_max, max_chirp)?;
        Self::with_parts(sigma, kappa, n_max, grid)
    }

    pub fn with_parts(sigma: f64, kappa: f64, n_max: usize, grid: GridSpec) -> Result<Self> {
        check_width("sigma", sigma)?;
        check_width("kappa", kappa)?;
        if n_max < 1 {
            return Err(Error::InvalidArgument("n_max must be at least 1".into()));
        }
        let required = Self::required_span(sigma, n_max);
        if grid.span() < required {
            return Err(Error::GridTooNarrow { span: grid.span(), required });
        }
        Ok(Self { peak_width: sigma, envelope_width: kappa, n_max, grid })
    }

    pub fn with_n_max(self, n_max: usize) -> Result<Self> {
        Self::with_parts(self.peak_width, self.envelope_width, n_max, self.grid)
    }

    pub fn with_grid(self, grid: GridSpec) -> Result<Self> {
        Self::with_parts(self.peak_width, self.envelope_width, self.n_max, grid)
    }

    pub fn default_n_max(kappa: f64) -> usize {
        ((5.0 * kappa).ceil() as usize).max(1)
    }

    pub fn required_span(sigma: f64, n_max: usize) -> f64 {
        2.0 * (n_max as f64 + 5.0 * sigma)
    }

    /// Sampling that resolves the peaks (8 samples per σ) and keeps the time
    /// window wide enough for the envelope `~1/σ` plus the chirp-induced
    /// delays `2β·n` of the outermost peaks.
    pub fn default_grid(sigma: f64, kappa: f64, n_max: usize, max_chirp: f64) -> Result<GridSpec> {
        let beta = max_chirp.abs() * PI;
        let half_window = 2.0 * beta * (n_max as f64 + 1.0) + 8.0 / sigma + 8.0 / kappa;
        let spf = [
            DEFAULT_SAMPLES_PER_FSR as f64,
            (8.0 / sigma).ceil(),
            (half_window / PI).ceil(),
        ]
        .into_iter()
        .fold(0.0, f64::max) as usize;
        let spf = spf.div_ceil(8) * 8;
        GridSpec::covering(spf, Self::required_span(sigma, n_max))
    }

    pub fn sigma(&self) -> f64 {
        self.peak_width
    }

    pub fn kappa(&self) -> f64 {
        self.envelope_width
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Neighbouring peaks overlap substantially once σ reaches half the FSR.
    pub fn peaks_overlap(&self) -> bool {
        self.peak_width >= 0.5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Frequency,
    Time,
}

impl Domain {
    fn name(self) -> &'static str {
        match self {
            Domain::Frequency => "frequency",
            Domain::Time => "time",
        }
    }
}

/// Sampled wavefunction on a [`GridSpec`], in frequency or time.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    grid: GridSpec,
    domain: Domain,
    amplitudes: Vec<Complex64>,
}

impl SpectralState {
    pub fn new(grid: GridSpec, domain: Domain, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes for a grid of {} samples",
                amplitudes.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, domain, amplitudes })
    }

    /// Rescaled copy with unit trapezoidal norm.
    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument(format!("cannot normalize a state of norm {norm}")));
        }
        let inv = 1.0 / norm;
        self.amplitudes.iter_mut().for_each(|a| *a *= inv);
        Ok(self)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Sample spacing in the state's own domain.
    pub fn step(&self) -> f64 {
        match self.domain {
            Domain::Frequency => self.grid.d_omega(),
            Domain::Time => self.grid.d_time(),
        }
    }

    /// Sample coordinates in the state's own domain.
    pub fn axis(&self) -> Vec<f64> {
        match self.domain {
            Domain::Frequency => self.grid.omega_axis(),
            Domain::Time => self.grid.time_axis(),
        }
    }

    pub fn norm(&self) -> f64 {
        let n = self.amplitudes.len();
        let sum: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(j, a)| trapezoid_weight(j, n) * a.norm_sqr())
            .sum();
        (sum * self.step()).sqrt()
    }

    pub(crate) fn require(&self, domain: Domain) -> Result<()> {
        if self.domain == domain {
            Ok(())
        } else {
            Err(Error::WrongDomain { expected: domain.name() })
        }
    }

    pub(crate) fn map_amplitudes(&self, f: impl Fn(usize, Complex64) -> Complex64 + Sync) -> Self {
        let amplitudes = self
            .amplitudes
            .par_iter()
            .enumerate()
            .map(|(j, &a)| f(j, a))
            .collect();
        Self { grid: self.grid, domain: self.domain, amplitudes }
    }

    /// Linear combination `a·self + b·other` on a shared grid.
    pub fn combine(&self, a: Complex64, other: &SpectralState, b: Complex64) -> Result<Self> {
        same_space(self, other)?;
        Ok(self.map_amplitudes(|j, x| a * x + b * other.amplitudes[j]))
    }
}

fn same_space(a: &SpectralState, b: &SpectralState) -> Result<()> {
    if a.grid == b.grid && a.domain == b.domain {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

/// `⟨a|b⟩` by trapezoidal quadrature.
pub fn overlap(a: &SpectralState, b: &SpectralState) -> Result<Complex64> {
    same_space(a, b)?;
    let n = a.amplitudes.len();
    let sum: Complex64 = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .enumerate()
        .map(|(j, (x, y))| x.conj() * y * trapezoid_weight(j, n))
        .sum();
    Ok(sum * a.step())
}

/// Unit-norm frequency-domain codeword for `label`.
pub fn build_physical_state(label: LogicalLabel, spec: &CombSpec) -> Result<SpectralState> {
    match label.canonical() {
        LogicalLabel::PlusIT | LogicalLabel::MinusIT => {
            let zero = build_physical_state(LogicalLabel::ZeroT, spec)?;
            let one = build_physical_state(LogicalLabel::OneT, spec)?;
            let phase = if label.canonical() == LogicalLabel::PlusIT { 1.0 } else { -1.0 };
            zero.combine(Complex64::new(1.0, 0.0), &one, Complex64::new(0.0, phase))?
                .normalized()
        }
        canonical => {
            let amplitudes = comb_samples(spec, |n| canonical.peak_coefficient(n).unwrap_or(0.0));
            SpectralState::new(spec.grid, Domain::Frequency, amplitudes)?.normalized()
        }
    }
}

fn comb_samples(spec: &CombSpec, coefficient: impl Fn(i64) -> f64 + Sync) -> Vec<Complex64> {
    let grid = spec.grid;
    let sigma = spec.peak_width;
    let kappa = spec.envelope_width;
    let n_max = spec.n_max as i64;
    let reach = sigma * (2.0 * EXP_UNDERFLOW).sqrt();
    (0..grid.len())
        .into_par_iter()
        .map(|j| {
            let w = grid.omega(j);
            let lo = ((w - reach).ceil() as i64).max(-n_max);
            let hi = ((w + reach).floor() as i64).min(n_max);
            let comb: f64 = (lo..=hi)
                .map(|n| {
                    let c = coefficient(n);
                    if c == 0.0 {
                        0.0
                    } else {
                        let d = w - n as f64;
                        c * (-d * d / (2.0 * sigma * sigma)).exp()
                    }
                })
                .sum();
            Complex64::new(comb * (-w * w / (2.0 * kappa * kappa)).exp(), 0.0)
        })
        .collect()
}

/// Time-domain `0_t` or `1_t` sampled directly from the discrete-envelope
/// expression `Σ_k e^{−σ²t_k²/2} e^{−(t−t_k)²κ²/2}`, with `t_k = 2πk` for `0_t`
/// and `(2k+1)π` for `1_t`. Only those two labels (and their dual names) are accepted.
pub fn build_time_codeword(label: LogicalLabel, spec: &CombSpec) -> Result<SpectralState> {
    let shift = match label.canonical() {
        LogicalLabel::ZeroT => 0.0,
        LogicalLabel::OneT => PI,
        other => {
            return Err(Error::InvalidArgument(format!(
                "no discrete time-domain expression for {other}"
            )))
        }
    };
    let grid = spec.grid;
    let sigma = spec.peak_width;
    let kappa = spec.envelope_width;
    let half = PI * grid.samples_per_fsr() as f64;
    let k_max = (half / (2.0 * PI)).ceil() as i64 + 1;
    let reach = (2.0 * EXP_UNDERFLOW).sqrt() / kappa;
    let amplitudes = (0..grid.len())
        .into_par_iter()
        .map(|j| {
            let t = grid.time(j);
            let lo = (((t - reach - shift) / (2.0 * PI)).ceil() as i64).max(-k_max);
            let hi = (((t + reach - shift) / (2.0 * PI)).floor() as i64).min(k_max);
            let v: f64 = (lo..=hi)
                .map(|k| {
                    let tk = 2.0 * PI * k as f64 + shift;
                    let d = t - tk;
                    (-0.5 * sigma * sigma * tk * tk - 0.5 * d * d * kappa * kappa).exp()
                })
                .sum();
            Complex64::new(v, 0.0)
        })
        .collect();
    SpectralState::new(grid, Domain::Time, amplitudes)?.normalized()
}
