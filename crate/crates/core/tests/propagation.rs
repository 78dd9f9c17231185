//! Chirps, Fourier transforms and carpets.

use std::f64::consts::PI;

use num_complex::Complex64;
use talbot_gkp::*;

fn peak_index(grid: GridSpec, n: i64) -> usize {
    (n * grid.samples_per_fsr() as i64 + (grid.len() / 2) as i64) as usize
}

#[test]
fn talbot_chirp_flips_odd_peaks() {
    let spec = CombSpec::new(0.05, 10.0).unwrap();
    let state = build_physical_state(LogicalLabel::ZeroT, &spec).unwrap();
    let moved = apply_chirp(&state, Chirp::talbot(1.0).unwrap()).unwrap();
    for n in -20..=20i64 {
        let j = peak_index(spec.grid(), n);
        let ratio = moved.amplitudes()[j] / state.amplitudes()[j];
        let expected = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert!((ratio - expected).norm() < 1e-10, "n = {n}: {ratio}");
    }
}

#[test]
fn chirps_compose_additively() {
    let spec = CombSpec::new(0.1, 3.0).unwrap();
    let state = build_physical_state(LogicalLabel::PlusIT, &spec).unwrap();
    let a = apply_chirp(&apply_chirp(&state, Chirp::new(0.3).unwrap()).unwrap(), Chirp::new(1.1).unwrap()).unwrap();
    let b = apply_chirp(&state, Chirp::new(1.4).unwrap()).unwrap();
    let diff = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    assert!(diff < 1e-12);
}

#[test]
fn fft_round_trip_and_parseval() {
    let spec = CombSpec::new(0.05, 5.0).unwrap();
    let state = apply_chirp(&build_physical_state(LogicalLabel::PlusIT, &spec).unwrap(), Chirp::talbot(0.37).unwrap())
        .unwrap();
    let time = to_time_domain(&state).unwrap();
    assert!((time.norm() - 1.0).abs() < 1e-10);
    let back = to_freq_domain(&time).unwrap();
    let diff = back.amplitudes().iter().zip(state.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    assert!(diff < 1e-10);
}

#[test]
fn gaussian_transform_matches_closed_form() {
    // ψ(ω) = e^{−ω²/2} ↦ ψ̃(t) = e^{−t²/2}.
    let grid = GridSpec::new(64, 1024).unwrap();
    let amps = (0..grid.len()).map(|j| Complex64::new((-0.5 * grid.omega(j).powi(2)).exp(), 0.0)).collect();
    let state = SpectralState::new(grid, Domain::Frequency, amps).unwrap();
    let time = to_time_domain(&state).unwrap();
    for j in (0..grid.len()).step_by(37) {
        let t = grid.time(j);
        assert!((time.amplitudes()[j] - Complex64::new((-0.5 * t * t).exp(), 0.0)).norm() < 1e-12);
    }
    let times = [-1.3, 0.0, 0.25, 2.0];
    for (t, v) in times.iter().zip(time_amplitudes_at(&state, &times).unwrap()) {
        assert!((v - Complex64::new((-0.5 * t * t).exp(), 0.0)).norm() < 1e-12);
    }
}

#[test]
fn chirp_needs_frequency_domain() {
    let spec = CombSpec::new(0.1, 3.0).unwrap();
    let t = to_time_domain(&build_physical_state(LogicalLabel::ZeroT, &spec).unwrap()).unwrap();
    assert!(matches!(apply_chirp(&t, Chirp::talbot(1.0).unwrap()), Err(Error::WrongDomain { .. })));
    assert!(Chirp::new(f64::INFINITY).is_err());
}

#[test]
fn default_grid_holds_two_talbot_lengths() {
    for (sigma, kappa) in [(0.05, 10.0), (0.01, 30.0), (0.3, 1.0)] {
        let spec = CombSpec::new(sigma, kappa).unwrap();
        assert!(chirp_capacity(&spec) >= DEFAULT_MAX_CHIRP, "σ={sigma} κ={kappa}");
    }
}

fn row_at(carpet: &TalbotCarpet, beta: f64) -> usize {
    carpet.beta_axis.iter().position(|b| (b - beta).abs() < 1e-9).unwrap()
}

fn value_at(carpet: &TalbotCarpet, row: usize, t: f64) -> f64 {
    let k = carpet.t_axis.iter().position(|x| (x - t).abs() < 1e-9).unwrap();
    carpet.intensity[[row, k]]
}

#[test]
fn carpet_revives_at_talbot_multiples() {
    let spec = CombSpec::new(0.05, 10.0).unwrap();
    let carpet = talbot_carpet(&spec, LogicalLabel::ZeroT, (0.0, 2.0), 9, 257).unwrap();
    assert_eq!(carpet.intensity.dim(), (9, 257));
    for &b in &carpet.beta_axis {
        let row = row_at(&carpet, b);
        let r = carpet.intensity.row(row);
        let mass = (r.sum() - 0.5 * (r[0] + r[256])) * (8.0 * PI / 256.0);
        assert!((mass - 1.0).abs() < 1e-12, "β = {b}: {mass}");
    }
    // 0_t peaks at even multiples of π, 1_t at odd ones.
    let (r0, r1, r2) = (row_at(&carpet, 0.0), row_at(&carpet, 1.0), row_at(&carpet, 2.0));
    for r in [r0, r2] {
        assert!(value_at(&carpet, r, 0.0) > 50.0 * value_at(&carpet, r, PI));
    }
    assert!(value_at(&carpet, r1, PI) > 50.0 * value_at(&carpet, r1, 0.0));
}

#[test]
fn carpet_rejects_degenerate_axes() {
    let spec = CombSpec::new(0.05, 4.0).unwrap();
    assert!(talbot_carpet(&spec, LogicalLabel::ZeroT, (0.0, 2.0), 1, 10).is_err());
    assert!(talbot_carpet_in(&spec, LogicalLabel::ZeroT, (0.0, 2.0), 3, (1.0, 1.0), 10).is_err());
}
