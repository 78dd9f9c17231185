//! Discrete Fourier sums on uniform grids.
//!
//! `fourier_sum` evaluates `Σ_j x_j e^{i·sign·(ω₀ + j·dω)·t}` at arbitrary
//! times. Uniformly spaced times go through a chirp-z transform built on
//! `rustfft`; anything else falls back to direct summation.

use num_complex::Complex64;
use rustfft::FftPlanner;

const DIRECT_LIMIT: usize = 8;

pub(crate) fn fft_in_place(data: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(data.len())
    } else {
        planner.plan_fft_forward(data.len())
    };
    fft.process(data);
}

fn uniform_step(times: &[f64]) -> Option<f64> {
    if times.len() < 2 {
        return None;
    }
    let step = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    if step == 0.0 || !step.is_finite() {
        return None;
    }
    let scale = times[0].abs().max(times[times.len() - 1].abs()).max(step.abs());
    let uniform = times
        .iter()
        .enumerate()
        .all(|(k, &t)| (t - (times[0] + k as f64 * step)).abs() <= 1e-12 * scale);
    uniform.then_some(step)
}

/// `Σ_j x_j exp(i·sign·(ω₀ + j·dω)·t_k)` for every `t_k` in `times`.
pub fn fourier_sum(x: &[Complex64], omega0: f64, d_omega: f64, times: &[f64], sign: f64) -> Vec<Complex64> {
    let first = x.iter().position(|v| *v != Complex64::new(0.0, 0.0));
    let Some(first) = first else {
        return vec![Complex64::new(0.0, 0.0); times.len()];
    };
    let last = x.iter().rposition(|v| *v != Complex64::new(0.0, 0.0)).unwrap_or(first);
    let x = &x[first..=last];
    let omega0 = omega0 + first as f64 * d_omega;
    match uniform_step(times) {
        Some(dt) if times.len() > DIRECT_LIMIT => chirp_z(x, omega0, d_omega, times[0], dt, times.len(), sign),
        _ => times.iter().map(|&t| direct(x, omega0, d_omega, t, sign)).collect(),
    }
}

fn direct(x: &[Complex64], omega0: f64, d_omega: f64, t: f64, sign: f64) -> Complex64 {
    x.iter()
        .enumerate()
        .map(|(j, &v)| v * Complex64::from_polar(1.0, sign * (omega0 + j as f64 * d_omega) * t))
        .sum()
}

/// Bluestein evaluation on `t_k = t0 + k·dt`, `k < m`, using `jk = (j² + k² − (k−j)²)/2`.
fn chirp_z(x: &[Complex64], omega0: f64, d_omega: f64, t0: f64, dt: f64, m: usize, sign: f64) -> Vec<Complex64> {
    let n = x.len();
    let alpha = sign * d_omega * dt;
    let half_chirp = |j: i64| Complex64::from_polar(1.0, 0.5 * alpha * (j * j) as f64);
    let len = (n + m - 1).next_power_of_two();

    let mut a = vec![Complex64::new(0.0, 0.0); len];
    for (j, (slot, &v)) in a.iter_mut().zip(x).enumerate() {
        let shift = Complex64::from_polar(1.0, sign * j as f64 * d_omega * t0);
        *slot = v * shift * half_chirp(j as i64);
    }
    let mut b = vec![Complex64::new(0.0, 0.0); len];
    for k in 0..m {
        b[k] = half_chirp(k as i64).conj();
    }
    for j in 1..n {
        b[len - j] = half_chirp(j as i64).conj();
    }

    fft_in_place(&mut a, false);
    fft_in_place(&mut b, false);
    for (u, v) in a.iter_mut().zip(&b) {
        *u *= v;
    }
    fft_in_place(&mut a, true);
    let scale = 1.0 / len as f64;

    (0..m)
        .map(|k| {
            let t = t0 + k as f64 * dt;
            a[k] * scale * half_chirp(k as i64) * Complex64::from_polar(1.0, sign * omega0 * t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chirp_z_agrees_with_direct_sum() {
        let x: Vec<Complex64> = (0..300)
            .map(|j| {
                let w = -3.0 + j as f64 * 0.02;
                Complex64::new((-w * w).exp(), 0.3 * w * (-w * w).exp())
            })
            .collect();
        let times: Vec<f64> = (0..50).map(|k| -7.0 + 0.31 * k as f64).collect();
        for sign in [-1.0, 2.0] {
            let fast = fourier_sum(&x, -3.0, 0.02, &times, sign);
            for (k, &t) in times.iter().enumerate() {
                let slow = direct(&x, -3.0, 0.02, t, sign);
                assert!((fast[k] - slow).norm() < 1e-12, "k={k}");
            }
        }
    }

    #[test]
    fn irregular_times_use_direct_path() {
        let x = vec![Complex64::new(1.0, 0.0); 4];
        let out = fourier_sum(&x, 0.0, 1.0, &[0.0, 0.1, 0.5], -1.0);
        assert!((out[0] - Complex64::new(4.0, 0.0)).norm() < 1e-15);
    }
}
