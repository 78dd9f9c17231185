//! Biphoton JSA and its collective-variable reduction.

use std::f64::consts::SQRT_2;

use talbot_gkp::*;

fn mono(kappa_eff: f64, sigma_eff: f64, pump_center: f64) -> JsaSpec {
    JsaSpec::new(0.0, kappa_eff * SQRT_2, Some(sigma_eff * SQRT_2), pump_center).unwrap()
}

#[test]
fn reduction_is_the_plus_omega_codeword() {
    for (kappa, sigma, c) in [(10.0, 0.05, 0.0), (3.0, 0.1, 2.0), (5.0, 0.02, -1.0)] {
        let spec = mono(kappa, sigma, c * SQRT_2);
        let (s_eff, k_eff) = spec.effective_widths().unwrap();
        assert!((s_eff - sigma).abs() < 1e-15 && (k_eff - kappa).abs() < 1e-14);
        let comb = spec.effective_comb().unwrap();
        let reduced = reduce_to_minus(&spec, comb.grid()).unwrap();
        let ideal = build_physical_state(LogicalLabel::PlusOmega, &comb).unwrap();
        let f = state_fidelity(&reduced, &ideal).unwrap();
        assert!(f > 1.0 - 1e-6, "κ={kappa} σ={sigma} c={c}: {f}");
    }
}

#[test]
fn pumped_source_cannot_be_reduced() {
    let spec = JsaSpec::new(0.3, 5.0, Some(0.1), 0.0).unwrap();
    let grid = GridSpec::new(64, 4096).unwrap();
    assert_eq!(reduce_to_minus(&spec, grid), Err(Error::NonMonochromatic(0.3)));
}

#[test]
fn monochromatic_jsa_sits_on_same_parity_peaks() {
    let spec = mono(2.0, 0.05, 0.0);
    let jsa = build_jsa(&spec, 2048).unwrap();
    assert!((jsa.norm() - 1.0).abs() < 1e-12);
    let peak = jsa.amplitude.iter().map(|a| a.norm()).fold(0.0, f64::max);
    for ((a, b), v) in jsa.amplitude.indexed_iter() {
        if v.norm() < 1e-3 * peak {
            continue;
        }
        let (ws, wi) = (jsa.omega_s[a], jsa.omega_i[b]);
        assert!((ws + wi).abs() < 1e-12, "off the antidiagonal at ({ws}, {wi})");
        let (ns, ni) = (ws.round(), wi.round());
        assert!((ws - ns).abs() < 0.5 && (wi - ni).abs() < 0.5);
        assert_eq!((ns as i64).rem_euclid(2), (ni as i64).rem_euclid(2), "({ws}, {wi})");
    }
}

#[test]
fn antidiagonal_slice_matches_reduction() {
    let spec = mono(2.0, 0.05, 0.0);
    let jsa = build_jsa(&spec, 2048).unwrap();
    let (u, slice) = jsa.antidiagonal_slice();
    let reduced: Vec<f64> = u.iter().map(|&x| spec.collective_amplitude(x)).collect();
    let dot: f64 = slice.iter().zip(&reduced).map(|(a, b)| a.re * b).sum();
    let na: f64 = slice.iter().map(|a| a.norm_sqr()).sum();
    let nb: f64 = reduced.iter().map(|b| b * b).sum();
    let f = dot * dot / (na * nb);
    assert!(f > 1.0 - 1e-4, "{f}");

    // Same samples land on a codeword grid with matching pitch.
    let per_fsr = (1.0 / jsa.step).round() as usize;
    let grid = GridSpec::new(per_fsr, 4096).unwrap();
    let state = reduce_to_minus(&spec, grid).unwrap();
    let centre = grid.len() / 2;
    let probe: Vec<f64> = u
        .iter()
        .map(|&x| state.amplitudes()[(centre as i64 + (x * per_fsr as f64).round() as i64) as usize].re)
        .collect();
    let dot: f64 = slice.iter().zip(&probe).map(|(a, b)| a.re * b).sum();
    let np: f64 = probe.iter().map(|b| b * b).sum();
    assert!(dot * dot / (na * np) > 1.0 - 1e-4);
}

#[test]
fn joint_spectrum_is_exchange_symmetric() {
    for spec in [mono(2.0, 0.05, 0.0), JsaSpec::new(0.5, 3.0, Some(0.2), 0.0).unwrap()] {
        let jsa = build_jsa(&spec, 2048).unwrap();
        assert!(jsa.exchange_asymmetry() < 1e-10);
    }
}

#[test]
fn pumped_mass_respects_energy_conservation() {
    let w = 0.5;
    let spec = JsaSpec::new(w, 3.0, Some(0.2), 0.0).unwrap();
    let jsa = build_jsa(&spec, 1024).unwrap();
    assert!(jsa.mass_outside_band(0.0, 5.0 * w) < 1e-8);
    let free = JsaSpec::new(w, 3.0, None, 1.0).unwrap();
    let jsa = build_jsa(&free, 512).unwrap();
    assert!(jsa.mass_outside_band(1.0, 5.0 * w) < 1e-8);
}

#[test]
fn coarse_grids_are_refused() {
    let spec = mono(10.0, 0.05, 0.0);
    assert!(matches!(build_jsa(&spec, 1024), Err(Error::GridTooCoarse { .. })));
    assert!(build_jsa(&spec, 32).is_err());
}

#[test]
fn invalid_source_parameters() {
    assert!(JsaSpec::new(-0.1, 1.0, None, 0.0).is_err());
    assert!(JsaSpec::new(0.0, 0.0, None, 0.0).is_err());
    assert!(JsaSpec::new(0.0, 1.0, Some(-0.2), 0.0).is_err());
    assert!(JsaSpec::new(0.0, 1.0, None, 0.0).unwrap().effective_comb().is_err());
}
