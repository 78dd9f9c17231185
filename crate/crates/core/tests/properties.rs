//! Invariants checked over random parameters.

use num_complex::Complex64;
use proptest::prelude::*;
use talbot_gkp::*;

fn label() -> impl Strategy<Value = LogicalLabel> {
    prop::sample::select(LogicalLabel::ALL.to_vec())
}

fn comb() -> impl Strategy<Value = CombSpec> {
    (0.05f64..0.3, 1.0f64..4.0).prop_map(|(s, k)| CombSpec::new(s, k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn overlap_is_hermitian(spec in comb(), a in label(), b in label(), beta in -2.0f64..2.0) {
        let x = build_physical_state(a, &spec).unwrap();
        let y = apply_chirp(&build_physical_state(b, &spec).unwrap(), Chirp::talbot(beta).unwrap()).unwrap();
        let xy = overlap(&x, &y).unwrap();
        let yx = overlap(&y, &x).unwrap();
        prop_assert!((xy - yx.conj()).norm() < 1e-13);
        prop_assert!(xy.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn chirp_composes_and_preserves_norm(spec in comb(), a in label(), b1 in -2.0f64..2.0, b2 in -2.0f64..2.0) {
        let s = build_physical_state(a, &spec).unwrap();
        let two = apply_chirp(&apply_chirp(&s, Chirp::talbot(b1).unwrap()).unwrap(), Chirp::talbot(b2).unwrap()).unwrap();
        let one = apply_chirp(&s, Chirp::talbot(b1 + b2).unwrap()).unwrap();
        let diff = two.amplitudes().iter().zip(one.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-10);
        prop_assert!((one.norm() - 1.0).abs() < 1e-12);
        let t = to_time_domain(&one).unwrap();
        prop_assert!((t.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fidelity_is_phase_blind(spec in comb(), a in label(), b in label(), phase in 0.0f64..6.3) {
        let x = build_physical_state(a, &spec).unwrap();
        let y = build_physical_state(b, &spec).unwrap();
        let rotated = y.combine(Complex64::from_polar(1.0, phase), &y, Complex64::new(0.0, 0.0)).unwrap();
        let f = state_fidelity(&x, &y).unwrap();
        prop_assert!((f - state_fidelity(&x, &rotated).unwrap()).abs() < 1e-13);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn gate_fidelity_is_bounded(sigma in 0.05f64..0.3, kappa in 1.0f64..3.0, beta in 0.0f64..2.0, theta in -3.2f64..3.2) {
        let spec = CombSpec::new(sigma, kappa).unwrap();
        let w = implemented_gate(Chirp::talbot(beta).unwrap(), &spec).unwrap();
        for target in [GateMatrix::x_t(), GateMatrix::r_y(theta), GateMatrix::s()] {
            let f = gate_fidelity_from_matrix(&w, &target);
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
        }
    }

    #[test]
    fn relabelling_the_target_basis(sigma in 0.05f64..0.3, kappa in 1.0f64..3.0, beta in 0.0f64..2.0) {
        // Swapping logical labels conjugates both operators by X; fidelity is unchanged.
        let spec = CombSpec::new(sigma, kappa).unwrap();
        let w = implemented_gate(Chirp::talbot(beta).unwrap(), &spec).unwrap();
        let x = GateMatrix::x_t();
        let target = GateMatrix::r_y(0.7);
        let f = gate_fidelity_from_matrix(&w, &target);
        let g = gate_fidelity_from_matrix(&(x * w * x), &(x * target * x));
        prop_assert!((f - g).abs() < 1e-13);
    }

    #[test]
    fn knill_glancy_probability_is_bounded_and_ordered(
        sigma in 0.01f64..0.8, kappa in 0.3f64..30.0, f1 in 0.01f64..0.5, f2 in 0.01f64..0.5
    ) {
        let spec = CombSpec::with_parts(sigma, kappa, 1, GridSpec::covering(16, 4.0 + 10.0 * sigma).unwrap()).unwrap();
        let (lo, hi) = if f1 < f2 { (f1, f2) } else { (f2, f1) };
        let p_lo = p_no_error_exact(&ModularSpec::with_threshold(spec, lo).unwrap()).unwrap();
        let p_hi = p_no_error_exact(&ModularSpec::with_threshold(spec, hi).unwrap()).unwrap();
        prop_assert!((0.0..=1.0).contains(&p_lo) && (0.0..=1.0).contains(&p_hi));
        prop_assert!(p_lo <= p_hi + 1e-14);
    }

    #[test]
    fn cavity_free_equal_width_jsa_is_separable(w in 0.5f64..2.0, centre in -1.0f64..1.0) {
        let spec = JsaSpec::new(w, w, None, centre).unwrap();
        let jsa = build_jsa(&spec, 256).unwrap();
        let f = &jsa.amplitude;
        let n = jsa.omega_s.len();
        let scale = f.iter().map(|v| v.norm()).fold(0.0, f64::max).powi(2);
        for (a, c) in [(n / 2, n / 3), (n / 4, n / 2 + 3)] {
            for (b, d) in [(n / 2, n / 5), (n / 3, 2 * n / 3)] {
                let lhs = f[[a, b]] * f[[c, d]];
                let rhs = f[[a, d]] * f[[c, b]];
                prop_assert!((lhs - rhs).norm() < 1e-12 * scale);
            }
        }
    }
}

#[test]
fn dual_labels_share_signs_everywhere() {
    for label in LogicalLabel::ALL {
        if let Some(d) = label.dual() {
            for s in -6..=6 {
                for k in -4..=4 {
                    assert_eq!(ideal_sign(label, s, k), ideal_sign(d, s, k));
                }
            }
        }
    }
}
