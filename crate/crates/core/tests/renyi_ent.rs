use renyi_lab::entropy::AlphaParam;
use renyi_lab::linalg::{haar_random_pure, partial_trace};
use renyi_lab::renyi_ent::{
    entanglement_binary_entropy, f_alpha, f_alpha_d1, f_alpha_d2, h_alpha, l_alpha, m_alpha,
    renyi_entanglement_pure, renyi_entanglement_two_qubit, reoa_lower_bound, ConjecturePolicy,
    FAlphaEval,
};
use renyi_lab::states::{w_state, werner};

fn a(alpha: f64) -> AlphaParam {
    AlphaParam::new(alpha).unwrap()
}

#[test]
fn f2_closed_form() {
    // f_2(x) = -log2(1 - x^2/2).
    let a2 = a(2.0);
    for &x in &[0.0, 0.1, 0.3, 1.0 / 2.0f64.sqrt(), 0.9, 1.0] {
        let expect = -(1.0 - x * x / 2.0).log2();
        assert!((f_alpha(x, &a2).unwrap() - expect).abs() < 1e-14, "x = {x}");
    }
    assert!((f_alpha(1.0 / 2.0f64.sqrt(), &a2).unwrap() - (4.0f64 / 3.0).log2()).abs() < 1e-15);
}

#[test]
fn endpoints_for_many_alphas() {
    for &alpha in &[0.3, 0.83, 1.0, 1.2, 2.0, 5.0, 20.0] {
        let ap = a(alpha);
        assert_eq!(f_alpha(0.0, &ap).unwrap(), 0.0);
        assert!(
            (f_alpha(1.0, &ap).unwrap() - 1.0).abs() < 1e-12,
            "alpha = {alpha}"
        );
    }
}

#[test]
fn alpha_one_is_binary_entropy_curve() {
    let a1 = a(1.0);
    for &x in &[0.1f64, 0.5, 0.9] {
        let t = (1.0 - x * x).sqrt();
        let p = (1.0 - t) / 2.0;
        let expect = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((f_alpha(x, &a1).unwrap() - expect).abs() < 1e-12);
        assert!((entanglement_binary_entropy(x).unwrap() - expect).abs() < 1e-12);
    }
}

#[test]
fn alpha_to_one_continuity() {
    for &x in &[0.05, 0.4, 0.8, 0.999] {
        let base = f_alpha(x, &a(1.0)).unwrap();
        for &alpha in &[1.0 - 1e-5, 1.0 + 1e-5, 1.0 - 1e-3, 1.0 + 1e-3] {
            let v = f_alpha(x, &a(alpha)).unwrap();
            assert!(
                (v - base).abs() < 2e-3,
                "x = {x}, alpha = {alpha}: {v} vs {base}"
            );
        }
    }
}

#[test]
fn f_is_strictly_increasing() {
    for &alpha in &[0.83, 1.0, 1.5, 2.0, 7.0] {
        let ap = a(alpha);
        let mut prev = 0.0;
        for k in 1..=200 {
            let x = k as f64 / 200.0;
            let v = f_alpha(x, &ap).unwrap();
            assert!(v > prev, "alpha = {alpha}, x = {x}");
            prev = v;
        }
    }
}

#[test]
fn d1_matches_finite_differences() {
    let h = 1e-6;
    for &alpha in &[0.9, 1.0, 1.3, 2.0, 4.0] {
        let ap = a(alpha);
        for &x in &[0.1, 0.35, 0.6, 0.85] {
            let fd = (f_alpha(x + h, &ap).unwrap() - f_alpha(x - h, &ap).unwrap()) / (2.0 * h);
            let an = f_alpha_d1(x, &ap).unwrap();
            assert!(
                (fd - an).abs() < 1e-7,
                "alpha = {alpha}, x = {x}: {an} vs {fd}"
            );
        }
    }
}

#[test]
fn d2_matches_finite_differences() {
    let h = 1e-4;
    for &alpha in &[0.83, 0.95, 1.2, 2.0, 3.5] {
        let ap = a(alpha);
        for &x in &[0.1, 0.35, 0.6, 0.85] {
            let fd = (f_alpha(x + h, &ap).unwrap() - 2.0 * f_alpha(x, &ap).unwrap()
                + f_alpha(x - h, &ap).unwrap())
                / (h * h);
            let an = f_alpha_d2(x, &ap).unwrap();
            assert!(
                (fd - an).abs() < 1e-5 * an.abs().max(1.0),
                "alpha = {alpha}, x = {x}"
            );
        }
    }
}

#[test]
fn d2_frozen_value_at_alpha_two() {
    // f_2''(x) = (1/ln2)(2 + x^2(2 - x^2)) / (1 - x^2/2)^2 / 4 evaluated
    // directly: at x = 0.5, (1.125 / 0.765625) / ln 2.
    let an = f_alpha_d2(0.5, &a(2.0)).unwrap();
    let expect = (1.125 / 0.765625) / 2.0f64.ln();
    assert!((an - expect).abs() < 1e-12);
}

#[test]
fn d2_positive_for_convex_alphas() {
    for &alpha in &[1.0, 1.5, 2.0, 5.0] {
        let ap = a(alpha);
        for k in 1..100 {
            let x = k as f64 / 100.0;
            assert!(
                f_alpha_d2(x, &ap).unwrap() > -1e-12,
                "alpha = {alpha}, x = {x}"
            );
        }
    }
}

#[test]
fn d2_domain_errors() {
    assert!(f_alpha_d2(0.0, &a(2.0)).is_err());
    assert!(f_alpha_d2(1.0, &a(2.0)).is_err());
    assert!(f_alpha(1.5, &a(2.0)).is_err());
    assert!(f_alpha(-0.1, &a(2.0)).is_err());
}

#[test]
fn l_alpha_endpoint_and_domain() {
    for &alpha in &[1.5, 2.0, 3.0] {
        assert!((l_alpha(1.0, &a(alpha)).unwrap() - (alpha - 1.0)).abs() < 1e-9);
    }
    assert!(l_alpha(0.5, &a(0.9)).is_err());
    assert!(l_alpha(0.0, &a(2.0)).is_err());
}

#[test]
fn h2_frozen_value() {
    let x = 1.0 / 2.0f64.sqrt();
    let expect = 1.0 - 2.0 * (4.0f64 / 3.0).log2();
    assert!((h_alpha(x, x, &a(2.0)).unwrap() - expect).abs() < 1e-14);
}

#[test]
fn h_vanishes_on_axes_and_rejects_outside() {
    let a2 = a(2.0);
    assert_eq!(h_alpha(0.0, 0.5, &a2).unwrap(), 0.0);
    assert_eq!(h_alpha(0.5, 0.0, &a2).unwrap(), 0.0);
    assert!(h_alpha(0.8, 0.8, &a2).is_err());
    assert!(h_alpha(-0.1, 0.5, &a2).is_err());
}

#[test]
fn h_is_symmetric() {
    for &alpha in &[1.0, 1.3, 2.0, 4.0] {
        let ap = a(alpha);
        for &(x, y) in &[(0.1, 0.5), (0.3, 0.6), (0.01, 0.02)] {
            let hxy = h_alpha(x, y, &ap).unwrap();
            let hyx = h_alpha(y, x, &ap).unwrap();
            assert!((hxy - hyx).abs() < 1e-16);
        }
    }
}

#[test]
fn m_alpha_matches_h_on_boundary_arc() {
    for &alpha in &[1.2, 2.0, 3.0] {
        let ap = a(alpha);
        for &x in &[0.1f64, 0.4, 0.7, 0.95] {
            let y = (1.0 - x * x).sqrt();
            let hb = h_alpha(x, y, &ap).unwrap();
            let mb = m_alpha(x, &ap).unwrap();
            assert!(
                (hb - mb).abs() < 1e-10,
                "alpha = {alpha}, x = {x}: {hb} vs {mb}"
            );
        }
    }
    assert!(m_alpha(0.5, &a(0.9)).is_err());
}

#[test]
fn pure_entanglement_matches_bridge_function() {
    // E_alpha(psi) = f_alpha(C(psi)) for two-qubit pure states.
    for seed in 0..20 {
        let psi = haar_random_pure(2, seed);
        for &alpha in &[1.0, 1.5, 2.0, 3.0] {
            let ap = a(alpha);
            let direct = renyi_entanglement_pure(&psi, &[0], &ap).unwrap();
            let c = renyi_lab::concurrence::pure_concurrence(&psi, &[0]).unwrap();
            let via_f = f_alpha(c, &ap).unwrap();
            assert!((direct - via_f).abs() < 1e-10, "seed {seed}, alpha {alpha}");
        }
    }
}

#[test]
fn w_state_one_to_rest_renyi2() {
    // Spectrum {2/3, 1/3} -> E_2 = log2(9/5).
    let w = w_state(3).unwrap();
    let e = renyi_entanglement_pure(&w, &[0], &a(2.0)).unwrap();
    assert!((e - (9.0f64 / 5.0).log2()).abs() < 1e-12);
}

#[test]
fn two_qubit_mixed_formula_and_policy() {
    let rho = werner(0.5).unwrap();
    let policy = ConjecturePolicy::default();
    let m = renyi_entanglement_two_qubit(&rho, &a(2.0), &policy).unwrap();
    assert!((m.value - f_alpha(0.25, &a(2.0)).unwrap()).abs() < 1e-12);
    assert!(!m.conjectural);

    let m = renyi_entanglement_two_qubit(&rho, &a(0.9), &policy).unwrap();
    assert!(m.conjectural);

    // Below the floor: strict policy rejects, relaxed policy flags.
    assert!(renyi_entanglement_two_qubit(&rho, &a(0.5), &policy).is_err());
    let relaxed = ConjecturePolicy {
        strict: false,
        ..policy
    };
    let m = renyi_entanglement_two_qubit(&rho, &a(0.5), &relaxed).unwrap();
    assert!(m.conjectural);
}

#[test]
fn reoa_bound_dominates_entanglement() {
    // f_alpha(C^a) >= f_alpha(C) since C^a >= C and f is increasing.
    let policy = ConjecturePolicy::default();
    for seed in 0..10 {
        let psi = haar_random_pure(3, 900 + seed);
        let pair = partial_trace(&psi.to_density(), &[0, 1]).unwrap();
        for &alpha in &[1.0, 2.0] {
            let e = renyi_entanglement_two_qubit(&pair, &a(alpha), &policy).unwrap();
            let b = reoa_lower_bound(&pair, &a(alpha), &policy).unwrap();
            assert!(b.value >= e.value - 1e-12);
        }
    }
}

#[test]
fn eval_bundle_is_consistent() {
    let e = FAlphaEval::new(0.4, &a(2.0)).unwrap();
    assert_eq!(e.value, f_alpha(0.4, &a(2.0)).unwrap());
    assert_eq!(e.d1, f_alpha_d1(0.4, &a(2.0)).unwrap());
    assert_eq!(e.d2, f_alpha_d2(0.4, &a(2.0)).unwrap());
}
