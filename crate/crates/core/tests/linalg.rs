use num_complex::Complex64;
use renyi_lab::linalg::{
    haar_random_pure, herm_eig, kron, partial_trace, psd_sqrt, sigma_x, sigma_y, sigma_z,
    ComplexMatrix, DensityMatrix, PureState,
};
use renyi_lab::states::{bell_phi_plus, ghz, w_state};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn kron_of_paulis() {
    let syy = kron(&sigma_y(), &sigma_y());
    assert_eq!(syy.rows(), 4);
    assert_eq!(syy[(0, 3)], c(-1.0, 0.0));
    assert_eq!(syy[(3, 0)], c(-1.0, 0.0));
    assert_eq!(syy[(1, 2)], c(1.0, 0.0));
    assert_eq!(syy[(2, 1)], c(1.0, 0.0));
    assert_eq!(syy[(0, 0)], c(0.0, 0.0));

    let sxz = kron(&sigma_x(), &sigma_z());
    assert_eq!(sxz[(0, 2)], c(1.0, 0.0));
    assert_eq!(sxz[(1, 3)], c(-1.0, 0.0));
}

#[test]
fn kron_mixed_product() {
    // (A (x) B)(C (x) D) = AC (x) BD for random-ish small matrices.
    let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
    let b = ComplexMatrix::from_entries(
        2,
        2,
        vec![c(0.0, 1.0), c(1.0, 0.0), c(2.0, -1.0), c(0.5, 0.5)],
    )
    .unwrap();
    let cc = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
    let d = ComplexMatrix::from_real(2, 2, &[2.0, 0.0, 0.0, 3.0]).unwrap();
    let lhs = kron(&a, &b).mul(&kron(&cc, &d));
    let rhs = kron(&a.mul(&cc), &b.mul(&d));
    assert!(lhs.sub(&rhs).max_abs() < 1e-14);
}

#[test]
fn herm_eig_2x2_analytic() {
    // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
    let m = ComplexMatrix::from_entries(
        2,
        2,
        vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
    )
    .unwrap();
    let (evals, vecs) = herm_eig(&m).unwrap();
    assert!((evals[0] - 3.0).abs() < 1e-13);
    assert!((evals[1] - 1.0).abs() < 1e-13);
    // Reconstruction.
    let mut rec = ComplexMatrix::zeros(2, 2);
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                rec[(i, j)] += vecs[(i, k)] * vecs[(j, k)].conj() * evals[k];
            }
        }
    }
    assert!(rec.sub(&m).max_abs() < 1e-13);
}

#[test]
fn herm_eig_3x3_known_spectrum() {
    // Real symmetric [[2,1,0],[1,2,1],[0,1,2]]: eigenvalues 2 ± sqrt(2), 2.
    let m = ComplexMatrix::from_real(3, 3, &[2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0]).unwrap();
    let (evals, _) = herm_eig(&m).unwrap();
    let s = 2.0f64.sqrt();
    assert!((evals[0] - (2.0 + s)).abs() < 1e-13);
    assert!((evals[1] - 2.0).abs() < 1e-13);
    assert!((evals[2] - (2.0 - s)).abs() < 1e-13);
}

#[test]
fn herm_eig_rejects_non_hermitian() {
    let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
    assert!(herm_eig(&m).is_err());
}

#[test]
fn eigenvectors_are_orthonormal() {
    let psi = haar_random_pure(3, 11);
    let rho = psi.to_density();
    let (_, v) = herm_eig(rho.matrix()).unwrap();
    let gram = v.adjoint().mul(&v);
    assert!(gram.sub(&ComplexMatrix::identity(8)).max_abs() < 1e-12);
}

#[test]
fn psd_sqrt_squares_back() {
    let psi = haar_random_pure(2, 5);
    let rho = psi.to_density();
    let s = psd_sqrt(rho.matrix()).unwrap();
    assert!(s.mul(&s).sub(rho.matrix()).max_abs() < 1e-12);
    assert!(s.is_hermitian(1e-12));
}

#[test]
fn psd_sqrt_rejects_indefinite() {
    let m = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
    assert!(psd_sqrt(&m).is_err());
}

#[test]
fn density_matrix_validation() {
    // Non-unit trace.
    let m = ComplexMatrix::identity(2);
    assert!(DensityMatrix::new(vec![2], m).is_err());
    // Valid maximally mixed qubit.
    let m = ComplexMatrix::identity(2).scale(0.5);
    let rho = DensityMatrix::new(vec![2], m).unwrap();
    assert!((rho.purity() - 0.5).abs() < 1e-15);
    let spec = rho.spectrum();
    assert!((spec[0] - 0.5).abs() < 1e-14 && (spec[1] - 0.5).abs() < 1e-14);
}

#[test]
fn pure_state_validation() {
    assert!(PureState::new(1, vec![c(1.0, 0.0)]).is_err());
    assert!(PureState::new(1, vec![c(0.8, 0.0), c(0.2, 0.0)]).is_err());
    let psi = PureState::normalized(1, vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
    assert!((psi.amplitudes()[0].re - 0.6).abs() < 1e-15);
}

#[test]
fn partial_trace_bell_is_maximally_mixed() {
    let rho = bell_phi_plus().to_density();
    for q in 0..2 {
        let r = partial_trace(&rho, &[q]).unwrap();
        assert!(
            r.matrix()
                .sub(&ComplexMatrix::identity(2).scale(0.5))
                .max_abs()
                < 1e-14
        );
    }
}

#[test]
fn partial_trace_w_state_single_qubit() {
    // W reduced one-qubit state: diag(2/3, 1/3).
    let rho = w_state(3).unwrap().to_density();
    let r = partial_trace(&rho, &[0]).unwrap();
    assert!((r.matrix()[(0, 0)].re - 2.0 / 3.0).abs() < 1e-14);
    assert!((r.matrix()[(1, 1)].re - 1.0 / 3.0).abs() < 1e-14);
    assert!(r.matrix()[(0, 1)].norm() < 1e-14);
}

#[test]
fn partial_trace_preserves_trace_and_consistency() {
    let psi = haar_random_pure(3, 42);
    let rho = psi.to_density();
    let r01 = partial_trace(&rho, &[0, 1]).unwrap();
    assert!((r01.matrix().trace().re - 1.0).abs() < 1e-12);
    // Tracing in two steps agrees with one step.
    let r0_direct = partial_trace(&rho, &[0]).unwrap();
    let r0_staged = partial_trace(&r01, &[0]).unwrap();
    assert!(r0_direct.matrix().sub(r0_staged.matrix()).max_abs() < 1e-12);
}

#[test]
fn partial_trace_ghz_pair_is_classical_mixture() {
    let rho = ghz(3).unwrap().to_density();
    let pair = partial_trace(&rho, &[0, 1]).unwrap();
    // (|00><00| + |11><11|) / 2 in the pair space.
    assert!((pair.matrix()[(0, 0)].re - 0.5).abs() < 1e-14);
    assert!((pair.matrix()[(3, 3)].re - 0.5).abs() < 1e-14);
    assert!(pair.matrix()[(0, 3)].norm() < 1e-14);
}

#[test]
fn partial_trace_argument_errors() {
    let rho = ghz(3).unwrap().to_density();
    assert!(partial_trace(&rho, &[]).is_err());
    assert!(partial_trace(&rho, &[0, 0]).is_err());
    assert!(partial_trace(&rho, &[3]).is_err());
}

#[test]
fn haar_sampling_is_deterministic_and_unbiased() {
    let a = haar_random_pure(3, 7);
    let b = haar_random_pure(3, 7);
    assert_eq!(a.amplitudes(), b.amplitudes());
    let c2 = haar_random_pure(3, 8);
    assert_ne!(a.amplitudes(), c2.amplitudes());

    // <sigma_z> on qubit 0 averages to 0 over many samples.
    let mut mean = 0.0;
    let n = 2000;
    for seed in 0..n {
        let psi = haar_random_pure(2, seed);
        let r = partial_trace(&psi.to_density(), &[0]).unwrap();
        mean += r.matrix()[(0, 0)].re - r.matrix()[(1, 1)].re;
    }
    mean /= n as f64;
    // Standard error is about 1/sqrt(3n) ~ 0.013; 5 sigma.
    assert!(mean.abs() < 0.065, "biased <sigma_z>: {mean}");
}
