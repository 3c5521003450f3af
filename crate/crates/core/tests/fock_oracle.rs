mod common;

use gaussfid_core::fock::{
    channel_on_qubit_basis, channel_on_qubit_basis_operators, fidelity_bruteforce, matrix_element_quadrature,
    squeeze, squeezed_coherent_amplitude, thermal_state, FockOperator, DEFAULT_DIM, DEFAULT_STEP,
};
use gaussfid_core::fock::{moments, output_state};
use gaussfid_core::{
    average_qubit_fidelity, FidelityInputs, GainMatrix, GaussianChannel, MatrixElementSet, NoiseEllipse,
    SqueezedThermalParams,
};
use num_complex::Complex64;

fn analytic(ch: &GaussianChannel) -> f64 {
    average_qubit_fidelity(&FidelityInputs::from_channel(ch).unwrap()).unwrap()
}

#[test]
fn identity_and_pi_rotation() {
    let f = fidelity_bruteforce(&GaussianChannel::identity(), DEFAULT_DIM, DEFAULT_STEP).unwrap();
    assert!((f - 1.0).abs() < 1e-9);
    let f = fidelity_bruteforce(&common::pi_rotation(), DEFAULT_DIM, DEFAULT_STEP).unwrap();
    assert!((f - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn symmetric_attenuator_value() {
    let ch = common::channel([0.9, 0.0, 0.0, 0.9], 0.525, 0.525, 0.0);
    let f = fidelity_bruteforce(&ch, DEFAULT_DIM, DEFAULT_STEP).unwrap();
    assert!((f - 0.901_205_728_297_6).abs() < 1e-8, "{f}");
}

#[test]
fn analytic_matches_oracle_on_random_channels() {
    for ch in common::random_channels(11, 20) {
        let a = analytic(&ch);
        let b = fidelity_bruteforce(&ch, DEFAULT_DIM, DEFAULT_STEP).unwrap();
        assert!((a - b).abs() < 1e-6, "analytic {a} oracle {b} for {ch:?}");
    }
}

#[test]
fn truncation_convergence() {
    for ch in common::random_channels(12, 6) {
        let a = fidelity_bruteforce(&ch, DEFAULT_DIM, DEFAULT_STEP).unwrap();
        let b = fidelity_bruteforce(&ch, DEFAULT_DIM + 10, DEFAULT_STEP).unwrap();
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
    }
}

#[test]
fn output_states_are_density_matrices() {
    for ch in common::random_channels(13, 6) {
        for alpha in [Complex64::new(0.0, 0.0), Complex64::new(0.3, -0.2)] {
            let rho = output_state(&ch, alpha, DEFAULT_DIM).unwrap();
            assert!(rho.hermiticity_defect() < 1e-12);
            assert!(rho.is_positive_semidefinite(1e-10));
            assert!((rho.trace().re - 1.0).abs() < 1e-6);
        }
    }
}

#[test]
fn output_state_moments_follow_the_channel() {
    let ch = common::channel([0.7, 0.2, -0.1, 1.1], 1.3, 0.8, 0.6);
    let alpha = Complex64::new(0.4, 0.25);
    let rho = output_state(&ch, alpha, 60).unwrap();
    let (mean, cov) = moments(&rho).unwrap();
    let expected = ch.output_mean(alpha);
    assert!((mean - expected).norm() < 1e-8);
    assert!(cov.max_abs_diff(&ch.output_covariance()) < 1e-7);
}

#[test]
fn vacuum_block_is_trace_preserving() {
    for ch in common::random_channels(14, 6) {
        let map = channel_on_qubit_basis(&ch, DEFAULT_DIM, DEFAULT_STEP).unwrap();
        assert!((map.e00.trace().re - 1.0).abs() < 1e-6);
        // E(|1⟩⟨1|) is a state and the coherences are traceless
        assert!((map.e11.trace().re - 1.0).abs() < 1e-6);
        assert!(map.e01.trace().norm() < 1e-6);
        assert!(map.e11.hermiticity_defect() < 1e-6);
    }
}

#[test]
fn difference_and_operator_routes_agree() {
    for ch in common::random_channels(15, 8) {
        let fd = channel_on_qubit_basis(&ch, DEFAULT_DIM, DEFAULT_STEP).unwrap();
        let op = channel_on_qubit_basis_operators(&ch, DEFAULT_DIM).unwrap();
        for n in 0..2 {
            for m in 0..2 {
                let gap = fd.block(n, m).max_abs_diff_block(op.block(n, m), DEFAULT_DIM - 8);
                assert!(gap < 1e-6, "block {n}{m}: {gap}");
            }
        }
        assert!((fd.average_fidelity() - op.average_fidelity()).abs() < 1e-8);
    }
}

#[test]
fn superposition_output_is_a_state() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = [Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
    for ch in common::random_channels(16, 4) {
        let fd = channel_on_qubit_basis(&ch, DEFAULT_DIM, DEFAULT_STEP).unwrap();
        let op = channel_on_qubit_basis_operators(&ch, DEFAULT_DIM).unwrap();
        let a = fd.apply(psi);
        let b = op.apply(psi);
        assert!(a.max_abs_diff_block(&b, DEFAULT_DIM - 8) < 1e-6);
        assert!((a.trace().re - 1.0).abs() < 1e-6);
        let kept = FockOperator::from_fn(20, |i, j| b[(i, j)]);
        assert!(kept.is_positive_semidefinite(1e-10));
    }
}

#[test]
fn amplitude_matches_truncated_squeeze() {
    let (r, gamma) = (0.2, Complex64::new(0.3, 0.0));
    let u = squeeze(60, r).unwrap();
    let coherent = gaussfid_core::fock::coherent_vector(gamma, 60);
    let v = u.apply(&coherent);
    for (n, vn) in v.iter().enumerate().take(5) {
        let a = squeezed_coherent_amplitude(n, r, gamma);
        assert!((a - vn).norm() < 1e-12, "n = {n}");
    }
}

fn sts_fock(params: &SqueezedThermalParams, dim: usize) -> FockOperator {
    thermal_state(params.nbar0, dim).unwrap().conjugate_by(&squeeze(dim, params.r).unwrap())
}

#[test]
fn matrix_elements_three_ways() {
    for (s1, s2) in [(0.5, 0.5), (1.0, 0.5), (0.7, 2.2), (3.0, 1.1), (1.7, 1.7)] {
        let params = SqueezedThermalParams::from_variances(s1, s2).unwrap();
        let set = MatrixElementSet::from_variances(params.variances().0, params.variances().1).unwrap();
        let rho = sts_fock(&params, 80);
        for n in 0..4 {
            for m in 0..4 {
                let quad = matrix_element_quadrature(n, m, &params, 64).unwrap();
                assert!((quad - rho[(n, m)].re).abs() < 1e-9, "({s1},{s2}) <{n}|ρ|{m}>");
                if let Some(closed) = set.get(n, m) {
                    assert!((closed - quad).abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn stencil_discrepancy_scales_quadratically() {
    let ch = common::channel([1.5, 0.3, -0.2, 1.2], 3.0, 2.0, 0.3);
    let coarse = channel_on_qubit_basis(&ch, DEFAULT_DIM, 1e-2).unwrap().richardson_discrepancy;
    let fine = channel_on_qubit_basis(&ch, DEFAULT_DIM, 5e-3).unwrap().richardson_discrepancy;
    assert!(coarse > 0.0 && coarse <= 1e-5);
    assert!((coarse / fine - 4.0).abs() < 0.2, "ratio {}", coarse / fine);
}

#[test]
fn ellipse_rotation_enters_the_oracle() {
    let gain = GainMatrix::diagonal(0.8, 0.8);
    let a = GaussianChannel::from_output_ellipse(gain, &NoiseEllipse::new(1.5, 0.6, 0.0).unwrap());
    let b = GaussianChannel::from_output_ellipse(gain, &NoiseEllipse::new(1.5, 0.6, 1.0).unwrap());
    let fa = fidelity_bruteforce(&a, DEFAULT_DIM, DEFAULT_STEP).unwrap();
    let fb = fidelity_bruteforce(&b, DEFAULT_DIM, DEFAULT_STEP).unwrap();
    assert!((fa - analytic(&a)).abs() < 1e-6);
    assert!((fb - analytic(&b)).abs() < 1e-6);
}
