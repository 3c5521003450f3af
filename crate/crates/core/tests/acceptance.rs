//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::time::Instant;

use gaussfid_core::fidelity::rotated_fidelity;
use gaussfid_core::fock::{
    channel_on_qubit_basis, fidelity_bruteforce, matrix_element_quadrature, QubitState, DEFAULT_DIM, DEFAULT_STEP,
};
use gaussfid_core::scenarios::{
    amplifier_benchmark_threshold, amplifier_fidelity, heat_bath_fidelity, linspace, symmetric_benchmark_excess_variance,
    symmetric_contour_grid, time_to_benchmark, SYMMETRIC_GRID_POINTS, SYMMETRIC_GRID_RANGE,
};
use gaussfid_core::tomography::{reconstruct_channel, simulate_probe_records};
use gaussfid_core::{
    average_qubit_fidelity, check_physical, fidelity_asymmetric_diagonal, fidelity_symmetric,
    noiseless_amplifier_fidelity, optimal_phase_rotation, CovarianceMatrix, FidelityInputs, GainMatrix,
    GaussianChannel, MatrixElementSet, Quadratures, SqueezedThermalParams,
};
use num_complex::Complex64;
use rand::Rng;

struct Check {
    label: String,
    ok: bool,
}

fn check(label: impl Into<String>, ok: bool) -> Check {
    Check { label: label.into(), ok }
}

fn verdict(id: u32, title: &str, checks: &[Check]) {
    for c in checks {
        println!("    [{}] {}", if c.ok { "ok" } else { "FAIL" }, c.label);
    }
    let pass = checks.iter().all(|c| c.ok);
    println!("criterion {id} {}: {title}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed");
}

fn analytic(ch: &GaussianChannel) -> f64 {
    average_qubit_fidelity(&FidelityInputs::from_channel(ch).unwrap()).unwrap()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let channels = common::random_channels(2024, 200);
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    for ch in &channels {
        match fidelity_bruteforce(ch, DEFAULT_DIM, DEFAULT_STEP) {
            Ok(f) => worst = worst.max((f - analytic(ch)).abs()),
            Err(e) => {
                println!("    oracle error: {e}");
                errors += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(1, "closed form equals the Fock oracle on 200 random channels", &[
        check(format!("max |analytic - oracle| = {worst:.2e} <= 1e-6 (dim 40, h = 1e-3)"), worst <= 1e-6 && errors == 0),
        check(format!("oracle failures: {errors}"), errors == 0),
        check(format!("runtime {elapsed:.2} s <= 60 s"), elapsed <= 60.0),
    ]);
}

#[test]
fn criterion_2_pi_rotation() {
    let ch = common::pi_rotation();
    let inp = FidelityInputs::from_channel(&ch).unwrap();
    let raw = average_qubit_fidelity(&inp).unwrap();
    let oracle = fidelity_bruteforce(&ch, DEFAULT_DIM, DEFAULT_STEP).unwrap();
    let opt = optimal_phase_rotation(&inp).unwrap();
    let at_opt = rotated_fidelity(&inp, opt.theta_prime).unwrap();
    verdict(2, "pi rotation: raw 1/3, phase-optimized 1", &[
        check(format!("analytic raw Fq = {raw:.12}"), (raw - 1.0 / 3.0).abs() <= 1e-9),
        check(format!("oracle raw Fq = {oracle:.12}"), (oracle - 1.0 / 3.0).abs() <= 1e-6),
        check(format!("optimized Fq = {:.12} at theta' = {:.6}", opt.fq_max, opt.theta_prime), (opt.fq_max - 1.0).abs() <= 1e-9),
        check(format!("Fq at theta' re-evaluated = {at_opt:.12}"), (at_opt - 1.0).abs() <= 1e-9),
    ]);
}

#[test]
fn criterion_3_matrix_elements() {
    let grid = linspace(0.5, 3.0, 5);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for &s1 in &grid {
        for &s2 in &grid {
            let params = SqueezedThermalParams::from_variances(s1, s2).unwrap();
            let set = MatrixElementSet::from_variances(s1, s2).unwrap();
            for (n, m) in [(0, 0), (1, 1), (0, 2), (2, 2), (1, 3)] {
                match matrix_element_quadrature(n, m, &params, 64) {
                    Ok(q) => worst = worst.max((q - set.get(n, m).unwrap()).abs()),
                    Err(_) => failures += 1,
                }
            }
        }
    }
    verdict(3, "closed-form squeezed-thermal matrix elements equal quadrature", &[
        check(format!("max deviation {worst:.2e} <= 1e-8 over a 5x5 grid"), worst <= 1e-8),
        check(format!("quadrature failures: {failures}"), failures == 0),
    ]);
}

#[test]
fn criterion_4_special_cases() {
    let mut worst_sym: f64 = 0.0;
    for g in linspace(0.0, 1.2, 25) {
        for s in linspace(0.5, 3.0, 26) {
            if let Ok(f) = fidelity_symmetric(g, s) {
                let ch = common::channel([g, 0.0, 0.0, g], s, s, 0.0);
                worst_sym = worst_sym.max((f - analytic(&ch)).abs());
            }
        }
    }
    let mut worst_diag: f64 = 0.0;
    let mut count = 0;
    for gx in linspace(-1.5, 1.5, 13) {
        for gp in linspace(-1.5, 1.5, 13) {
            for sx in linspace(0.5, 3.0, 6) {
                for sp in linspace(0.5, 3.0, 6) {
                    let ch = GaussianChannel::new(
                        GainMatrix::diagonal(gx, gp),
                        Quadratures::ZERO,
                        CovarianceMatrix::new(sx - 0.5 * gx * gx, sp - 0.5 * gp * gp, 0.0),
                    );
                    if !check_physical(&ch).physical {
                        continue;
                    }
                    let f = fidelity_asymmetric_diagonal(gx, gp, sx, sp).unwrap();
                    worst_diag = worst_diag.max((f - analytic(&ch)).abs());
                    count += 1;
                }
            }
        }
    }
    verdict(4, "symmetric and diagonal formulas reduce from the general one", &[
        check(format!("symmetric: max deviation {worst_sym:.2e} <= 1e-12"), worst_sym <= 1e-12),
        check(format!("diagonal: max deviation {worst_diag:.2e} <= 1e-12 ({count} physical points)"), worst_diag <= 1e-12),
    ]);
}

#[test]
fn criterion_5_heat_bath() {
    let mut checks = vec![];
    let f0 = heat_bath_fidelity(0.0, 0.0).unwrap();
    checks.push(check(format!("Fq(0) = {f0}"), f0 == 1.0));
    let late = heat_bath_fidelity(100.0, 0.0).unwrap();
    checks.push(check(format!("N=0 asymptote {late:.12} = 1/2 +- 1e-9"), (late - 0.5).abs() <= 1e-9));

    let t = 1e-3;
    for nbar in [0.0, 0.3, 1.0, 3.0, 10.0] {
        let f = heat_bath_fidelity(t, nbar).unwrap();
        let stated = 1.0 - (2.0 + 5.0 * nbar) * t / 3.0;
        let rel = (f - stated).abs() / stated;
        let slope = (1.0 - f) / t;
        checks.push(check(
            format!(
                "N={nbar}: Fq(1e-3) = {f:.9} vs 1-(2+5N)t/3 = {stated:.9}, rel {rel:.2e} <= 1e-5 \
                 (observed slope {slope:.5}, (1+5N)/3 = {:.5})",
                (1.0 + 5.0 * nbar) / 3.0
            ),
            rel <= 1e-5,
        ));
    }

    let bench = time_to_benchmark(0.0).unwrap();
    checks.push(check(
        format!(
            "N=0 benchmark time {:.6} coherence times (gamma T = {:.6}) = 0.8814 +- 1e-3",
            bench.coherence_fraction, bench.gamma_t
        ),
        (bench.coherence_fraction - 0.8814).abs() <= 1e-3,
    ));
    let times: Vec<f64> = [0.0, 0.3, 1.0, 3.0, 10.0].iter().map(|&n| time_to_benchmark(n).unwrap().gamma_t).collect();
    checks.push(check(format!("benchmark times decrease with N: {times:.4?}"), times.windows(2).all(|w| w[1] < w[0])));
    verdict(5, "heat-bath decay", &checks);
}

#[test]
fn criterion_6_amplifier() {
    let mut worst: f64 = 0.0;
    for r in linspace(0.0, 1.0, 101) {
        let via_diag = amplifier_fidelity(1.0, 0.5, r.exp()).unwrap();
        worst = worst.max((via_diag - noiseless_amplifier_fidelity(r)).abs());
    }
    let eps = amplifier_benchmark_threshold().unwrap();
    verdict(6, "noiseless amplifier", &[
        check(format!("diagonal formula vs closed form: max deviation {worst:.2e} <= 1e-12"), worst <= 1e-12),
        check(format!("benchmark crossing eps* = {eps:.5} = 1.96 +- 0.01"), (eps - 1.96).abs() <= 0.01),
    ]);
}

#[test]
fn criterion_7_symmetric_grid() {
    let (lo, hi) = SYMMETRIC_GRID_RANGE;
    let axis = linspace(lo, hi, SYMMETRIC_GRID_POINTS);
    let start = Instant::now();
    let grid = symmetric_contour_grid(&axis, &axis).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let cell = (hi - lo) / (SYMMETRIC_GRID_POINTS - 1) as f64;
    let crossing = symmetric_benchmark_excess_variance(1.0).unwrap();
    let on_edge: Vec<f64> = grid
        .contour
        .iter()
        .flat_map(|s| [s.start, s.end])
        .filter(|p| p.0 == lo)
        .map(|p| p.1)
        .collect();
    let gap = on_edge.iter().map(|y| (y - crossing).abs()).fold(f64::INFINITY, f64::min);
    verdict(7, "symmetric contour grid", &[
        check(format!("201x201 grid in {elapsed:.3} s < 5 s"), elapsed < 5.0),
        check(
            format!("contour meets g = 1 at {on_edge:.6?}; bisection gives {crossing:.6}; gap {gap:.2e} <= cell {cell}"),
            gap <= cell,
        ),
    ]);
}

#[test]
fn criterion_8_tomography() {
    let probes = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.6, -0.8),
    ];
    let mut rng = common::rng(808);
    let mut worst_param: f64 = 0.0;
    let mut worst_fq: f64 = 0.0;
    let mut failures = 0;
    for ch in common::random_channels(8080, 100) {
        let ch = GaussianChannel { noise_mean: Quadratures::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), ..ch };
        let Ok(rec) = reconstruct_channel(&simulate_probe_records(&ch, &probes)) else {
            failures += 1;
            continue;
        };
        let r = rec.channel;
        worst_param = worst_param
            .max(r.gain.max_abs_diff(&ch.gain))
            .max((r.noise_mean - ch.noise_mean).norm())
            .max(r.noise_cov.max_abs_diff(&ch.noise_cov));
        let direct = analytic(&GaussianChannel { noise_mean: Quadratures::ZERO, ..ch });
        worst_fq = worst_fq.max((analytic(&rec.centered.channel) - direct).abs());
    }
    verdict(8, "tomography round trip", &[
        check(format!("max parameter error {worst_param:.2e} <= 1e-10 over 100 channels"), worst_param <= 1e-10),
        check(format!("max fidelity error {worst_fq:.2e} <= 1e-9"), worst_fq <= 1e-9),
        check(format!("reconstruction failures: {failures}"), failures == 0),
    ]);
}

#[test]
fn criterion_9_bloch_monte_carlo() {
    let mut rng = common::rng(99);
    let samples = 100_000;
    let mut checks = vec![];
    for (k, ch) in common::representative_channels().iter().enumerate() {
        let map = channel_on_qubit_basis(ch, DEFAULT_DIM, DEFAULT_STEP).unwrap();
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..samples {
            let z: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let f = map.pointwise_fidelity(&QubitState::new(z.acos(), phi).unwrap());
            sum += f;
            sum_sq += f * f;
        }
        let n = samples as f64;
        let mean = sum / n;
        let se = ((sum_sq / n - mean * mean) / (n - 1.0)).sqrt();
        let exact = analytic(ch);
        let z = (mean - exact).abs() / se;
        checks.push(check(format!("channel {k}: MC {mean:.6} +- {se:.1e} vs analytic {exact:.6} ({z:.2} SE)"), z <= 3.0));
    }
    verdict(9, "Bloch-sphere Monte Carlo average", &checks);
}
