//! Squeezed-thermal matrix elements `⟨n|S(r)ρ₀S(r)†|m⟩` by direct
//! integration over the coherent-state (P-function) expansion of `ρ₀`.

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::fidelity::{params_from_ellipse, SqueezedThermalParams};
use crate::gaussian::NoiseEllipse;
use crate::quadrature::gauss_hermite;
use crate::{Error, Result};

/// Highest number state supported by [`matrix_element_quadrature`].
pub const MAX_LEVEL: usize = 8;

/// Minimum quadrature points per axis.
pub const MIN_QUAD_POINTS: usize = 64;

/// Largest tolerated change when the number of quadrature points doubles.
pub const QUADRATURE_TOL: f64 = 1e-8;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `s^{n/2} Hₙ(γ/√s)` expanded as a polynomial in `s`, which stays finite
/// (and real-coefficient) for `s ≤ 0`, including the `r = 0` limit `(2γ)ⁿ`.
fn scaled_hermite(n: usize, gamma: Complex64, s: f64) -> Complex64 {
    let nf = factorial(n);
    let two_gamma = gamma * 2.0;
    (0..=n / 2)
        .map(|j| {
            let coeff = nf / (factorial(j) * factorial(n - 2 * j));
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            two_gamma.powu((n - 2 * j) as u32) * (sign * coeff * s.powi(j as i32))
        })
        .sum()
}

/// Polynomial part of `⟨n|S(r)|γ⟩` once the Gaussian prefactor
/// `e^{−|γ|²/2 + γ² tanh(r)/2}/√cosh r` is split off.
fn amplitude_polynomial(n: usize, r: f64, gamma: Complex64) -> Complex64 {
    scaled_hermite(n, gamma, (2.0 * r).sinh()) / (factorial(n).sqrt() * (2.0 * r.cosh()).powi(n as i32))
}

/// `⟨n|S(r)|γ⟩` for `S(r) = exp(½r(a² − a†²))`.
pub fn squeezed_coherent_amplitude(n: usize, r: f64, gamma: Complex64) -> Complex64 {
    let exponent = gamma * gamma * (0.5 * r.tanh()) - 0.5 * gamma.norm_sqr();
    exponent.exp() / r.cosh().sqrt() * amplitude_polynomial(n, r, gamma)
}

fn tensor_rule(n: usize, m: usize, params: &SqueezedThermalParams, points: usize) -> f64 {
    let (nodes, weights) = gauss_hermite(points);
    let t = params.r.tanh();
    let nbar = params.nbar0;
    let a = 1.0 + nbar * (1.0 - t);
    let b = 1.0 + nbar * (1.0 + t);
    let (sx, sy) = ((nbar / a).sqrt(), (nbar / b).sqrt());
    let mut acc = Complex64::new(0.0, 0.0);
    for (xi, wi) in nodes.iter().zip(&weights) {
        for (yj, wj) in nodes.iter().zip(&weights) {
            let gamma = Complex64::new(sx * xi, sy * yj);
            let q = amplitude_polynomial(n, params.r, gamma) * amplitude_polynomial(m, params.r, gamma).conj();
            acc += q * (wi * wj);
        }
    }
    acc.re / (core::f64::consts::PI * params.r.cosh() * (a * b).sqrt())
}

/// `⟨n|ρ_STS|m⟩` by tensor-product Gauss–Hermite quadrature of
/// `(1/πn̄₀)∫d²γ e^{−|γ|²/n̄₀}⟨n|S|γ⟩⟨γ|S†|m⟩`.
///
/// The thermal weight and the Gaussian part of both amplitudes are absorbed
/// into an anisotropically scaled Hermite weight, which leaves a polynomial
/// integrand. The rule is re-evaluated with twice the points as a convergence check.
pub fn matrix_element_quadrature(
    n: usize,
    m: usize,
    params: &SqueezedThermalParams,
    quad_points: usize,
) -> Result<f64> {
    if n > MAX_LEVEL || m > MAX_LEVEL {
        return Err(Error::InvalidArgument("number state above the supported level"));
    }
    if quad_points < MIN_QUAD_POINTS {
        return Err(Error::InvalidArgument("at least 64 quadrature points per axis are required"));
    }
    let coarse = tensor_rule(n, m, params, quad_points);
    let fine = tensor_rule(n, m, params, 2 * quad_points);
    let change = (fine - coarse).abs();
    if change > QUADRATURE_TOL || !fine.is_finite() {
        return Err(Error::QuadratureNotConverged { change });
    }
    Ok(fine)
}

pub fn matrix_element_integral(n: usize, m: usize, e: &NoiseEllipse, quad_points: usize) -> Result<f64> {
    matrix_element_quadrature(n, m, &params_from_ellipse(e)?, quad_points)
}
