//! Gauss–Hermite quadrature for integrals against `e^{−x²}`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// `π^{-1/4}`
const PI_M4: f64 = 0.751_125_544_464_942_5;

/// Nodes (descending) and weights of the `n`-point Gauss–Hermite rule, so
/// that `Σ wᵢ f(xᵢ) ≈ ∫ e^{−x²} f(x) dx`, exact for polynomials of degree `< 2n`.
///
/// Roots are polished by Newton iteration on the orthonormal Hermite
/// recurrence, which stays in range for a few hundred points.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "need at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = (n + 1) / 2;
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        for _ in 0..100 {
            let (value, prev) = hermite_orthonormal(n, z);
            let step = value / ((2.0 * nf).sqrt() * prev);
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        let deriv = (2.0 * nf).sqrt() * hermite_orthonormal(n, z).1;
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (deriv * deriv);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Orthonormal Hermite functions without the Gaussian factor: returns
/// `(h_n(z), h_{n−1}(z))`.
fn hermite_orthonormal(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = PI_M4;
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}
