//! Action of the channel on the qubit operators `|n⟩⟨m|`, `n, m ∈ {0, 1}`,
//! reconstructed from coherent-state outputs by numerical Wirtinger
//! differentiation of `e^{|α|²} E(|α⟩⟨α|)` at `α = 0`.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::states::OutputStateModel;
use super::FockOperator;
use crate::gaussian::GaussianChannel;
use crate::{Error, Result};

/// Allowed range of the finite-difference step.
pub const STEP_RANGE: (f64, f64) = (1e-4, 1e-2);

/// Largest tolerated max-norm gap between the `h` and `h/2` stencils.
pub const RICHARDSON_TOL: f64 = 1e-5;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Bloch-sphere qubit `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub bloch_theta: f64,
    pub bloch_phi: f64,
}

impl QubitState {
    pub fn new(bloch_theta: f64, bloch_phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&bloch_theta) {
            return Err(Error::InvalidArgument("Bloch polar angle must lie in [0, pi]"));
        }
        if !bloch_phi.is_finite() {
            return Err(Error::InvalidArgument("Bloch azimuth must be finite"));
        }
        let phi = bloch_phi % (2.0 * PI);
        let phi = if phi < 0.0 { phi + 2.0 * PI } else { phi };
        Ok(Self { bloch_theta, bloch_phi: if phi >= 2.0 * PI { 0.0 } else { phi } })
    }

    /// `(ψ₀, ψ₁)`.
    pub fn amplitudes(&self) -> [Complex64; 2] {
        let half = 0.5 * self.bloch_theta;
        [
            Complex64::new(half.cos(), 0.0),
            Complex64::from_polar(half.sin(), self.bloch_phi),
        ]
    }
}

/// The four operators `E(|n⟩⟨m|)` on the truncated space.
#[derive(Debug, Clone)]
pub struct QubitMap {
    pub e00: FockOperator,
    pub e01: FockOperator,
    pub e10: FockOperator,
    pub e11: FockOperator,
    /// Max-norm gap between the `h` and `h/2` stencils (zero for the operator route).
    pub richardson_discrepancy: f64,
}

impl QubitMap {
    /// `E(|n⟩⟨m|)` for `n, m ∈ {0, 1}`.
    pub fn block(&self, n: usize, m: usize) -> &FockOperator {
        match (n, m) {
            (0, 0) => &self.e00,
            (0, 1) => &self.e01,
            (1, 0) => &self.e10,
            (1, 1) => &self.e11,
            _ => panic!("qubit index out of range"),
        }
    }

    /// `E(|ψ⟩⟨ψ|)` assembled by linearity.
    pub fn apply(&self, psi: [Complex64; 2]) -> FockOperator {
        let mut out = FockOperator::zeros(self.e00.dim());
        for n in 0..2 {
            for m in 0..2 {
                out = &out + &self.block(n, m).scale(psi[n] * psi[m].conj());
            }
        }
        out
    }

    /// Bloch-averaged fidelity, complex so callers can inspect the residual imaginary part.
    pub fn average_fidelity_complex(&self) -> Complex64 {
        (self.e00[(0, 0)] + self.e11[(1, 1)]) / 3.0
            + (self.e01[(0, 1)] + self.e10[(1, 0)]) / 6.0
            + (self.e00[(1, 1)] + self.e11[(0, 0)]) / 6.0
    }

    pub fn average_fidelity(&self) -> f64 {
        self.average_fidelity_complex().re
    }

    /// `⟨ψ|E(|ψ⟩⟨ψ|)|ψ⟩`, using only the qubit corner of each block.
    pub fn pointwise_fidelity(&self, q: &QubitState) -> f64 {
        let psi = q.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..2 {
            for m in 0..2 {
                let block = self.block(n, m);
                let weight = psi[n] * psi[m].conj();
                for k in 0..2 {
                    for l in 0..2 {
                        acc += psi[k].conj() * block[(k, l)] * psi[l] * weight;
                    }
                }
            }
        }
        acc.re
    }
}

struct StencilEstimate {
    e01: FockOperator,
    e10: FockOperator,
    e11: FockOperator,
}

fn weighted_state(model: &OutputStateModel, x: f64, y: f64) -> Result<FockOperator> {
    let alpha = Complex64::new(x, y);
    Ok(model.state(alpha)?.scale_real(alpha.norm_sqr().exp()))
}

fn stencil(model: &OutputStateModel, center: &FockOperator, h: f64) -> Result<StencilEstimate> {
    let xp = weighted_state(model, h, 0.0)?;
    let xm = weighted_state(model, -h, 0.0)?;
    let yp = weighted_state(model, 0.0, h)?;
    let ym = weighted_state(model, 0.0, -h)?;
    let d_re = (&xp - &xm).scale_real(0.5 / h);
    let d_im = (&yp - &ym).scale_real(0.5 / h);
    let two_center = center.scale_real(2.0);
    let d_re2 = &(&xp + &xm) - &two_center;
    let d_im2 = &(&yp + &ym) - &two_center;
    // ∂/∂α = ½(∂_re − i∂_im), ∂/∂α* = ½(∂_re + i∂_im), ∂²/∂α∂α* = ¼∇²
    Ok(StencilEstimate {
        e10: (&d_re - &d_im.scale(I)).scale_real(0.5),
        e01: (&d_re + &d_im.scale(I)).scale_real(0.5),
        e11: (&d_re2 + &d_im2).scale_real(0.25 / (h * h)),
    })
}

fn richardson(coarse: &FockOperator, fine: &FockOperator) -> FockOperator {
    (&fine.scale_real(4.0) - coarse).scale_real(1.0 / 3.0)
}

/// `E(|n⟩⟨m|)` from central differences at steps `h` and `h/2`, returned
/// as the Richardson-extrapolated combination.
pub fn channel_on_qubit_basis(ch: &GaussianChannel, dim: usize, h: f64) -> Result<QubitMap> {
    if !(STEP_RANGE.0..=STEP_RANGE.1).contains(&h) {
        return Err(Error::InvalidArgument("finite-difference step outside [1e-4, 1e-2]"));
    }
    let model = OutputStateModel::new(ch, dim)?;
    let center = model.state(Complex64::new(0.0, 0.0))?;
    let coarse = stencil(&model, &center, h)?;
    let fine = stencil(&model, &center, 0.5 * h)?;
    let discrepancy = coarse
        .e01
        .max_abs_diff(&fine.e01)
        .max(coarse.e10.max_abs_diff(&fine.e10))
        .max(coarse.e11.max_abs_diff(&fine.e11));
    if discrepancy > RICHARDSON_TOL || discrepancy.is_nan() {
        return Err(Error::StepTooLarge { discrepancy });
    }
    Ok(QubitMap {
        e01: richardson(&coarse.e01, &fine.e01),
        e10: richardson(&coarse.e10, &fine.e10),
        e11: richardson(&coarse.e11, &fine.e11),
        e00: center,
        richardson_discrepancy: discrepancy,
    })
}

/// `E(|n⟩⟨m|)` from the closed-form derivatives of the displacement
/// operator, chained through `ᾱ = Cα + Dα*`. Independent of any differencing.
pub fn channel_on_qubit_basis_operators(ch: &GaussianChannel, dim: usize) -> Result<QubitMap> {
    let model = OutputStateModel::new(ch, dim)?;
    let rho = model.rotated_squeezed_thermal();
    let (a, adag) = model.ladder();
    let gains = model.gains();
    let (c, d) = (gains.c, gains.d);

    let left = |op: &FockOperator| op.matmul(rho);
    let right = |op: &FockOperator| rho.matmul(op);
    let sandwich = |l: &FockOperator, r: &FockOperator| l.matmul(rho).matmul(r);

    // derivatives with respect to ᾱ and ᾱ*
    let d_bar = &left(adag) - &right(adag);
    let d_bar_conj = &right(a) - &left(a);
    let adag2 = adag.matmul(adag);
    let a2 = a.matmul(a);
    let d2_bar = &(&left(&adag2) - &sandwich(adag, adag).scale_real(2.0)) + &right(&adag2);
    let d2_bar_conj = &(&left(&a2) - &sandwich(a, a).scale_real(2.0)) + &right(&a2);
    let mixed = &(&(&sandwich(adag, a) + &sandwich(a, adag)) - &left(&adag.matmul(a)))
        - &right(&a.matmul(adag));

    let e10 = &d_bar.scale(c) + &d_bar_conj.scale(d.conj());
    let e01 = &d_bar.scale(d) + &d_bar_conj.scale(c.conj());
    let cd = c * d;
    let e11 = &(&(rho + &d2_bar.scale(cd)) + &mixed.scale_real(c.norm_sqr() + d.norm_sqr()))
        + &d2_bar_conj.scale(cd.conj());
    Ok(QubitMap { e00: rho.clone(), e01, e10, e11, richardson_discrepancy: 0.0 })
}

/// Average qubit fidelity from first principles on a `dim`-level truncation.
pub fn fidelity_bruteforce(ch: &GaussianChannel, dim: usize, h: f64) -> Result<f64> {
    Ok(channel_on_qubit_basis(ch, dim, h)?.average_fidelity())
}

pub fn pointwise_qubit_fidelity(ch: &GaussianChannel, q: &QubitState, dim: usize, h: f64) -> Result<f64> {
    Ok(channel_on_qubit_basis(ch, dim, h)?.pointwise_fidelity(q))
}
