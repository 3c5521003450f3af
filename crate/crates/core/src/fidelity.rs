//! Closed-form average fidelity of a Fock-encoded qubit under a Gaussian
//! channel, its symmetric and diagonal special cases, and the phase
//! rotation that extremizes it.

use core::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::gaussian::{check_physical, complex_gains, ComplexGains, GaussianChannel, NoiseEllipse};
use crate::{Error, Result, PHYSICALITY_TOL};

/// Raw fidelities within this distance of `[0, 1]` are clamped; anything
/// further out is reported as [`Error::NumericalInconsistency`].
pub const CLAMP_TOL: f64 = 1e-9;

/// Thermal occupation and squeezing of the squeezed thermal state whose
/// `X` and `P` variances are `(n̄0 + ½)e^{−2r}` and `(n̄0 + ½)e^{2r}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedThermalParams {
    pub nbar0: f64,
    pub r: f64,
}

impl SqueezedThermalParams {
    /// Parameters reproducing `Var(X) = s1sq`, `Var(P) = s2sq` (either order).
    pub fn from_variances(s1sq: f64, s2sq: f64) -> Result<Self> {
        let product = s1sq * s2sq;
        if !(s1sq > 0.0 && s2sq > 0.0) || product < 0.25 - PHYSICALITY_TOL {
            return Err(Error::SubHeisenbergEllipse { product });
        }
        Ok(Self { nbar0: (product.sqrt() - 0.5).max(0.0), r: 0.25 * (s2sq / s1sq).ln() })
    }

    /// `(Var(X), Var(P))` of the unrotated state.
    pub fn variances(&self) -> (f64, f64) {
        let base = self.nbar0 + 0.5;
        (base * (-2.0 * self.r).exp(), base * (2.0 * self.r).exp())
    }
}

pub fn params_from_ellipse(e: &NoiseEllipse) -> Result<SqueezedThermalParams> {
    SqueezedThermalParams::from_variances(e.s1sq, e.s2sq)
}

/// The squeezed-thermal matrix elements the fidelity depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixElementSet {
    pub p00: f64,
    pub p11: f64,
    pub p02: f64,
    pub p22: f64,
    pub p13: f64,
}

impl MatrixElementSet {
    /// Closed forms in terms of the unrotated variances `Var(X) = s1sq`,
    /// `Var(P) = s2sq`.
    pub fn from_variances(s1sq: f64, s2sq: f64) -> Result<Self> {
        SqueezedThermalParams::from_variances(s1sq, s2sq)?;
        let q = (s1sq + 0.5) * (s2sq + 0.5);
        let excess = s1sq * s2sq - 0.25;
        let diff = s1sq - s2sq;
        Ok(Self {
            p00: 1.0 / q.sqrt(),
            p11: excess / q.powf(1.5),
            p02: diff / (2.0 * SQRT_2 * q.powf(1.5)),
            p22: (excess * excess + 0.125 * diff * diff) / q.powf(2.5),
            p13: 6.0_f64.sqrt() * excess * diff / (4.0 * q.powf(2.5)),
        })
    }

    /// Element `⟨n|ρ|m⟩` for the pairs held in the set (symmetric in `n, m`).
    pub fn get(&self, n: usize, m: usize) -> Option<f64> {
        match (n.min(m), n.max(m)) {
            (0, 0) => Some(self.p00),
            (1, 1) => Some(self.p11),
            (0, 2) => Some(self.p02),
            (2, 2) => Some(self.p22),
            (1, 3) => Some(self.p13),
            _ => None,
        }
    }
}

pub fn sts_matrix_elements(e: &NoiseEllipse) -> Result<MatrixElementSet> {
    MatrixElementSet::from_variances(e.s1sq, e.s2sq)
}

/// Everything the closed-form fidelity needs: complex gains, output noise
/// ellipse and `D̃ = D e^{−2iθ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityInputs {
    pub gains: ComplexGains,
    pub ellipse: NoiseEllipse,
    pub dtilde: Complex64,
}

impl FidelityInputs {
    /// Requires `⟨F⟩ = 0` (see [`crate::subtract_noise_mean`]) and a physical channel.
    pub fn from_channel(ch: &GaussianChannel) -> Result<Self> {
        if !ch.is_centered() {
            return Err(Error::NonZeroNoiseMean);
        }
        let report = check_physical(ch);
        if !report.physical {
            return Err(Error::UnphysicalChannel(report));
        }
        let ellipse = ch.output_ellipse()?;
        Ok(Self::from_parts(complex_gains(&ch.gain), ellipse))
    }

    /// Unchecked assembly from already-known gains and ellipse.
    pub fn from_parts(gains: ComplexGains, ellipse: NoiseEllipse) -> Self {
        let dtilde = gains.d * Complex64::from_polar(1.0, -2.0 * ellipse.theta);
        Self { gains, ellipse, dtilde }
    }

    /// `C + D̃*` and `C − D̃*`.
    fn plus_minus(&self) -> (Complex64, Complex64) {
        let dc = self.dtilde.conj();
        (self.gains.c + dc, self.gains.c - dc)
    }
}

fn clamp_fidelity(raw: f64) -> Result<f64> {
    if !raw.is_finite() || raw < -CLAMP_TOL || raw > 1.0 + CLAMP_TOL {
        return Err(Error::NumericalInconsistency { value: raw });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Closed-form fidelity with the output phase rotated by `theta_prime`
/// (`C → Ce^{iθ′}`, `D̃* → D̃*e^{iθ′}`); unclamped.
fn raw_fidelity(inp: &FidelityInputs, theta_prime: f64) -> f64 {
    let (s1, s2) = (inp.ellipse.s1sq, inp.ellipse.s2sq);
    let (u, v) = (s1 + 0.5, s2 + 0.5);
    let (plus, minus) = inp.plus_minus();
    let phase = Complex64::from_polar(1.0, theta_prime);
    let (plus_rot, minus_rot) = (plus * phase, minus * phase);
    let (pp, mm) = (plus.norm_sqr(), minus.norm_sqr());
    let bracket = 3.0 + 3.0 * (s1 * s2 - 0.25) / (u * v) + plus_rot.re / u + minus_rot.re / v
        - pp * (s1 - 1.0) / (u * u)
        - mm * (s2 - 1.0) / (v * v)
        - (pp * (s2 - 0.5) + mm * (s1 - 0.5)) / (2.0 * u * v);
    bracket / (6.0 * (u * v).sqrt())
}

pub fn average_qubit_fidelity(inp: &FidelityInputs) -> Result<f64> {
    clamp_fidelity(raw_fidelity(inp, 0.0))
}

/// Fidelity after a trivial output phase rotation by `theta_prime`.
pub fn rotated_fidelity(inp: &FidelityInputs, theta_prime: f64) -> Result<f64> {
    clamp_fidelity(raw_fidelity(inp, theta_prime))
}

/// Extremal fidelities over a trivial output phase rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseOptimum {
    /// Rotation maximizing the fidelity, in `[0, 2π)`.
    pub theta_prime: f64,
    pub fq_max: f64,
    /// Rotation minimizing the fidelity, in `[0, 2π)`.
    pub theta_min: f64,
    pub fq_min: f64,
    /// Both linear coefficients vanish and the fidelity is flat in `θ′`.
    pub degenerate: bool,
}

pub fn optimal_phase_rotation(inp: &FidelityInputs) -> Result<PhaseOptimum> {
    let (s1, s2) = (inp.ellipse.s1sq, inp.ellipse.s2sq);
    let (u, v) = (s1 + 0.5, s2 + 0.5);
    let c = inp.gains.c;
    let dt = inp.dtilde;
    let numerator = (c.conj() + dt) * v + (c.conj() - dt) * u;
    let denominator = (c + dt.conj()) * v + (c - dt.conj()) * u;
    let scale = (c.norm() + dt.norm()) * (u + v);
    if denominator.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
        let flat = average_qubit_fidelity(inp)?;
        return Ok(PhaseOptimum {
            theta_prime: 0.0,
            fq_max: flat,
            theta_min: 0.0,
            fq_min: flat,
            degenerate: true,
        });
    }
    // e^{2iθ′} fixes θ′ modulo π; the two branches are the maximum and minimum.
    let branch = 0.5 * (numerator / denominator).arg();
    let a = wrap_turn(branch);
    let b = wrap_turn(branch + PI);
    let (fa, fb) = (rotated_fidelity(inp, a)?, rotated_fidelity(inp, b)?);
    let ((theta_prime, fq_max), (theta_min, fq_min)) =
        if fa >= fb { ((a, fa), (b, fb)) } else { ((b, fb), (a, fa)) };
    Ok(PhaseOptimum { theta_prime, fq_max, theta_min, fq_min, degenerate: false })
}

fn wrap_turn(angle: f64) -> f64 {
    let t = angle % (2.0 * PI);
    let t = if t < 0.0 { t + 2.0 * PI } else { t };
    if t >= 2.0 * PI {
        0.0
    } else {
        t
    }
}

/// Gain `g` on both quadratures with isotropic output variance `sigma_sq`.
pub fn fidelity_symmetric(g: f64, sigma_sq: f64) -> Result<f64> {
    if !(g.is_finite() && sigma_sq.is_finite()) {
        return Err(Error::UnphysicalParameters("non-finite parameter"));
    }
    if sigma_sq < 0.5 - PHYSICALITY_TOL {
        return Err(Error::UnphysicalParameters("output variance below the vacuum level"));
    }
    let noise = sigma_sq - 0.5 * g * g;
    let bound = 0.5 * (1.0 - g * g).abs();
    if noise - bound < -PHYSICALITY_TOL {
        return Err(Error::UnphysicalParameters("added noise below the minimum for this gain"));
    }
    let s = sigma_sq;
    let raw = (6.0 * s * s + 3.0 * s + g * (2.0 * s + 1.0) - g * g * (3.0 * s - 2.5))
        / (6.0 * (s + 0.5).powi(3));
    clamp_fidelity(raw)
}

/// Diagonal gain `diag(gx, gp)` with diagonal output covariance `diag(sx_sq, sp_sq)`.
pub fn fidelity_asymmetric_diagonal(gx: f64, gp: f64, sx_sq: f64, sp_sq: f64) -> Result<f64> {
    if ![gx, gp, sx_sq, sp_sq].iter().all(|v| v.is_finite()) {
        return Err(Error::UnphysicalParameters("non-finite parameter"));
    }
    if sx_sq * sp_sq < 0.25 - PHYSICALITY_TOL {
        return Err(Error::UnphysicalParameters("output variances violate the uncertainty relation"));
    }
    if 2.0 * sx_sq - gx * gx < -PHYSICALITY_TOL || 2.0 * sp_sq - gp * gp < -PHYSICALITY_TOL {
        return Err(Error::UnphysicalParameters("negative added noise on a quadrature"));
    }
    let (u, v) = (sx_sq + 0.5, sp_sq + 0.5);
    let bracket = 3.0 + 3.0 * (sx_sq * sp_sq - 0.25) / (u * v) + gx / u + gp / v
        - gx * gx * (sx_sq - 1.0) / (u * u)
        - gp * gp * (sp_sq - 1.0) / (v * v)
        - (gx * gx * (sp_sq - 0.5) + gp * gp * (sx_sq - 0.5)) / (2.0 * u * v);
    clamp_fidelity(bracket / (6.0 * (u * v).sqrt()))
}

/// Noiseless degenerate parametric amplifier with gain `G = e^r`.
pub fn noiseless_amplifier_fidelity(r: f64) -> f64 {
    let c2 = (2.0 * r).cosh();
    SQRT_2 / 3.0 * (c2 + 2.0 * r.cosh() + 3.0) / (1.0 + c2).powf(1.5)
}
