//! Single-mode Gaussian channels in the reduced `2×2` form
//! `y_out = Ã y_in + F`, where `F` collects the reservoir noise.

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result, PHYSICALITY_TOL};

/// Quadrature mean values `(⟨X⟩, ⟨P⟩)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quadratures {
    pub x: f64,
    pub p: f64,
}

impl Quadratures {
    pub const ZERO: Quadratures = Quadratures { x: 0.0, p: 0.0 };

    pub fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }

    /// Mean quadratures of the coherent state `|alpha⟩`.
    pub fn of_coherent(alpha: Complex64) -> Self {
        let s = core::f64::consts::SQRT_2;
        Self { x: s * alpha.re, p: s * alpha.im }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.p.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.p)
    }
}

impl core::ops::Add for Quadratures {
    type Output = Quadratures;
    fn add(self, rhs: Quadratures) -> Quadratures {
        Quadratures::new(self.x + rhs.x, self.p + rhs.p)
    }
}

impl core::ops::Sub for Quadratures {
    type Output = Quadratures;
    fn sub(self, rhs: Quadratures) -> Quadratures {
        Quadratures::new(self.x - rhs.x, self.p - rhs.p)
    }
}

/// Symmetric second moments of `(X, P)` stored as plain variances
/// (vacuum: `sxx = spp = ½`, `cxp = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CovarianceMatrix {
    pub sxx: f64,
    pub spp: f64,
    /// Symmetrized covariance `½⟨δXδP + δPδX⟩`.
    pub cxp: f64,
}

impl CovarianceMatrix {
    pub const ZERO: CovarianceMatrix = CovarianceMatrix { sxx: 0.0, spp: 0.0, cxp: 0.0 };

    pub fn new(sxx: f64, spp: f64, cxp: f64) -> Self {
        Self { sxx, spp, cxp }
    }

    pub fn vacuum() -> Self {
        Self::new(0.5, 0.5, 0.0)
    }

    pub fn isotropic(var: f64) -> Self {
        Self::new(var, var, 0.0)
    }

    /// Matrix in the factor-2 convention, for which a coherent state is the identity.
    pub fn to_gamma(&self) -> [[f64; 2]; 2] {
        [[2.0 * self.sxx, 2.0 * self.cxp], [2.0 * self.cxp, 2.0 * self.spp]]
    }

    pub fn from_gamma(gamma: [[f64; 2]; 2]) -> Self {
        Self::new(
            0.5 * gamma[0][0],
            0.5 * gamma[1][1],
            0.25 * (gamma[0][1] + gamma[1][0]),
        )
    }

    pub fn det(&self) -> f64 {
        self.sxx * self.spp - self.cxp * self.cxp
    }

    pub fn trace(&self) -> f64 {
        self.sxx + self.spp
    }

    /// Eigenvalues, larger first.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.sxx + self.spp);
        let half_gap = (0.5 * (self.sxx - self.spp)).hypot(self.cxp);
        (mean + half_gap, mean - half_gap)
    }

    pub fn is_finite(&self) -> bool {
        self.sxx.is_finite() && self.spp.is_finite() && self.cxp.is_finite()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_finite() && self.sxx > 0.0 && self.spp > 0.0 && self.det() > 0.0
    }

    /// `A Σ Aᵀ`.
    pub fn congruence(&self, a: &GainMatrix) -> CovarianceMatrix {
        let (s11, s12, s22) = (self.sxx, self.cxp, self.spp);
        // rows of A Σ
        let m11 = a.a11 * s11 + a.a12 * s12;
        let m12 = a.a11 * s12 + a.a12 * s22;
        let m21 = a.a21 * s11 + a.a22 * s12;
        let m22 = a.a21 * s12 + a.a22 * s22;
        CovarianceMatrix::new(
            m11 * a.a11 + m12 * a.a12,
            m21 * a.a21 + m22 * a.a22,
            0.5 * ((m11 * a.a21 + m12 * a.a22) + (m21 * a.a11 + m22 * a.a12)),
        )
    }

    pub fn scaled(&self, k: f64) -> CovarianceMatrix {
        CovarianceMatrix::new(k * self.sxx, k * self.spp, k * self.cxp)
    }

    pub fn max_abs_diff(&self, other: &CovarianceMatrix) -> f64 {
        (self.sxx - other.sxx)
            .abs()
            .max((self.spp - other.spp).abs())
            .max((self.cxp - other.cxp).abs())
    }
}

impl core::ops::Add for CovarianceMatrix {
    type Output = CovarianceMatrix;
    fn add(self, rhs: CovarianceMatrix) -> CovarianceMatrix {
        CovarianceMatrix::new(self.sxx + rhs.sxx, self.spp + rhs.spp, self.cxp + rhs.cxp)
    }
}

impl core::ops::Sub for CovarianceMatrix {
    type Output = CovarianceMatrix;
    fn sub(self, rhs: CovarianceMatrix) -> CovarianceMatrix {
        CovarianceMatrix::new(self.sxx - rhs.sxx, self.spp - rhs.spp, self.cxp - rhs.cxp)
    }
}

/// The gain matrix `Ã` acting on the mean quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainMatrix {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl GainMatrix {
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn from_row_major(m: [f64; 4]) -> Self {
        Self::new(m[0], m[1], m[2], m[3])
    }

    pub fn to_row_major(&self) -> [f64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn identity() -> Self {
        Self::diagonal(1.0, 1.0)
    }

    pub fn diagonal(gx: f64, gp: f64) -> Self {
        Self::new(gx, 0.0, 0.0, gp)
    }

    /// Counter-clockwise phase-space rotation by `phi`.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self::new(c, -s, s, c)
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &GainMatrix) -> GainMatrix {
        GainMatrix::new(
            self.a11 * rhs.a11 + self.a12 * rhs.a21,
            self.a11 * rhs.a12 + self.a12 * rhs.a22,
            self.a21 * rhs.a11 + self.a22 * rhs.a21,
            self.a21 * rhs.a12 + self.a22 * rhs.a22,
        )
    }

    pub fn apply(&self, q: Quadratures) -> Quadratures {
        Quadratures::new(self.a11 * q.x + self.a12 * q.p, self.a21 * q.x + self.a22 * q.p)
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.a12.abs() <= tol && self.a21.abs() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.to_row_major().iter().all(|v| v.is_finite())
    }

    pub fn max_abs_diff(&self, other: &GainMatrix) -> f64 {
        self.to_row_major()
            .iter()
            .zip(other.to_row_major().iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Complex reparametrization `ᾱ = Cα + Dα*` of the gain matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexGains {
    pub c: Complex64,
    pub d: Complex64,
}

impl ComplexGains {
    pub fn apply(&self, alpha: Complex64) -> Complex64 {
        self.c * alpha + self.d * alpha.conj()
    }

    pub fn to_gain_matrix(&self) -> GainMatrix {
        let sum = self.c + self.d;
        let diff = self.c - self.d;
        GainMatrix::new(sum.re, -diff.im, sum.im, diff.re)
    }
}

pub fn complex_gains(gain: &GainMatrix) -> ComplexGains {
    let GainMatrix { a11, a12, a21, a22 } = *gain;
    ComplexGains {
        c: Complex64::new(0.5 * (a11 + a22), 0.5 * (a21 - a12)),
        d: Complex64::new(0.5 * (a11 - a22), 0.5 * (a12 + a21)),
    }
}

/// Principal-axis form of an output covariance: variances `s1sq ≥ s2sq`
/// along the major and minor axis, with the major axis at angle `theta`
/// from the x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseEllipse {
    pub s1sq: f64,
    pub s2sq: f64,
    pub theta: f64,
}

impl NoiseEllipse {
    /// Validates `s1sq ≥ s2sq > 0` and folds `theta` into `(-π/2, π/2]`.
    pub fn new(s1sq: f64, s2sq: f64, theta: f64) -> Result<Self> {
        if !(s1sq.is_finite() && s2sq.is_finite() && theta.is_finite()) {
            return Err(Error::InvalidEllipse("non-finite parameter"));
        }
        if s2sq <= 0.0 {
            return Err(Error::InvalidEllipse("minor variance must be positive"));
        }
        if s1sq < s2sq {
            return Err(Error::InvalidEllipse("major variance smaller than minor variance"));
        }
        Ok(Self { s1sq, s2sq, theta: fold_angle(theta) })
    }

    pub fn isotropic(var: f64) -> Self {
        Self { s1sq: var, s2sq: var, theta: 0.0 }
    }

    /// `σ̄² = (σ1² + σ2²)/2`.
    pub fn mean_variance(&self) -> f64 {
        0.5 * (self.s1sq + self.s2sq)
    }

    /// `δσ² = (σ1² − σ2²)/2`.
    pub fn half_difference(&self) -> f64 {
        0.5 * (self.s1sq - self.s2sq)
    }

    pub fn is_circle(&self) -> bool {
        self.s1sq == self.s2sq
    }
}

/// Folds an ellipse orientation (π-periodic) into `(-π/2, π/2]`.
fn fold_angle(theta: f64) -> f64 {
    use core::f64::consts::{FRAC_PI_2, PI};
    let mut t = theta % PI;
    if t > FRAC_PI_2 {
        t -= PI;
    } else if t <= -FRAC_PI_2 {
        t += PI;
    }
    t
}

pub fn ellipse_from_covariance(cov: &CovarianceMatrix) -> Result<NoiseEllipse> {
    if !cov.is_positive_definite() {
        return Err(Error::NonPositiveCovariance);
    }
    let mean = 0.5 * (cov.sxx + cov.spp);
    let diff = cov.sxx - cov.spp;
    let delta = (0.5 * diff).hypot(cov.cxp);
    // atan2(±0, negative) would land on ±π; +0 keeps a p-aligned major axis at +π/2.
    let cxp = if cov.cxp == 0.0 { 0.0 } else { cov.cxp };
    let theta = if delta == 0.0 { 0.0 } else { 0.5 * (2.0 * cxp).atan2(diff) };
    Ok(NoiseEllipse { s1sq: mean + delta, s2sq: mean - delta, theta: fold_angle(theta) })
}

pub fn covariance_from_ellipse(e: &NoiseEllipse) -> CovarianceMatrix {
    let mean = e.mean_variance();
    let delta = e.half_difference();
    let (s, c) = (2.0 * e.theta).sin_cos();
    CovarianceMatrix::new(mean + delta * c, mean - delta * c, delta * s)
}

/// `Ã γ_in Ãᵀ + γ_F` in the plain-variance convention.
pub fn propagate_covariance(
    gain: &GainMatrix,
    cov_in: &CovarianceMatrix,
    noise_cov: &CovarianceMatrix,
) -> CovarianceMatrix {
    cov_in.congruence(gain) + *noise_cov
}

/// A single-mode Gaussian process: gain, noise first moments `⟨F⟩` and
/// noise covariance `γ_F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianChannel {
    pub gain: GainMatrix,
    pub noise_mean: Quadratures,
    pub noise_cov: CovarianceMatrix,
}

impl GaussianChannel {
    pub fn new(gain: GainMatrix, noise_mean: Quadratures, noise_cov: CovarianceMatrix) -> Self {
        Self { gain, noise_mean, noise_cov }
    }

    /// Like [`GaussianChannel::new`] but rejects channels failing [`check_physical`].
    pub fn validated(
        gain: GainMatrix,
        noise_mean: Quadratures,
        noise_cov: CovarianceMatrix,
    ) -> Result<Self> {
        let ch = Self::new(gain, noise_mean, noise_cov);
        let report = check_physical(&ch);
        if report.physical {
            Ok(ch)
        } else {
            Err(Error::UnphysicalChannel(report))
        }
    }

    pub fn identity() -> Self {
        Self::new(GainMatrix::identity(), Quadratures::ZERO, CovarianceMatrix::ZERO)
    }

    /// Channel with the given gain whose coherent-input output covariance is `ellipse`.
    pub fn from_output_ellipse(gain: GainMatrix, ellipse: &NoiseEllipse) -> Self {
        let out = covariance_from_ellipse(ellipse);
        let noise = out - CovarianceMatrix::vacuum().congruence(&gain);
        Self::new(gain, Quadratures::ZERO, noise)
    }

    /// Output covariance for any coherent input.
    pub fn output_covariance(&self) -> CovarianceMatrix {
        propagate_covariance(&self.gain, &CovarianceMatrix::vacuum(), &self.noise_cov)
    }

    pub fn output_ellipse(&self) -> Result<NoiseEllipse> {
        ellipse_from_covariance(&self.output_covariance())
    }

    /// Output mean for a coherent input `|alpha⟩`.
    pub fn output_mean(&self, alpha: Complex64) -> Quadratures {
        self.gain.apply(Quadratures::of_coherent(alpha)) + self.noise_mean
    }

    pub fn is_centered(&self) -> bool {
        self.noise_mean.x == 0.0 && self.noise_mean.p == 0.0
    }

    /// Conjugation `R(φ) ∘ E ∘ R(−φ)` by a phase-space rotation.
    pub fn rotated(&self, phi: f64) -> Self {
        let r = GainMatrix::rotation(phi);
        let gain = r.compose(&self.gain).compose(&r.transpose());
        Self::new(gain, r.apply(self.noise_mean), self.noise_cov.congruence(&r))
    }

    pub fn is_finite(&self) -> bool {
        self.gain.is_finite() && self.noise_mean.is_finite() && self.noise_cov.is_finite()
    }
}

/// Per-quadrature noise positivity `2σx² ≥ gx²`, `2σp² ≥ gp²`; only
/// meaningful when the gain matrix is diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalBounds {
    pub x_ok: bool,
    pub p_ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityReport {
    /// Smaller eigenvalue of the noise covariance.
    pub noise_min_eigenvalue: f64,
    pub noise_psd: bool,
    /// `Var(F_x)Var(F_p) − Cov(F_x,F_p)²`.
    pub uncertainty_lhs: f64,
    /// `(1 − det Ã)² / 4`.
    pub uncertainty_bound: f64,
    pub uncertainty_ok: bool,
    pub diagonal_bounds: Option<DiagonalBounds>,
    /// `noise_psd && uncertainty_ok`.
    pub physical: bool,
}

/// Off-diagonal gain entries below this count as zero for the per-quadrature bounds.
pub const DIAGONAL_TOL: f64 = 1e-12;

pub fn check_physical(ch: &GaussianChannel) -> PhysicalityReport {
    let (_, min_eig) = ch.noise_cov.eigenvalues();
    let noise_psd = min_eig >= -PHYSICALITY_TOL;
    let uncertainty_lhs = ch.noise_cov.det();
    let uncertainty_bound = 0.25 * (1.0 - ch.gain.det()).powi(2);
    let uncertainty_ok = uncertainty_lhs - uncertainty_bound >= -PHYSICALITY_TOL;
    let diagonal_bounds = ch.gain.is_diagonal(DIAGONAL_TOL).then(|| {
        let out = ch.output_covariance();
        DiagonalBounds {
            x_ok: 2.0 * out.sxx - ch.gain.a11 * ch.gain.a11 >= -PHYSICALITY_TOL,
            p_ok: 2.0 * out.spp - ch.gain.a22 * ch.gain.a22 >= -PHYSICALITY_TOL,
        }
    });
    PhysicalityReport {
        noise_min_eigenvalue: min_eig,
        noise_psd,
        uncertainty_lhs,
        uncertainty_bound,
        uncertainty_ok,
        diagonal_bounds,
        physical: noise_psd && uncertainty_ok && ch.is_finite(),
    }
}

/// A channel with `⟨F⟩ = 0` plus the displacement that was removed from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenteredChannel {
    pub channel: GaussianChannel,
    pub offset: Quadratures,
}

pub fn subtract_noise_mean(ch: &GaussianChannel) -> CenteredChannel {
    CenteredChannel {
        channel: GaussianChannel { noise_mean: Quadratures::ZERO, ..*ch },
        offset: ch.noise_mean,
    }
}
