//! Channel reconstruction from the output moments of coherent probes.
//!
//! The vacuum probe fixes the noise mean, the remaining probes fix the gain
//! matrix by least squares, and the output covariances (which do not depend
//! on the probe amplitude) fix the noise covariance.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::gaussian::{
    check_physical, subtract_noise_mean, CenteredChannel, CovarianceMatrix, GainMatrix,
    GaussianChannel, PhysicalityReport, Quadratures,
};
use crate::{Error, Result};

/// Largest accepted condition number of the probe design matrix.
pub const MAX_CONDITION: f64 = 1e8;

/// Tolerance below zero for a diagonal noise-variance estimate.
pub const NEGATIVE_VARIANCE_TOL: f64 = 1e-9;

/// Measured output moments for one coherent probe `|alpha⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeRecord {
    pub alpha: Complex64,
    pub out_mean: Quadratures,
    pub out_cov: CovarianceMatrix,
}

impl ProbeRecord {
    pub fn new(alpha: Complex64, out_mean: Quadratures, out_cov: CovarianceMatrix) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite() && out_mean.is_finite()) {
            return Err(Error::InvalidArgument("probe record contains a non-finite value"));
        }
        if !out_cov.is_positive_definite() {
            return Err(Error::NonPositiveCovariance);
        }
        Ok(Self { alpha, out_mean, out_cov })
    }

    pub fn is_vacuum(&self) -> bool {
        self.alpha == Complex64::new(0.0, 0.0)
    }
}

/// Noiseless records a channel would produce for the given probe amplitudes.
pub fn simulate_probe_records(ch: &GaussianChannel, alphas: &[Complex64]) -> Vec<ProbeRecord> {
    let cov = ch.output_covariance();
    alphas
        .iter()
        .map(|&alpha| ProbeRecord { alpha, out_mean: ch.output_mean(alpha), out_cov: cov })
        .collect()
}

/// Gain matrix and noise mean `⟨F⟩` from the probe means.
pub fn estimate_gain_and_offset(records: &[ProbeRecord]) -> Result<(GainMatrix, Quadratures)> {
    let vacuum: Vec<&ProbeRecord> = records.iter().filter(|r| r.is_vacuum()).collect();
    if vacuum.is_empty() {
        return Err(Error::MissingVacuumProbe);
    }
    let k = vacuum.len() as f64;
    let offset = Quadratures::new(
        vacuum.iter().map(|r| r.out_mean.x).sum::<f64>() / k,
        vacuum.iter().map(|r| r.out_mean.p).sum::<f64>() / k,
    );

    // normal equations Ã (Σ y yᵀ) = Σ (out − F) yᵀ
    let (mut sxx, mut sxp, mut spp) = (0.0, 0.0, 0.0);
    let mut rhs = [[0.0_f64; 2]; 2];
    for r in records.iter().filter(|r| !r.is_vacuum()) {
        let y = Quadratures::of_coherent(r.alpha);
        let d = r.out_mean - offset;
        sxx += y.x * y.x;
        sxp += y.x * y.p;
        spp += y.p * y.p;
        rhs[0][0] += d.x * y.x;
        rhs[0][1] += d.x * y.p;
        rhs[1][0] += d.p * y.x;
        rhs[1][1] += d.p * y.p;
    }
    let normal = CovarianceMatrix::new(sxx, spp, sxp);
    let (hi, lo) = normal.eigenvalues();
    let condition = if lo > 0.0 { (hi / lo).sqrt() } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::DegenerateProbeSet { condition });
    }
    let det = normal.det();
    let inv = [[spp / det, -sxp / det], [-sxp / det, sxx / det]];
    let row = |b: [f64; 2]| [b[0] * inv[0][0] + b[1] * inv[1][0], b[0] * inv[0][1] + b[1] * inv[1][1]];
    let [a11, a12] = row(rhs[0]);
    let [a21, a22] = row(rhs[1]);
    Ok((GainMatrix::new(a11, a12, a21, a22), offset))
}

fn noise_cov_unchecked(records: &[ProbeRecord], gain: &GainMatrix) -> Result<CovarianceMatrix> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("no probe records"));
    }
    let n = records.len() as f64;
    let (mut vx, mut vp, mut c) = (0.0, 0.0, 0.0);
    for r in records {
        vx += r.out_cov.sxx;
        vp += r.out_cov.spp;
        c += r.out_cov.cxp;
    }
    let g = gain;
    Ok(CovarianceMatrix::new(
        vx / n - 0.5 * (g.a11 * g.a11 + g.a12 * g.a12),
        vp / n - 0.5 * (g.a21 * g.a21 + g.a22 * g.a22),
        c / n - 0.5 * (g.a11 * g.a21 + g.a12 * g.a22),
    ))
}

/// Noise covariance `γ_F` given the gain matrix, averaged over all records.
pub fn estimate_noise_cov(records: &[ProbeRecord], gain: &GainMatrix) -> Result<CovarianceMatrix> {
    let cov = noise_cov_unchecked(records, gain)?;
    for value in [cov.sxx, cov.spp] {
        if value < -NEGATIVE_VARIANCE_TOL {
            return Err(Error::NegativeVarianceEstimate { value });
        }
    }
    Ok(cov)
}

/// Result of [`reconstruct_channel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reconstruction {
    /// The channel as measured, including `⟨F⟩`.
    pub channel: GaussianChannel,
    /// The same channel with `⟨F⟩` moved into an output displacement.
    pub centered: CenteredChannel,
    pub report: PhysicalityReport,
}

/// Full reconstruction. The noise covariance is never projected onto the
/// physical set; failures are reported as [`Error::UnphysicalReconstruction`].
pub fn reconstruct_channel(records: &[ProbeRecord]) -> Result<Reconstruction> {
    if records.len() < 3 {
        return Err(Error::InvalidArgument("at least three probe records are required"));
    }
    let (gain, offset) = estimate_gain_and_offset(records)?;
    let noise_cov = noise_cov_unchecked(records, &gain)?;
    let channel = GaussianChannel::new(gain, offset, noise_cov);
    let report = check_physical(&channel);
    if !report.physical {
        return Err(Error::UnphysicalReconstruction(report));
    }
    Ok(Reconstruction { channel, centered: subtract_noise_mean(&channel), report })
}
