use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{FockOperator, GUARD_LEVELS, PROBE_LEVELS};
use crate::fidelity::params_from_ellipse;
use crate::gaussian::{complex_gains, ComplexGains, CovarianceMatrix, GaussianChannel, Quadratures};
use crate::{Error, Result};

/// Largest tolerated leakage of a low-level column into the guard band.
pub const UNITARITY_TOL: f64 = 1e-6;

/// Annihilation and creation operators truncated to `dim` levels.
pub fn ladder_operators(dim: usize) -> Result<(FockOperator, FockOperator)> {
    if dim < 2 {
        return Err(Error::InvalidArgument("truncation dimension must be at least 2"));
    }
    let mut a = FockOperator::zeros(dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let adag = a.adjoint();
    Ok((a, adag))
}

pub fn number_operator(dim: usize) -> FockOperator {
    let diag: Vec<Complex64> = (0..dim).map(|n| Complex64::new(n as f64, 0.0)).collect();
    FockOperator::from_diagonal(&diag)
}

/// `X = (a + a†)/√2` and `P = −i(a − a†)/√2`.
pub fn quadrature_operators(dim: usize) -> Result<(FockOperator, FockOperator)> {
    let (a, adag) = ladder_operators(dim)?;
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let x = (&a + &adag).scale_real(s);
    let p = (&a - &adag).scale(Complex64::new(0.0, -s));
    Ok((x, p))
}

/// `D(ᾱ) = exp(ᾱa† − ᾱ*a)` on the truncated space.
pub fn displacement(dim: usize, alpha_bar: Complex64) -> Result<FockOperator> {
    let (a, adag) = ladder_operators(dim)?;
    Ok((&adag.scale(alpha_bar) - &a.scale(alpha_bar.conj())).expm())
}

/// `S(r) = exp(½r(a² − a†²))` on the truncated space.
pub fn squeeze(dim: usize, r: f64) -> Result<FockOperator> {
    let (a, adag) = ladder_operators(dim)?;
    let generator = &a.matmul(&a) - &adag.matmul(&adag);
    Ok(generator.scale_real(0.5 * r).expm())
}

/// `R(θ) = exp(iθa†a)`.
pub fn rotation(dim: usize, theta: f64) -> FockOperator {
    number_operator(dim).scale(Complex64::new(0.0, theta)).expm()
}

/// Norm that the lowest [`PROBE_LEVELS`] columns of `u` leak into the top
/// [`GUARD_LEVELS`] levels; zero when the space has no guard band.
pub fn truncation_defect(u: &FockOperator) -> f64 {
    let dim = u.dim();
    let keep = dim.saturating_sub(GUARD_LEVELS).max(PROBE_LEVELS.min(dim));
    (0..PROBE_LEVELS.min(dim))
        .map(|j| (keep..dim).map(|i| u[(i, j)].norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn checked(u: FockOperator) -> Result<FockOperator> {
    let defect = truncation_defect(&u);
    if defect > UNITARITY_TOL {
        Err(Error::TruncationTooSmall { defect })
    } else {
        Ok(u)
    }
}

#[derive(Debug, Clone)]
pub struct GaussianUnitaries {
    pub displacement: FockOperator,
    pub squeeze: FockOperator,
    pub rotation: FockOperator,
}

/// Displacement, squeeze and rotation unitaries, each checked for leakage
/// into the guard band.
pub fn gaussian_unitaries(dim: usize, alpha_bar: Complex64, r: f64, theta: f64) -> Result<GaussianUnitaries> {
    Ok(GaussianUnitaries {
        displacement: checked(displacement(dim, alpha_bar)?)?,
        squeeze: checked(squeeze(dim, r)?)?,
        rotation: rotation(dim, theta),
    })
}

/// Thermal state with mean occupation `nbar0`, truncated (not renormalized).
pub fn thermal_state(nbar0: f64, dim: usize) -> Result<FockOperator> {
    if !(nbar0 >= 0.0) || !nbar0.is_finite() {
        return Err(Error::InvalidArgument("thermal occupation must be nonnegative"));
    }
    let ratio = nbar0 / (nbar0 + 1.0);
    let diag: Vec<Complex64> = (0..dim)
        .map(|n| Complex64::new(ratio.powi(n as i32) / (nbar0 + 1.0), 0.0))
        .collect();
    Ok(FockOperator::from_diagonal(&diag))
}

/// Number-basis amplitudes of the coherent state `|alpha⟩`.
pub fn coherent_vector(alpha: Complex64, dim: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(dim);
    let mut amp = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..dim {
        if n > 0 {
            amp = amp * alpha / (n as f64).sqrt();
        }
        out.push(amp);
    }
    out
}

/// Quadrature means and covariance of a (near-)normalized state.
pub fn moments(rho: &FockOperator) -> Result<(Quadratures, CovarianceMatrix)> {
    let (x, p) = quadrature_operators(rho.dim())?;
    let expect = |op: &FockOperator| rho.matmul(op).trace().re;
    let (mx, mp) = (expect(&x), expect(&p));
    let sxx = expect(&x.matmul(&x)) - mx * mx;
    let spp = expect(&p.matmul(&p)) - mp * mp;
    let sym = &x.matmul(&p) + &p.matmul(&x);
    let cxp = 0.5 * expect(&sym) - mx * mp;
    Ok((Quadratures::new(mx, mp), CovarianceMatrix::new(sxx, spp, cxp)))
}

/// Output states `ρ_α = D(ᾱ) ρ_r D(ᾱ)†` of a centered channel, with the
/// α-independent rotated squeezed thermal state `ρ_r` built once.
#[derive(Debug, Clone)]
pub struct OutputStateModel {
    dim: usize,
    gains: ComplexGains,
    rho_r: FockOperator,
    annihilation: FockOperator,
    creation: FockOperator,
}

impl OutputStateModel {
    pub fn new(ch: &GaussianChannel, dim: usize) -> Result<Self> {
        if !ch.is_centered() {
            return Err(Error::NonZeroNoiseMean);
        }
        let ellipse = ch.output_ellipse()?;
        let params = params_from_ellipse(&ellipse)?;
        let units = gaussian_unitaries(dim, Complex64::new(0.0, 0.0), params.r, ellipse.theta)?;
        let rho0 = thermal_state(params.nbar0, dim)?;
        let rho_r = rho0.conjugate_by(&units.rotation.matmul(&units.squeeze));
        let (annihilation, creation) = ladder_operators(dim)?;
        Ok(Self { dim, gains: complex_gains(&ch.gain), rho_r, annihilation, creation })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gains(&self) -> ComplexGains {
        self.gains
    }

    /// The rotated squeezed thermal state `R(θ)S(r)ρ0 S(r)†R(θ)†`.
    pub fn rotated_squeezed_thermal(&self) -> &FockOperator {
        &self.rho_r
    }

    pub fn ladder(&self) -> (&FockOperator, &FockOperator) {
        (&self.annihilation, &self.creation)
    }

    /// `E(|α⟩⟨α|)`.
    pub fn state(&self, alpha: Complex64) -> Result<FockOperator> {
        let alpha_bar = self.gains.apply(alpha);
        if alpha_bar == Complex64::new(0.0, 0.0) {
            return Ok(self.rho_r.clone());
        }
        let d = checked(displacement(self.dim, alpha_bar)?)?;
        Ok(self.rho_r.conjugate_by(&d))
    }
}

/// `E(|α⟩⟨α|)` for a centered channel on a `dim`-level truncation.
pub fn output_state(ch: &GaussianChannel, alpha: Complex64, dim: usize) -> Result<FockOperator> {
    OutputStateModel::new(ch, dim)?.state(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_dim_two() {
        let (a, adag) = ladder_operators(2).unwrap();
        assert_eq!(a[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(a[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(a[(1, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(adag[(1, 0)], Complex64::new(1.0, 0.0));
        assert!(ladder_operators(1).is_err());
    }

    #[test]
    fn truncated_commutator() {
        let dim = 12;
        let (a, adag) = ladder_operators(dim).unwrap();
        let c = a.commutator(&adag);
        for i in 0..dim {
            let expected = if i + 1 == dim { -((dim - 1) as f64) } else { 1.0 };
            assert!((c[(i, i)].re - expected).abs() < 1e-12, "entry {i}");
        }
        let number = adag.matmul(&a);
        assert!(number.max_abs_diff(&number_operator(dim)) < 1e-12);
    }

    #[test]
    fn unitaries_at_zero_are_identity() {
        let u = gaussian_unitaries(20, Complex64::new(0.0, 0.0), 0.0, 0.0).unwrap();
        let id = FockOperator::identity(20);
        assert!(u.displacement.max_abs_diff(&id) < 1e-15);
        assert!(u.squeeze.max_abs_diff(&id) < 1e-15);
        assert!(u.rotation.max_abs_diff(&id) < 1e-15);
    }

    #[test]
    fn rotation_is_number_phase() {
        let theta = 0.73;
        let r = rotation(16, theta);
        for n in 0..16 {
            let expected = Complex64::from_polar(1.0, n as f64 * theta);
            assert!((r[(n, n)] - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn small_truncation_is_rejected() {
        let err = gaussian_unitaries(12, Complex64::new(2.0, 0.0), 0.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::TruncationTooSmall { .. }));
    }

    #[test]
    fn thermal_populations() {
        let rho = thermal_state(0.0, 10).unwrap();
        assert_eq!(rho[(0, 0)].re, 1.0);
        assert_eq!(rho.trace().re, 1.0);
        let rho = thermal_state(1.0, 30).unwrap();
        assert_eq!(rho[(0, 0)].re, 0.5);
        assert_eq!(rho[(1, 1)].re, 0.25);
        let defect = 1.0 - rho.trace().re;
        assert!(defect <= 0.5_f64.powi(30) * (1.0 + 1e-9));
    }

    #[test]
    fn coherent_vector_matches_displaced_vacuum() {
        let alpha = Complex64::new(0.4, -0.3);
        let d = displacement(30, alpha).unwrap();
        let mut vac = alloc::vec![Complex64::new(0.0, 0.0); 30];
        vac[0] = Complex64::new(1.0, 0.0);
        let displaced = d.apply(&vac);
        let coherent = coherent_vector(alpha, 30);
        for n in 0..10 {
            assert!((displaced[n] - coherent[n]).norm() < 1e-13);
        }
    }
}
