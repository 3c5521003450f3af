//! Average fidelity of qubits encoded in the `|0⟩`/`|1⟩` Fock states of a
//! harmonic oscillator that is subjected to a single-mode Gaussian process.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised as follows:
//!
//! * [`gaussian`]: the channel data model (gain matrix, noise moments,
//!   noise ellipse, complex gains) and the physicality predicate.
//! * [`fidelity`]: the closed-form average qubit fidelity, its special cases
//!   and the phase-rotation optimum.
//! * [`fock`]: a brute-force verification engine on a truncated Fock space.
//! * [`tomography`]: reconstruction of a channel from coherent-probe moments.
//! * [`scenarios`]: heat-bath, symmetric and amplifier parameter sweeps.
//!
//! Quadratures follow `X = (a + a†)/√2`, `P = -i(a - a†)/√2`, so the vacuum
//! has variance ½. Covariances are stored as plain variances; the factor-2
//! `γ` convention is only available through explicit conversions.

#![no_std]

extern crate alloc;

mod error;
pub mod fidelity;
pub mod fock;
pub mod gaussian;
pub mod quadrature;
pub mod random;
pub mod roots;
pub mod scenarios;
pub mod tomography;

pub use error::{Error, Result};
pub use fidelity::{
    average_qubit_fidelity, fidelity_asymmetric_diagonal, fidelity_symmetric,
    noiseless_amplifier_fidelity, optimal_phase_rotation, params_from_ellipse,
    sts_matrix_elements, FidelityInputs, MatrixElementSet, PhaseOptimum, SqueezedThermalParams,
};
pub use gaussian::{
    check_physical, complex_gains, covariance_from_ellipse, ellipse_from_covariance,
    propagate_covariance, subtract_noise_mean, CenteredChannel, ComplexGains, CovarianceMatrix,
    GainMatrix, GaussianChannel, NoiseEllipse, PhysicalityReport, Quadratures,
};

/// Eigenvalues at or above `-PHYSICALITY_TOL` count as nonnegative.
pub const PHYSICALITY_TOL: f64 = 1e-10;

/// Best average fidelity of a measure-and-reprepare strategy on an unknown qubit.
pub const CLASSICAL_BENCHMARK: f64 = 2.0 / 3.0;
