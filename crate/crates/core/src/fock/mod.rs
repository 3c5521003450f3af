//! Brute-force verification engine on a truncated Fock space.
//!
//! Output states of coherent inputs are built explicitly as
//! `D(ᾱ)R(θ)S(r)ρ₀S†R†D†` from matrix exponentials of the truncated
//! generators. The channel's action on the qubit operators `|n⟩⟨m|` then
//! follows by differentiating with respect to the coherent amplitude, and
//! the average fidelity is assembled from first principles.

mod matrix_elements;
mod operator;
mod qubit_map;
mod states;

pub use matrix_elements::{
    matrix_element_integral, matrix_element_quadrature, squeezed_coherent_amplitude, MAX_LEVEL,
    MIN_QUAD_POINTS, QUADRATURE_TOL,
};
pub use operator::FockOperator;
pub use qubit_map::{
    channel_on_qubit_basis, channel_on_qubit_basis_operators, fidelity_bruteforce,
    pointwise_qubit_fidelity, QubitMap, QubitState, RICHARDSON_TOL, STEP_RANGE,
};
pub use states::{
    coherent_vector, displacement, gaussian_unitaries, ladder_operators, moments,
    number_operator, output_state, quadrature_operators, rotation, squeeze, thermal_state,
    truncation_defect, GaussianUnitaries, OutputStateModel, UNITARITY_TOL,
};

/// Default truncation dimension.
pub const DEFAULT_DIM: usize = 40;

/// Top levels excluded when checking unitaries for truncation leakage.
pub const GUARD_LEVELS: usize = 8;

/// Levels whose matrix elements the qubit fidelity reads (`n ≤ 3`).
pub const PROBE_LEVELS: usize = 4;

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-3;
