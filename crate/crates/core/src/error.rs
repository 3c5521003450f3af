use crate::gaussian::PhysicalityReport;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("covariance matrix is not positive-definite")]
    NonPositiveCovariance,
    #[error("noise ellipse violates the uncertainty relation: sigma1^2 sigma2^2 = {product} < 1/4")]
    SubHeisenbergEllipse { product: f64 },
    #[error("invalid noise ellipse: {0}")]
    InvalidEllipse(&'static str),
    #[error("fidelity {value} lies outside [0, 1]; the channel is inconsistent")]
    NumericalInconsistency { value: f64 },
    #[error("unphysical parameters: {0}")]
    UnphysicalParameters(&'static str),
    #[error("channel is unphysical")]
    UnphysicalChannel(PhysicalityReport),
    #[error("noise mean must be subtracted before evaluating the fidelity")]
    NonZeroNoiseMean,
    #[error("Fock truncation too small: unitarity defect {defect:.3e} in the retained block")]
    TruncationTooSmall { defect: f64 },
    #[error("finite-difference step too large: Richardson discrepancy {discrepancy:.3e}")]
    StepTooLarge { discrepancy: f64 },
    #[error("quadrature not converged: doubling the points changed the result by {change:.3e}")]
    QuadratureNotConverged { change: f64 },
    #[error("probe set is degenerate (design condition number {condition:.3e})")]
    DegenerateProbeSet { condition: f64 },
    #[error("probe set has no vacuum (alpha = 0) record")]
    MissingVacuumProbe,
    #[error("negative noise variance estimate {value:.3e}")]
    NegativeVarianceEstimate { value: f64 },
    #[error("reconstructed channel is unphysical")]
    UnphysicalReconstruction(PhysicalityReport),
    #[error("classical benchmark unreachable: asymptotic fidelity {asymptote} >= 2/3")]
    BenchmarkUnreachable { asymptote: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
