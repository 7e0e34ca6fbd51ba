use thiserror::Error;

/// Errors raised by the Gaussian-state and channel algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NonSymmetric { asymmetry: f64 },

    #[error("expected an even square matrix, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },

    #[error("eigenvalues of Omega*V do not pair into +/- i*d (residual {residual:e})")]
    PairingFailure { residual: f64 },

    #[error("covariance matrix is unphysical (smallest symplectic eigenvalue {min_eigenvalue})")]
    Unphysical { min_eigenvalue: f64 },

    #[error("parameter {name} = {value} out of domain: {reason}")]
    ParamDomain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected} modes, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("channel is not completely positive (min eigenvalue of CP form {min_eigenvalue:e})")]
    CpViolation { min_eigenvalue: f64 },

    #[error("channel is not phase-insensitive")]
    NotPhaseInsensitive,

    #[error("no closed-form complementary channel is known for this family")]
    NoKnownComplement,

    #[error("coherent-information estimate did not converge (gap {gap:e} at M = {mean_photons})")]
    Diverged { gap: f64, mean_photons: f64 },

    #[error("no CP-valid decomposition found on the search grid")]
    Infeasible,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::ParamDomain { name, value, reason }
}
