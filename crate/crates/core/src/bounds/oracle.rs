//! Coherent information of a channel on thermal inputs, computed from
//! covariance matrices. Approaches the capacity of the degradable
//! extensions as the input energy grows.

use alloc::vec::Vec;

use crate::channels::{tensor_with_identity, GaussianChannel, Side};
use crate::error::{domain, Error, Result};
use crate::symplectic::{direct_sum, two_mode_squeezed_cov, CovarianceMatrix, Matrix};

/// Probe energy used when none is given.
pub const DEFAULT_MEAN_PHOTONS: f64 = 1e6;
/// A gap above this at `M >= DIVERGENCE_MIN_PHOTONS` is reported as divergence.
pub const DIVERGENCE_GAP: f64 = 1e-2;
pub const DIVERGENCE_MIN_PHOTONS: f64 = 1e5;

/// How the environment entropy is obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleStrategy {
    /// Entropy of the given complementary channel's output.
    Complement(GaussianChannel),
    /// Entropy of `(channel (x) I)` applied to the purification of the input.
    PurifiedReference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentInfoEstimate {
    /// Bits.
    pub value: f64,
    pub mean_photons: f64,
    /// `|value(M) - value(M/10)|`.
    pub convergence_gap: f64,
}

fn thermal_input(modes: usize, m: f64) -> Result<CovarianceMatrix> {
    let one = CovarianceMatrix::thermal(m)?;
    Ok((0..modes).fold(CovarianceMatrix::empty(), |acc, _| direct_sum(&acc, &one)))
}

/// Purification of `rho_M^{(x) n}` ordered as (A1..An, R1..Rn).
fn purified_input(modes: usize, m: f64) -> Result<CovarianceMatrix> {
    let pair = two_mode_squeezed_cov(m)?;
    let pairs = (0..modes).fold(CovarianceMatrix::empty(), |acc, _| direct_sum(&acc, &pair));
    // pairs are (A1, R1, A2, R2, ...); move references to the back
    let order: Vec<usize> = (0..modes).map(|k| 2 * k).chain((0..modes).map(|k| 2 * k + 1)).collect();
    let dim = 4 * modes;
    let mut perm = Matrix::zeros(dim, dim);
    for (to, &from) in order.iter().enumerate() {
        perm[(2 * to, 2 * from)] = 1.0;
        perm[(2 * to + 1, 2 * from + 1)] = 1.0;
    }
    pairs.transformed(&perm)
}

/// Coherent information at a single probe energy `m` (thermal photons per input mode).
pub fn coherent_info_at(channel: &GaussianChannel, strategy: &OracleStrategy, m: f64) -> Result<f64> {
    let input = thermal_input(channel.n_in(), m)?;
    let output = channel.apply_cov(&input)?.entropy()?;
    let environment = match strategy {
        OracleStrategy::Complement(comp) => {
            if comp.n_in() != channel.n_in() {
                return Err(Error::DimensionMismatch {
                    expected: channel.n_in(),
                    found: comp.n_in(),
                });
            }
            comp.apply_cov(&input)?.entropy()?
        }
        OracleStrategy::PurifiedReference => {
            let joint = tensor_with_identity(channel, channel.n_in(), Side::Right);
            joint.apply_cov(&purified_input(channel.n_in(), m)?)?.entropy()?
        }
    };
    Ok(output - environment)
}

/// Coherent information of `channel` on the thermal state with `m` photons
/// per input mode, with a convergence gap from a second evaluation at `m/10`.
pub fn coherent_info_thermal(
    channel: &GaussianChannel,
    strategy: &OracleStrategy,
    m: f64,
) -> Result<CoherentInfoEstimate> {
    if !(m >= 1.0) || !m.is_finite() {
        return Err(domain("M", m, "probe photon number must be >= 1"));
    }
    let value = coherent_info_at(channel, strategy, m)?;
    let coarse = coherent_info_at(channel, strategy, m / 10.0)?;
    let gap = (value - coarse).abs();
    if m >= DIVERGENCE_MIN_PHOTONS && gap > DIVERGENCE_GAP {
        return Err(Error::Diverged { gap, mean_photons: m });
    }
    Ok(CoherentInfoEstimate {
        value,
        mean_photons: m,
        convergence_gap: gap,
    })
}
