//! Extended attenuator with an entangled ancilla: the vacuum on the
//! extension mode is replaced by half of a two-mode squeezed state whose
//! other half is handed to the receiver. Scanning its photon number can
//! only tighten the extended-attenuator bound.

use super::extended_attenuator_capacity;
use super::oracle::DEFAULT_MEAN_PHOTONS;
use crate::channels::{make_channel, tensor_with_identity, ChannelFamily, Side};
use crate::error::{domain, Result};
use crate::optimize::golden_section_min;
use crate::symplectic::{direct_sum, two_mode_squeezed_cov, CovarianceMatrix};

/// Settings of the one-dimensional search over the flag photon number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlagSearch {
    /// Search interval is `[0, max_flag_photons]`.
    pub max_flag_photons: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Probe energy of the thermal input.
    pub mean_photons: f64,
}

impl Default for FlagSearch {
    fn default() -> Self {
        Self {
            max_flag_photons: 5.0,
            tol: 1e-6,
            max_iter: 200,
            mean_photons: DEFAULT_MEAN_PHOTONS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangledFlagBound {
    /// Bits; never above the vacuum-ancilla capacity.
    pub value: f64,
    pub best_flag_photons: f64,
    /// Oracle improvement over the vacuum ancilla at the same probe energy (<= 0).
    pub improvement: f64,
}

/// Coherent information of `F_{eta,N} (x) I_B` on `rho_M (x) |tau'><tau'|_{A'B}`.
///
/// The environment sees `F_{1-eta,N}` applied to `rho_M (x) tau'_{A'}` since
/// mode `B` never meets it.
pub fn entangled_flag_coherent_info(eta: f64, n: f64, flag_photons: f64, m: f64) -> Result<f64> {
    let f = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta, n })?;
    let fc = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta: 1.0 - eta, n })?;
    let signal = CovarianceMatrix::thermal(m)?;

    let input = direct_sum(&signal, &two_mode_squeezed_cov(flag_photons)?);
    let output = tensor_with_identity(&f, 1, Side::Right).apply_cov(&input)?.entropy()?;

    let env_input = direct_sum(&signal, &CovarianceMatrix::thermal(flag_photons)?);
    let environment = fc.apply_cov(&env_input)?.entropy()?;
    Ok(output - environment)
}

/// Minimises the entangled-ancilla capacity over the flag photon number.
///
/// The reported value is the closed-form vacuum-ancilla capacity plus the
/// oracle's improvement over the vacuum ancilla, evaluated at one probe
/// energy so the finite-`M` bias cancels.
pub fn entangled_flag_attenuator_bound(eta: f64, n: f64, search: &FlagSearch) -> Result<EntangledFlagBound> {
    if !(eta > 0.5 && eta < 1.0) {
        return Err(domain(
            "eta",
            eta,
            "the extension is degradable only for eta in (1/2, 1)",
        ));
    }
    if !(search.max_flag_photons >= 0.0) {
        return Err(domain(
            "max_flag_photons",
            search.max_flag_photons,
            "search interval must be nonnegative",
        ));
    }
    let m = search.mean_photons;
    let baseline = entangled_flag_coherent_info(eta, n, 0.0, m)?;
    let mut failure = None;
    let best = golden_section_min(
        |t| match entangled_flag_coherent_info(eta, n, t, m) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        0.0,
        search.max_flag_photons,
        search.tol,
        search.max_iter,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let improvement = (best.value - baseline).min(0.0);
    let best_flag_photons = if improvement < 0.0 { best.x } else { 0.0 };
    Ok(EntangledFlagBound {
        value: extended_attenuator_capacity(eta, n) + improvement,
        best_flag_photons,
        improvement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vacuum_flag_recovers_closed_form() {
        for (eta, n) in [(0.6, 0.05), (0.95, 0.05), (0.8, 1.0)] {
            let v = entangled_flag_coherent_info(eta, n, 0.0, 1e6).unwrap();
            assert_abs_diff_eq!(v, extended_attenuator_capacity(eta, n), epsilon = 1e-4);
        }
    }

    #[test]
    fn pure_loss_is_flag_independent() {
        let eta: f64 = 0.8;
        let want = (eta / (1.0 - eta)).log2();
        for t in [0.0, 0.5, 2.0, 5.0] {
            let v = entangled_flag_coherent_info(eta, 0.0, t, 1e6).unwrap();
            assert_abs_diff_eq!(v, want, epsilon = 1e-4);
        }
    }

    #[test]
    fn search_never_exceeds_vacuum_flag() {
        let b = entangled_flag_attenuator_bound(0.95, 0.05, &FlagSearch::default()).unwrap();
        let closed = extended_attenuator_capacity(0.95, 0.05);
        assert!(b.value <= closed + 1e-9);
        assert!(closed - b.value <= 1e-2);
        assert!(entangled_flag_attenuator_bound(0.4, 0.05, &FlagSearch::default()).is_err());
    }
}
