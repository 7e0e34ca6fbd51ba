//! Closed-form quantum capacity bounds for the thermal attenuator, the
//! thermal amplifier and the additive Gaussian noise channel, plus the
//! numerical machinery that checks and combines them.
//!
//! Every upper bound here comes from a degradable extension or from
//! data processing, so it bounds the private capacity as well.

mod decomposition;
mod flag_search;
mod oracle;

use alloc::vec::Vec;
use core::f64::consts::LN_2;

pub use decomposition::{
    combined_decomposition_bound, direct_upper_bound, Decomposition, DecompositionBound, DecompositionForm,
    NoiseAllocation, DEFAULT_GRID,
};
pub use flag_search::{entangled_flag_attenuator_bound, entangled_flag_coherent_info, EntangledFlagBound, FlagSearch};
pub use oracle::{
    coherent_info_at, coherent_info_thermal, CoherentInfoEstimate, OracleStrategy, DEFAULT_MEAN_PHOTONS,
    DIVERGENCE_GAP, DIVERGENCE_MIN_PHOTONS,
};

use crate::error::{domain, Result};
use crate::math;
use crate::symplectic::h_clamped;

/// Names of the entries a [`BoundReport`] can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundName {
    Lower,
    Plob,
    AmPlob,
    Naj,
    Rosati,
    Extension,
    Combined,
}

impl BoundName {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::Lower => "lower",
            BoundName::Plob => "PLOB",
            BoundName::AmPlob => "AmPLOB",
            BoundName::Naj => "NAJ",
            BoundName::Rosati => "Rosati",
            BoundName::Extension => "extension",
            BoundName::Combined => "combined",
        }
    }

    /// Everything except the one-shot coherent-information lower bound.
    pub fn is_upper(self) -> bool {
        !matches!(self, BoundName::Lower)
    }
}

impl core::fmt::Display for BoundName {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One bound value. `raw` is `None` when the bound does not apply at
/// these parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub name: BoundName,
    pub raw: Option<f64>,
    pub note: &'static str,
}

impl BoundEntry {
    fn new(name: BoundName, raw: f64, note: &'static str) -> Self {
        Self {
            name,
            raw: Some(raw),
            note,
        }
    }

    fn inapplicable(name: BoundName, note: &'static str) -> Self {
        Self { name, raw: None, note }
    }

    pub fn applicable(&self) -> bool {
        self.raw.is_some()
    }

    /// `max(raw, 0)`; capacities are nonnegative.
    pub fn clamped(&self) -> Option<f64> {
        self.raw.map(|v| v.max(0.0))
    }
}

/// Channel a report was computed for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelParams {
    Additive { beta: f64 },
    Amplifier { g: f64, n: f64 },
    Attenuator { eta: f64, n: f64 },
}

impl ChannelParams {
    pub fn family_name(&self) -> &'static str {
        match self {
            ChannelParams::Additive { .. } => "additive",
            ChannelParams::Amplifier { .. } => "amplifier",
            ChannelParams::Attenuator { .. } => "attenuator",
        }
    }
}

/// Named bound values for one channel, in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub params: ChannelParams,
    entries: Vec<BoundEntry>,
    decomposition: Option<DecompositionBound>,
}

impl BoundReport {
    fn new(params: ChannelParams, mut entries: Vec<BoundEntry>) -> Self {
        let combined = entries
            .iter()
            .filter(|e| e.name.is_upper())
            .filter_map(|e| e.clamped())
            .fold(f64::INFINITY, f64::min);
        entries.push(BoundEntry::new(
            BoundName::Combined,
            combined,
            "minimum of the applicable upper bounds; bounds Q and P",
        ));
        Self {
            params,
            entries,
            decomposition: None,
        }
    }

    pub fn entries(&self) -> &[BoundEntry] {
        &self.entries
    }

    pub fn get(&self, name: BoundName) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Raw value of `name` if present and applicable.
    pub fn raw(&self, name: BoundName) -> Option<f64> {
        self.get(name).and_then(|e| e.raw)
    }

    /// Clamped value of `name` if present and applicable.
    pub fn clamped(&self, name: BoundName) -> Option<f64> {
        self.get(name).and_then(|e| e.clamped())
    }

    pub fn combined(&self) -> f64 {
        self.raw(BoundName::Combined)
            .expect("every report carries a combined entry")
    }

    pub fn lower(&self) -> f64 {
        self.clamped(BoundName::Lower).unwrap_or(0.0)
    }

    pub fn decomposition(&self) -> Option<&DecompositionBound> {
        self.decomposition.as_ref()
    }

    /// Lowers the combined entry with the best data-processing
    /// decomposition of the channel found on a `grid`-point search.
    pub fn with_decomposition(mut self, grid: usize) -> Result<Self> {
        let target = match self.params {
            ChannelParams::Additive { beta } => crate::channels::PhaseInsensitiveParams::additive(beta)?,
            ChannelParams::Amplifier { g, n } => crate::channels::PhaseInsensitiveParams::amplifier(g, n)?,
            ChannelParams::Attenuator { eta, n } => crate::channels::PhaseInsensitiveParams::attenuator(eta, n)?,
        };
        let found = combined_decomposition_bound(&target, grid)?;
        let combined = self.combined().min(found.value);
        if let Some(entry) = self.entries.iter_mut().find(|e| e.name == BoundName::Combined) {
            entry.raw = Some(combined);
            entry.note = "minimum over upper bounds and data-processing decompositions; bounds Q and P";
        }
        self.decomposition = Some(found);
        Ok(self)
    }
}

const INV_LN2: f64 = 1.0 / LN_2;

/// Data-processing bound through additive noise, `max(log2(beta - 1), 0)`.
/// The raw value for `beta <= 1` is reported as 0, where the bound is zero.
pub fn naj_bound(beta: f64) -> f64 {
    if beta > 1.0 {
        math::log2(beta - 1.0)
    } else {
        0.0
    }
}

/// `log2 beta - 1/ln 2 + 2 h(sqrt(1 + 1/beta^2))`, the capacity of the
/// flagged additive-noise channel.
pub fn flagged_additive_capacity(beta: f64) -> f64 {
    math::log2(beta) - INV_LN2 + 2.0 * h_clamped(math::sqrt(1.0 + 1.0 / (beta * beta)))
}

/// Capacity of the extended attenuator,
/// `log2(eta/(1-eta)) + h((1-eta)(2N+1) + eta) - h(eta(2N+1) + 1 - eta)`.
pub fn extended_attenuator_capacity(eta: f64, n: f64) -> f64 {
    let k = 2.0 * n + 1.0;
    math::log2(eta / (1.0 - eta)) + h_clamped((1.0 - eta) * k + eta) - h_clamped(eta * k + 1.0 - eta)
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(domain("beta", beta, "inverse temperature must be > 0"));
    }
    Ok(())
}

fn check_photons(n: f64) -> Result<()> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(domain("N", n, "mean photon number must be >= 0"));
    }
    Ok(())
}

/// Bounds for the additive Gaussian noise channel with inverse temperature `beta`.
pub fn bounds_additive(beta: f64) -> Result<BoundReport> {
    check_beta(beta)?;
    let log_beta = math::log2(beta);
    Ok(BoundReport::new(
        ChannelParams::Additive { beta },
        alloc::vec![
            BoundEntry::new(
                BoundName::Lower,
                log_beta - INV_LN2,
                "one-shot coherent information on an infinite-temperature input"
            ),
            BoundEntry::new(
                BoundName::Plob,
                log_beta - INV_LN2 + INV_LN2 / beta,
                "two-way capacity bound"
            ),
            BoundEntry::new(
                BoundName::Naj,
                naj_bound(beta),
                "data processing through additive noise"
            ),
            BoundEntry::new(
                BoundName::Extension,
                flagged_additive_capacity(beta),
                "capacity of the degradable flagged extension"
            ),
        ],
    ))
}

/// Bounds for the thermal amplifier with gain `g > 1` and `n` bath photons.
///
/// The flagged and NAJ entries use the split into a quantum-limited
/// amplifier followed by additive noise with `beta = 1/((g-1) N)`; they are
/// inapplicable at `N = 0`.
pub fn bounds_amplifier(g: f64, n: f64) -> Result<BoundReport> {
    if !(g > 1.0) || !g.is_finite() {
        return Err(domain("g", g, "gain must be > 1"));
    }
    check_photons(n)?;
    let h_bath = h_clamped(2.0 * n + 1.0);
    let log_ratio = math::log2(g) - math::log2(g - 1.0);
    let mut entries = alloc::vec![
        BoundEntry::new(
            BoundName::Lower,
            log_ratio - h_bath,
            "one-shot coherent information on an infinite-temperature input"
        ),
        BoundEntry::new(
            BoundName::AmPlob,
            (n + 1.0) * math::log2(g) - math::log2(g - 1.0) - h_bath,
            "two-way capacity bound for the amplifier"
        ),
    ];
    if n > 0.0 {
        let beta = 1.0 / ((g - 1.0) * n);
        entries.push(BoundEntry::new(
            BoundName::Naj,
            naj_bound(beta),
            "NAJ bound of the additive-noise factor",
        ));
        entries.push(BoundEntry::new(
            BoundName::Extension,
            flagged_additive_capacity(beta),
            "flagged-extension capacity of the additive-noise factor",
        ));
    } else {
        entries.push(BoundEntry::inapplicable(
            BoundName::Naj,
            "no additive-noise factor at N = 0",
        ));
        entries.push(BoundEntry::inapplicable(
            BoundName::Extension,
            "no additive-noise factor at N = 0",
        ));
    }
    Ok(BoundReport::new(ChannelParams::Amplifier { g, n }, entries))
}

/// Bounds for the thermal attenuator with transmissivity `eta` in (0, 1)
/// and `n` bath photons.
pub fn bounds_attenuator(eta: f64, n: f64) -> Result<BoundReport> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(domain("eta", eta, "transmissivity must lie in (0, 1)"));
    }
    check_photons(n)?;
    let h_bath = h_clamped(2.0 * n + 1.0);
    let log_ratio = math::log2(eta) - math::log2(1.0 - eta);
    let mut entries = alloc::vec![
        BoundEntry::new(
            BoundName::Lower,
            log_ratio - h_bath,
            "one-shot coherent information on an infinite-temperature input"
        ),
        BoundEntry::new(
            BoundName::Plob,
            -math::log2(1.0 - eta) - n * math::log2(eta) - h_bath,
            "two-way capacity bound"
        ),
    ];
    let effective = eta - n * (1.0 - eta);
    entries.push(if effective > 0.0 {
        BoundEntry::new(
            BoundName::Rosati,
            math::log2(effective) - math::log2((n + 1.0) * (1.0 - eta)),
            "pure-loss channel with transmissivity eta - N(1 - eta)",
        )
    } else {
        BoundEntry::inapplicable(BoundName::Rosati, "requires eta - N(1 - eta) > 0")
    });
    entries.push(if eta >= 0.5 {
        BoundEntry::new(
            BoundName::Extension,
            extended_attenuator_capacity(eta, n),
            "capacity of the degradable extended attenuator",
        )
    } else {
        BoundEntry::inapplicable(BoundName::Extension, "extension is degradable only for eta >= 1/2")
    });
    Ok(BoundReport::new(ChannelParams::Attenuator { eta, n }, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn additive_examples() {
        let r = bounds_additive(2.0).unwrap();
        assert_eq!(r.raw(BoundName::Naj), Some(0.0));
        assert_eq!(r.combined(), 0.0);

        let r = bounds_additive(core::f64::consts::E).unwrap();
        assert_abs_diff_eq!(r.raw(BoundName::Lower).unwrap(), 0.0, epsilon = 1e-15);

        let r = bounds_additive(4.0).unwrap();
        let ext = r.raw(BoundName::Extension).unwrap();
        let plob = r.raw(BoundName::Plob).unwrap();
        assert_abs_diff_eq!(ext, 0.7874, epsilon = 5e-5);
        assert_abs_diff_eq!(plob, 0.9180, epsilon = 5e-5);
        assert!(ext < plob);
        assert_abs_diff_eq!(r.combined(), ext.min(r.raw(BoundName::Naj).unwrap()));
    }

    #[test]
    fn additive_below_unit_beta() {
        let r = bounds_additive(0.5).unwrap();
        assert_eq!(r.raw(BoundName::Naj), Some(0.0));
        assert_eq!(r.combined(), 0.0);
        assert_eq!(r.lower(), 0.0);
        assert!(bounds_additive(0.0).is_err());
        assert!(bounds_additive(f64::NAN).is_err());
    }

    #[test]
    fn amplifier_examples() {
        let r = bounds_amplifier(2.0, 0.0).unwrap();
        assert_abs_diff_eq!(r.raw(BoundName::AmPlob).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.raw(BoundName::Lower).unwrap(), 1.0, epsilon = 1e-15);
        assert!(!r.get(BoundName::Naj).unwrap().applicable());
        assert!(!r.get(BoundName::Extension).unwrap().applicable());

        // (g - 1) N >= 1/2 puts beta_tilde <= 2
        for (g, n) in [(1.1, 5.0), (1.2, 3.0), (3.0, 0.25)] {
            let r = bounds_amplifier(g, n).unwrap();
            assert_eq!(r.clamped(BoundName::Naj), Some(0.0));
            assert_eq!(r.combined(), 0.0);
        }

        let r = bounds_amplifier(1.01, 10.0).unwrap();
        // beta_tilde = 1/(0.01 * 10) = 10 up to rounding of g - 1
        assert_abs_diff_eq!(r.raw(BoundName::Naj).unwrap(), 9.0_f64.log2(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            r.raw(BoundName::Extension).unwrap(),
            flagged_additive_capacity(10.0),
            epsilon = 1e-12
        );
        assert!(bounds_amplifier(1.0, 1.0).is_err());
    }

    #[test]
    fn attenuator_examples() {
        let r = bounds_attenuator(0.5, 0.1).unwrap();
        assert_abs_diff_eq!(r.raw(BoundName::Extension).unwrap(), 0.0, epsilon = 1e-15);

        for eta in [0.6, 0.8, 0.95] {
            let r = bounds_attenuator(eta, 0.0).unwrap();
            let want = (eta / (1.0 - eta)).log2();
            for name in [BoundName::Extension, BoundName::Rosati, BoundName::Lower] {
                assert_abs_diff_eq!(r.raw(name).unwrap(), want, epsilon = 1e-12);
            }
        }

        let r = bounds_attenuator(0.95, 0.05).unwrap();
        assert!(r.raw(BoundName::Extension).unwrap() < r.raw(BoundName::Plob).unwrap());

        let r = bounds_attenuator(0.3, 1.0).unwrap();
        assert!(!r.get(BoundName::Rosati).unwrap().applicable());
        assert!(!r.get(BoundName::Extension).unwrap().applicable());
        assert!(bounds_attenuator(1.0, 0.1).is_err());
        assert!(bounds_attenuator(0.0, 0.1).is_err());
    }

    #[test]
    fn extension_and_rosati_cross_once() {
        let n = 0.05;
        let mut sign_changes = 0;
        let mut prev: Option<bool> = None;
        let mut eta = 0.55;
        while eta < 0.995 {
            let r = bounds_attenuator(eta, n).unwrap();
            let diff = r.raw(BoundName::Extension).unwrap() - r.raw(BoundName::Rosati).unwrap();
            let s = diff > 0.0;
            if let Some(p) = prev {
                if p != s {
                    sign_changes += 1;
                }
            }
            prev = Some(s);
            eta += 0.0025;
        }
        assert_eq!(sign_changes, 1);
    }

    #[test]
    fn combined_is_min_of_upper_entries() {
        let r = bounds_attenuator(0.9, 0.2).unwrap();
        let min = r
            .entries()
            .iter()
            .filter(|e| e.name.is_upper() && e.name != BoundName::Combined)
            .filter_map(|e| e.clamped())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(r.combined(), min);
        assert!(r.lower() <= r.combined());
    }
}
