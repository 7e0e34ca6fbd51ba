//! Data-processing bounds: write a phase-insensitive channel as an
//! amplifier followed by an attenuator (or the reverse) and bound its
//! capacity by the smaller of the two stages' best direct bounds.

use alloc::vec::Vec;

use super::{bounds_additive, bounds_amplifier, bounds_attenuator};
use crate::channels::{PhaseInsensitiveKind, PhaseInsensitiveParams};
use crate::error::{domain, Error, Result};
use crate::math;
use crate::optimize::golden_section_min;

/// Grid resolution used when callers have no preference.
pub const DEFAULT_GRID: usize = 200;
/// Upper end of the intermediate gain when feasibility does not cap it.
const MAX_INTERMEDIATE_GAIN: f64 = 1e3;
const FEASIBILITY_TOL: f64 = 1e-12;
const REFINE_TOL: f64 = 1e-10;
const REFINE_ITER: usize = 200;
/// A decomposition replaces the direct bound only if it is lower by more than this (bits).
const IMPROVEMENT_TOL: f64 = 1e-12;

/// Shape of a decomposition. Stages are listed in the order they act.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionForm {
    /// The target itself, bounded directly.
    Direct,
    /// Amplifier (or identity) first, attenuator second.
    AmplifierThenAttenuator,
    /// Attenuator first, amplifier second.
    AttenuatorThenAmplifier,
}

impl DecompositionForm {
    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionForm::Direct => "direct",
            DecompositionForm::AmplifierThenAttenuator => "amplifier-then-attenuator",
            DecompositionForm::AttenuatorThenAmplifier => "attenuator-then-amplifier",
        }
    }
}

/// Which stage receives only the minimum noise complete positivity allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseAllocation {
    MinimalFirst,
    MinimalSecond,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub form: DecompositionForm,
    pub allocation: Option<NoiseAllocation>,
    pub first: PhaseInsensitiveParams,
    pub second: Option<PhaseInsensitiveParams>,
    pub first_bound: f64,
    pub second_bound: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionBound {
    /// Bits.
    pub value: f64,
    pub witness: Decomposition,
}

/// Best direct upper bound (clamped, bits) on a phase-insensitive channel;
/// infinite for the identity.
pub fn direct_upper_bound(p: &PhaseInsensitiveParams) -> Result<f64> {
    match p.kind() {
        PhaseInsensitiveKind::Identity => Ok(f64::INFINITY),
        PhaseInsensitiveKind::Additive { beta } => Ok(bounds_additive(beta)?.combined()),
        PhaseInsensitiveKind::Amplifier { g, n } => Ok(bounds_amplifier(g, n)?.combined()),
        PhaseInsensitiveKind::Attenuator { eta, n } => Ok(bounds_attenuator(eta, n)?.combined()),
    }
}

/// Splits `target` at intermediate scaling `tau1`, returning the two stages
/// or `None` when the split is not CP for the chosen allocation.
fn split(
    target: &PhaseInsensitiveParams,
    tau1: f64,
    allocation: NoiseAllocation,
) -> Option<(PhaseInsensitiveParams, PhaseInsensitiveParams)> {
    let (tau, y) = (target.tau(), target.y());
    let tau2 = tau / tau1;
    let min1 = (1.0 - tau1).abs();
    let min2 = (1.0 - tau2).abs();
    let (y1, y2) = match allocation {
        NoiseAllocation::MinimalFirst => (min1, y - tau2 * min1),
        NoiseAllocation::MinimalSecond => ((y - min2) / tau2, min2),
    };
    if y1 < min1 - FEASIBILITY_TOL || y2 < min2 - FEASIBILITY_TOL {
        return None;
    }
    let first = PhaseInsensitiveParams::new(tau1, y1.max(min1)).ok()?;
    let second = PhaseInsensitiveParams::new(tau2, y2.max(min2)).ok()?;
    Some((first, second))
}

struct Candidate {
    value: f64,
    witness: Decomposition,
}

fn evaluate(
    target: &PhaseInsensitiveParams,
    form: DecompositionForm,
    allocation: NoiseAllocation,
    tau1: f64,
) -> Result<Option<Candidate>> {
    let Some((first, second)) = split(target, tau1, allocation) else {
        return Ok(None);
    };
    let b1 = direct_upper_bound(&first)?;
    let b2 = direct_upper_bound(&second)?;
    Ok(Some(Candidate {
        value: b1.min(b2),
        witness: Decomposition {
            form,
            allocation: Some(allocation),
            first,
            second: Some(second),
            first_bound: b1,
            second_bound: Some(b2),
        },
    }))
}

/// Interval of the first stage's scaling for a form.
fn first_stage_range(target: &PhaseInsensitiveParams, form: DecompositionForm) -> Option<(f64, f64)> {
    let (tau, y) = (target.tau(), target.y());
    match form {
        DecompositionForm::Direct => None,
        DecompositionForm::AmplifierThenAttenuator => {
            // feasible iff y >= 1 + tau - 2 tau / tau1
            let lo = tau.max(1.0);
            let slack = 1.0 + tau - y;
            let hi = if slack > 0.0 {
                (2.0 * tau / slack).min(MAX_INTERMEDIATE_GAIN * lo)
            } else {
                MAX_INTERMEDIATE_GAIN * lo
            };
            (hi >= lo).then_some((lo, hi))
        }
        DecompositionForm::AttenuatorThenAmplifier => {
            // feasible iff tau1 >= 2 tau / (y + 1 + tau)
            let hi = tau.min(1.0);
            let lo = 2.0 * tau / (y + 1.0 + tau);
            (hi >= lo).then_some((lo, hi))
        }
    }
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points < 2 || hi <= lo {
        return alloc::vec![lo];
    }
    let (a, b) = (math::ln(lo), math::ln(hi));
    (0..points)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == points - 1 {
                hi
            } else {
                math::exp(a + (b - a) * i as f64 / (points - 1) as f64)
            }
        })
        .collect()
}

/// Minimises the data-processing bound over all two-stage decompositions
/// of `target` (and the trivial one). Each form is scanned on a
/// `grid`-point logarithmic grid of the intermediate scaling, then the best
/// cell is refined by golden-section search.
pub fn combined_decomposition_bound(target: &PhaseInsensitiveParams, grid: usize) -> Result<DecompositionBound> {
    if grid < 2 {
        return Err(domain("grid", grid as f64, "need at least 2 grid points"));
    }
    let direct = direct_upper_bound(target)?;
    let mut best = Candidate {
        value: direct,
        witness: Decomposition {
            form: DecompositionForm::Direct,
            allocation: None,
            first: *target,
            second: None,
            first_bound: direct,
            second_bound: None,
        },
    };

    for form in [
        DecompositionForm::AmplifierThenAttenuator,
        DecompositionForm::AttenuatorThenAmplifier,
    ] {
        let Some((lo, hi)) = first_stage_range(target, form) else {
            continue;
        };
        let points = log_grid(lo, hi, grid);
        for allocation in [NoiseAllocation::MinimalFirst, NoiseAllocation::MinimalSecond] {
            let mut cell: Option<(usize, Candidate)> = None;
            for (i, &tau1) in points.iter().enumerate() {
                if let Some(c) = evaluate(target, form, allocation, tau1)? {
                    if cell.as_ref().is_none_or(|(_, b)| c.value < b.value) {
                        cell = Some((i, c));
                    }
                }
            }
            let Some((i, c)) = cell else { continue };
            let bracket_lo = points[i.saturating_sub(1)];
            let bracket_hi = points[(i + 1).min(points.len() - 1)];
            let mut refined = c;
            if bracket_hi > bracket_lo {
                let objective = |t: f64| {
                    evaluate(target, form, allocation, t)
                        .ok()
                        .flatten()
                        .map_or(f64::INFINITY, |c| c.value)
                };
                let m = golden_section_min(objective, bracket_lo, bracket_hi, REFINE_TOL * bracket_hi, REFINE_ITER);
                if m.value < refined.value {
                    if let Some(c) = evaluate(target, form, allocation, m.x)? {
                        refined = c;
                    }
                }
            }
            if refined.value < best.value - IMPROVEMENT_TOL {
                best = refined;
            }
        }
    }

    if !best.value.is_finite() && direct.is_finite() {
        return Err(Error::Infeasible);
    }
    Ok(DecompositionBound {
        value: best.value,
        witness: best.witness,
    })
}
