//! Numerical certificates for the structural facts the bounds rely on.
//!
//! Every check returns a [`CheckOutcome`]; randomised checks draw from a
//! ChaCha stream derived from the suite seed and the check's position in
//! [`SUITE`], so each outcome is reproducible on its own.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::{
    compose, flag_mixing_matrix, flag_vacuum_cov, make_channel, tensor_with_identity, ChannelFamily, GaussianChannel,
    Side,
};
use crate::error::Result;
use crate::math;
use crate::symplectic::{
    block_diag, gauge_rotation, max_abs, two_mode_squeezed_cov, CovarianceMatrix, GaugePattern, GaussianState, Matrix,
    Vector,
};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 20_240_917;

pub const DEGRADABILITY_TOL: f64 = 1e-12;
pub const FLAG_CONDITION_TOL: f64 = 1e-12;
pub const GAUGE_TOL: f64 = 1e-10;
pub const REPRESENTATION_TOL: f64 = 1e-12;
pub const UNIT_EIGENVALUE_TOL: f64 = 1e-8;

/// Probe energies used by the asymptotic checks.
pub const M_LADDER: [f64; 4] = [1e3, 1e4, 1e5, 1e6];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    /// `max_residual <= tolerance`; always false when not applicable.
    pub passed: bool,
    /// False when the parameters fall outside the regime the check certifies.
    pub applicable: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub details: String,
}

impl CheckOutcome {
    fn new(name: String, max_residual: f64, tolerance: f64, samples: usize, details: String) -> Self {
        Self {
            name,
            passed: max_residual <= tolerance,
            applicable: true,
            max_residual,
            tolerance,
            samples,
            details,
        }
    }

    fn not_applicable(name: String, details: String) -> Self {
        Self {
            name,
            passed: false,
            applicable: false,
            max_residual: f64::NAN,
            tolerance: f64::NAN,
            samples: 0,
            details,
        }
    }

    fn errored(name: String, tolerance: f64, err: crate::Error) -> Self {
        Self {
            name,
            passed: false,
            applicable: true,
            max_residual: f64::INFINITY,
            tolerance,
            samples: 0,
            details: format!("error: {err}"),
        }
    }
}

fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

fn vec_abs_diff(a: &Vector, b: &Vector) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

fn channel_residual(a: &GaussianChannel, b: &GaussianChannel) -> f64 {
    max_abs_diff(a.x(), b.x()).max(max_abs_diff(a.y(), b.y()))
}

/// `F_{(1-eta)/eta, N} o F_{eta, N} = F_{1-eta, N}` for the two-mode extended attenuator.
pub fn check_extended_attenuator_degradability(eta: f64, n: f64) -> CheckOutcome {
    let name = format!("degradability/extended-attenuator(eta={eta},N={n})");
    if !(eta > 0.5 && eta < 1.0) {
        return CheckOutcome::not_applicable(
            name,
            format!(
                "degrading stage (1-eta)/eta = {} is not an attenuator",
                (1.0 - eta) / eta
            ),
        );
    }
    match degradability_residual(eta, n) {
        Ok(r) => CheckOutcome::new(name, r, DEGRADABILITY_TOL, 1, String::from("degrading stage is CP")),
        Err(e) => CheckOutcome::errored(name, DEGRADABILITY_TOL, e),
    }
}

fn degradability_residual(eta: f64, n: f64) -> Result<f64> {
    let forward = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta, n })?;
    // make_channel certifies complete positivity of the degrading stage
    let degrading = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode {
        eta: (1.0 - eta) / eta,
        n,
    })?;
    let target = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta: 1.0 - eta, n })?;
    Ok(channel_residual(&compose(&degrading, &forward)?, &target))
}

/// Degradability over `samples` random `(eta, N)` with `eta in (1/2, 1)`, `N in [0, 5]`.
pub fn check_degradability_sweep<R: Rng>(samples: usize, rng: &mut R) -> CheckOutcome {
    let name = String::from("degradability/extended-attenuator");
    let mut worst = 0.0f64;
    let mut at = (f64::NAN, f64::NAN);
    for _ in 0..samples {
        let eta = rng.random_range(0.5..1.0);
        let n = rng.random_range(0.0..=5.0);
        if eta <= 0.5 {
            continue;
        }
        match degradability_residual(eta, n) {
            Ok(r) if r >= worst => {
                worst = r;
                at = (eta, n);
            }
            Ok(_) => {}
            Err(e) => return CheckOutcome::errored(name, DEGRADABILITY_TOL, e),
        }
    }
    CheckOutcome::new(
        name,
        worst,
        DEGRADABILITY_TOL,
        samples,
        format!("worst at eta={:.6}, N={:.6}", at.0, at.1),
    )
}

/// `<gamma r'|phi_r>` as (modulus, phase).
fn flag_overlap(beta: f64, gamma: f64, at: (f64, f64), r: (f64, f64)) -> (f64, f64) {
    let (xp, pp) = at;
    let (x, p) = r;
    let modulus = math::sqrt(beta / (2.0 * PI)) * math::exp(-beta * gamma * gamma * (xp * xp + pp * pp) / 4.0);
    (modulus, -gamma * (pp * x - xp * p) / 2.0)
}

/// Residual of the scalar flag identity at one pair `(r, r')`.
pub fn flag_condition_residual(beta: f64, gamma: f64, r: (f64, f64), rp: (f64, f64)) -> f64 {
    let (x, p) = r;
    let (xp, pp) = rp;
    // D_{r'} D_r = D_r D_{r'} exp(-i r'^T Omega r)
    let reorder = xp * p - pp * x;

    let (ml, pl) = flag_overlap(beta, gamma, rp, r);
    let ml = ml * math::exp(-beta * (x * x + p * p) / 4.0);
    let pl = pl - reorder;

    let (mr, pr) = flag_overlap(beta, gamma, r, rp);
    let mr = mr * math::exp(-beta * (xp * xp + pp * pp) / 4.0);

    let re = ml * math::cos(pl) - mr * math::cos(pr);
    let im = ml * math::sin(pl) - mr * math::sin(pr);
    math::sqrt(re * re + im * im)
}

/// Scalar form of the flag condition on `samples` random pairs with
/// components in `[-2, 2]` and `beta` drawn from `betas`.
pub fn check_flag_condition<R: Rng>(
    betas: RangeInclusive<f64>,
    samples: usize,
    gamma: f64,
    rng: &mut R,
) -> CheckOutcome {
    let name = format!("flag-condition/gamma={gamma}");
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let beta = rng.random_range(betas.clone());
        let r = (rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0));
        let rp = (rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0));
        worst = worst.max(flag_condition_residual(beta, gamma, r, rp));
    }
    CheckOutcome::new(
        name,
        worst,
        FLAG_CONDITION_TOL,
        samples,
        format!("beta in [{}, {}]", betas.start(), betas.end()),
    )
}

/// Channels with a generalised gauge covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaugeFamily {
    FlaggedAdditive { beta: f64 },
    ExtendedAttenuator { eta: f64, n: f64 },
}

impl GaugeFamily {
    fn label(&self) -> String {
        match self {
            GaugeFamily::FlaggedAdditive { beta } => format!("flagged-additive(beta={beta})"),
            GaugeFamily::ExtendedAttenuator { eta, n } => format!("extended-attenuator(eta={eta},N={n})"),
        }
    }
}

fn random_one_mode_state<R: Rng>(rng: &mut R) -> Result<GaussianState> {
    let n = rng.random_range(0.0..=3.0);
    let s = math::exp(rng.random_range(-1.0..=1.0));
    let phi = rng.random_range(0.0..PI);
    let rot = gauge_rotation(phi, GaugePattern::Single);
    let diag = Matrix::from_row_slice(2, 2, &[s, 0.0, 0.0, 1.0 / s]);
    let v = &rot * diag * rot.transpose() * (2.0 * n + 1.0);
    let mean = Vector::from_vec(alloc::vec![rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0)]);
    GaussianState::new(mean, CovarianceMatrix::new(v)?)
}

/// `Lambda[R rho R^dag] = R' Lambda[rho] R'^dag` on covariances and means,
/// relative to `max(1, max |V|)`.
pub fn check_gauge_covariance<R: Rng>(
    family: GaugeFamily,
    theta_samples: usize,
    state_samples: usize,
    rng: &mut R,
) -> CheckOutcome {
    let name = format!("gauge-covariance/{}", family.label());
    match gauge_residual(family, theta_samples, state_samples, rng) {
        Ok(r) => CheckOutcome::new(name, r, GAUGE_TOL, theta_samples * state_samples, String::new()),
        Err(e) => CheckOutcome::errored(name, GAUGE_TOL, e),
    }
}

fn gauge_residual<R: Rng>(family: GaugeFamily, thetas: usize, states: usize, rng: &mut R) -> Result<f64> {
    let (channel, pattern) = match family {
        GaugeFamily::FlaggedAdditive { beta } => (
            make_channel(ChannelFamily::FlaggedAdditive { beta })?,
            GaugePattern::Flagged,
        ),
        GaugeFamily::ExtendedAttenuator { eta, n } => (
            make_channel(ChannelFamily::ExtendedAttenuator { eta, n })?,
            GaugePattern::ExtendedAttenuator,
        ),
    };
    let mut worst = 0.0f64;
    for _ in 0..thetas {
        let theta = rng.random_range(0.0..2.0 * PI);
        let r_in = gauge_rotation(theta, GaugePattern::Single);
        let r_out = gauge_rotation(theta, pattern);
        for _ in 0..states {
            let state = random_one_mode_state(rng)?;
            let lhs = channel.apply(&state.transformed(&r_in)?)?;
            let rhs = channel.apply(&state)?.transformed(&r_out)?;
            let scale = max_abs(rhs.cov().entries()).max(1.0);
            let r = max_abs_diff(lhs.cov().entries(), rhs.cov().entries()).max(vec_abs_diff(lhs.mean(), rhs.mean()));
            worst = worst.max(r / scale);
        }
    }
    Ok(worst)
}

/// Output covariance of the flagged additive-noise channel on a thermal
/// input with `m` photons, written out entry by entry.
pub fn flagged_output_cov(beta: f64, m: f64) -> Matrix {
    let s = 2.0 * m + 1.0 + 2.0 / beta;
    let a = 2.0 / beta;
    let b = 1.0 / beta;
    let c = beta / 2.0 + 1.0 / (2.0 * beta);
    #[rustfmt::skip]
    let v = Matrix::from_row_slice(6, 6, &[
        s,   0.0, 0.0, 0.0, 0.0, -b,
        0.0, s,   0.0, b,   0.0, 0.0,
        0.0, 0.0, a,   0.0, 0.0, 0.0,
        0.0, b,   0.0, c,   0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, a,   0.0,
        -b,  0.0, 0.0, 0.0, 0.0, c,
    ]);
    v
}

/// Joint covariance of flagged output and reference when the input is
/// half of a two-mode squeezed state with `m` photons.
pub fn flagged_purified_output_cov(beta: f64, m: f64) -> Matrix {
    let mut v = Matrix::zeros(8, 8);
    v.view_mut((0, 0), (6, 6)).copy_from(&flagged_output_cov(beta, m));
    let t = 2.0 * math::sqrt(m * (m + 1.0));
    v[(6, 6)] = 2.0 * m + 1.0;
    v[(7, 7)] = 2.0 * m + 1.0;
    v[(0, 6)] = t;
    v[(6, 0)] = t;
    v[(1, 7)] = -t;
    v[(7, 1)] = -t;
    v
}

/// Output covariance of the extended attenuator on a thermal input with `m` photons.
pub fn extended_attenuator_output_cov(eta: f64, n: f64, m: f64) -> Matrix {
    let s = eta * (2.0 * m + 1.0) + (1.0 - eta) * (2.0 * n + 1.0);
    let a = eta + (1.0 - eta) * (2.0 * n + 1.0);
    let c = (1.0 - eta) * 2.0 * math::sqrt(n * (n + 1.0));
    #[rustfmt::skip]
    let v = Matrix::from_row_slice(4, 4, &[
        s,   0.0, c,   0.0,
        0.0, s,   0.0, -c,
        c,   0.0, a,   0.0,
        0.0, -c,  0.0, a,
    ]);
    v
}

/// The flagged channel is the squeezed flags appended to the input followed
/// by classical mixing with the 6x6 covariance; the output on a thermal
/// input with `m` photons matches [`flagged_output_cov`].
pub fn check_classical_mixing_representation(beta: f64, m: f64) -> CheckOutcome {
    let name = format!("classical-mixing/beta={beta},M={m}");
    match mixing_residual(beta, m) {
        Ok((r, details)) => CheckOutcome::new(name, r, REPRESENTATION_TOL, 1, details),
        Err(e) => CheckOutcome::errored(name, REPRESENTATION_TOL, e),
    }
}

fn mixing_residual(beta: f64, m: f64) -> Result<(f64, String)> {
    let flagged = make_channel(ChannelFamily::FlaggedAdditive { beta })?;

    let mut x = Matrix::zeros(6, 2);
    x.view_mut((0, 0), (2, 2)).copy_from(&Matrix::identity(2, 2));
    let append = GaussianChannel::new(x, block_diag(&Matrix::zeros(2, 2), flag_vacuum_cov(beta).entries()))?;
    // make_channel rejects a mixing covariance that is not PSD
    let y6 = flag_mixing_matrix(beta);
    let mixing = make_channel(ChannelFamily::ClassicalMixing { y: y6.clone() })?;
    let composed = compose(&mixing, &append)?;
    let structural = channel_residual(&composed, &flagged);
    let asymmetry = max_abs_diff(&y6, &y6.transpose());

    let out = flagged.apply_cov(&CovarianceMatrix::thermal(m)?)?;
    let entries = max_abs_diff(out.entries(), &flagged_output_cov(beta, m));
    Ok((
        structural.max(asymmetry).max(entries),
        format!("structure {structural:.1e}, output {entries:.1e}"),
    ))
}

/// Flagged channel tensored with the identity on the purification of a
/// thermal state reproduces [`flagged_purified_output_cov`].
pub fn check_purified_flag_covariance(beta: f64, m: f64) -> CheckOutcome {
    let name = format!("purified-covariance/beta={beta},M={m}");
    let run = || -> Result<f64> {
        let flagged = make_channel(ChannelFamily::FlaggedAdditive { beta })?;
        let joint = tensor_with_identity(&flagged, 1, Side::Right);
        let out = joint.apply_cov(&two_mode_squeezed_cov(m)?)?;
        Ok(max_abs_diff(out.entries(), &flagged_purified_output_cov(beta, m)))
    };
    match run() {
        Ok(r) => CheckOutcome::new(name, r, REPRESENTATION_TOL, 1, String::new()),
        Err(e) => CheckOutcome::errored(name, REPRESENTATION_TOL, e),
    }
}

/// Extended attenuator on a thermal input reproduces [`extended_attenuator_output_cov`].
pub fn check_extended_attenuator_covariance(eta: f64, n: f64, m: f64) -> CheckOutcome {
    let name = format!("attenuator-covariance/eta={eta},N={n},M={m}");
    let run = || -> Result<f64> {
        let ch = make_channel(ChannelFamily::ExtendedAttenuator { eta, n })?;
        let out = ch.apply_cov(&CovarianceMatrix::thermal(m)?)?;
        Ok(max_abs_diff(out.entries(), &extended_attenuator_output_cov(eta, n, m)))
    };
    match run() {
        Ok(r) => CheckOutcome::new(name, r, REPRESENTATION_TOL, 1, String::new()),
        Err(e) => CheckOutcome::errored(name, REPRESENTATION_TOL, e),
    }
}

/// Spectra whose largest symplectic eigenvalue grows like `c M^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticCase {
    /// Flagged output on `rho_M`: `2 M`.
    Flagged { beta: f64 },
    /// Flagged output with the reference: `2 sqrt(M / beta)`.
    FlaggedPurified { beta: f64 },
    /// Extended attenuator output on `rho_M`: `2 eta M`.
    ExtendedAttenuator { eta: f64, n: f64 },
}

impl AsymptoticCase {
    fn label(&self) -> String {
        match self {
            AsymptoticCase::Flagged { beta } => format!("flagged(beta={beta})"),
            AsymptoticCase::FlaggedPurified { beta } => format!("flagged-purified(beta={beta})"),
            AsymptoticCase::ExtendedAttenuator { eta, n } => format!("extended-attenuator(eta={eta},N={n})"),
        }
    }

    /// (coefficient, power of M).
    fn leading(&self) -> (f64, f64) {
        match *self {
            AsymptoticCase::Flagged { .. } => (2.0, 1.0),
            AsymptoticCase::FlaggedPurified { beta } => (2.0 / math::sqrt(beta), 0.5),
            AsymptoticCase::ExtendedAttenuator { eta, .. } => (2.0 * eta, 1.0),
        }
    }

    fn cov(&self, m: f64) -> Result<CovarianceMatrix> {
        match *self {
            AsymptoticCase::Flagged { beta } => {
                make_channel(ChannelFamily::FlaggedAdditive { beta })?.apply_cov(&CovarianceMatrix::thermal(m)?)
            }
            AsymptoticCase::FlaggedPurified { beta } => {
                let ch = make_channel(ChannelFamily::FlaggedAdditive { beta })?;
                tensor_with_identity(&ch, 1, Side::Right).apply_cov(&two_mode_squeezed_cov(m)?)
            }
            AsymptoticCase::ExtendedAttenuator { eta, n } => {
                make_channel(ChannelFamily::ExtendedAttenuator { eta, n })?.apply_cov(&CovarianceMatrix::thermal(m)?)
            }
        }
    }
}

fn powm(m: f64, p: f64) -> f64 {
    if p == 1.0 {
        m
    } else {
        math::sqrt(m)
    }
}

/// Leading coefficient from the two largest rungs of `ladder` (the
/// constant term cancels), compared with the expected one. Tolerance is
/// `10 / M_max` relative.
pub fn check_spectrum_asymptotics(case: AsymptoticCase, ladder: &[f64]) -> CheckOutcome {
    let name = format!("spectrum-asymptotics/{}", case.label());
    let m_max = ladder.iter().fold(0.0f64, |a, &b| a.max(b));
    let tol = 10.0 / m_max;
    if ladder.len() < 2 || ladder.windows(2).any(|w| !(w[1] > w[0])) {
        return CheckOutcome::not_applicable(name, String::from("ladder must be increasing with >= 2 rungs"));
    }
    let run = || -> Result<(f64, f64)> {
        let (coeff, p) = case.leading();
        let k = ladder.len();
        let (m0, m1) = (ladder[k - 2], ladder[k - 1]);
        let top = |m: f64| -> Result<f64> { Ok(case.cov(m)?.spectrum()?.largest().unwrap_or(0.0)) };
        let fitted = (top(m1)? - top(m0)?) / (powm(m1, p) - powm(m0, p));
        Ok((fitted, (fitted / coeff - 1.0).abs()))
    };
    match run() {
        Ok((fitted, r)) => CheckOutcome::new(
            name,
            r,
            tol,
            ladder.len(),
            format!("fitted leading coefficient {fitted:.9}"),
        ),
        Err(e) => CheckOutcome::errored(name, tol, e),
    }
}

/// The flagged output together with the reference keeps two symplectic
/// eigenvalues equal to 1 at every rung of `ladder`.
pub fn check_purified_unit_eigenvalues(beta: f64, ladder: &[f64]) -> CheckOutcome {
    let name = format!("unit-eigenvalues/flagged-purified(beta={beta})");
    let case = AsymptoticCase::FlaggedPurified { beta };
    let run = || -> Result<f64> {
        let mut worst = 0.0f64;
        for &m in ladder {
            let spec = case.cov(m)?.spectrum()?;
            let vals = spec.values();
            // two smallest, sorted descending
            for &d in &vals[vals.len().saturating_sub(2)..] {
                worst = worst.max((d - 1.0).abs());
            }
        }
        Ok(worst)
    };
    match run() {
        Ok(r) => CheckOutcome::new(name, r, UNIT_EIGENVALUE_TOL, ladder.len(), String::new()),
        Err(e) => CheckOutcome::errored(name, UNIT_EIGENVALUE_TOL, e),
    }
}

/// Settings of the default suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Rescaling factor tried in the flag condition; 1 is the solution.
    pub gamma: f64,
    pub flag_samples: usize,
    pub degradability_samples: usize,
    pub gauge_theta_samples: usize,
    pub gauge_state_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            gamma: 1.0,
            flag_samples: 1000,
            degradability_samples: 50,
            gauge_theta_samples: 20,
            gauge_state_samples: 5,
        }
    }
}

/// Checks of the default suite, listed in name order.
pub const SUITE: [&str; 12] = [
    "attenuator-covariance",
    "classical-mixing/beta=1",
    "classical-mixing/beta=2",
    "degradability",
    "flag-condition",
    "gauge-covariance/extended-attenuator",
    "gauge-covariance/flagged-additive",
    "purified-covariance",
    "spectrum-asymptotics/extended-attenuator",
    "spectrum-asymptotics/flagged",
    "spectrum-asymptotics/flagged-purified",
    "unit-eigenvalues",
];

fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Runs one suite entry by its [`SUITE`] key; `None` for unknown keys.
pub fn run_check(key: &str, config: &SuiteConfig) -> Option<CheckOutcome> {
    let index = SUITE.iter().position(|&k| k == key)?;
    let mut rng = stream(config.seed, index);
    let outcome = match key {
        "attenuator-covariance" => check_extended_attenuator_covariance(0.7, 0.05, 3.0),
        "classical-mixing/beta=1" => check_classical_mixing_representation(1.0, 1.0),
        "classical-mixing/beta=2" => check_classical_mixing_representation(2.0, 3.0),
        "degradability" => check_degradability_sweep(config.degradability_samples, &mut rng),
        "flag-condition" => check_flag_condition(0.5..=5.0, config.flag_samples, config.gamma, &mut rng),
        "gauge-covariance/extended-attenuator" => check_gauge_covariance(
            GaugeFamily::ExtendedAttenuator { eta: 0.7, n: 0.5 },
            config.gauge_theta_samples,
            config.gauge_state_samples,
            &mut rng,
        ),
        "gauge-covariance/flagged-additive" => check_gauge_covariance(
            GaugeFamily::FlaggedAdditive { beta: 1.0 },
            config.gauge_theta_samples,
            config.gauge_state_samples,
            &mut rng,
        ),
        "purified-covariance" => check_purified_flag_covariance(1.0, 2.0),
        "spectrum-asymptotics/extended-attenuator" => {
            check_spectrum_asymptotics(AsymptoticCase::ExtendedAttenuator { eta: 0.8, n: 0.05 }, &M_LADDER)
        }
        "spectrum-asymptotics/flagged" => check_spectrum_asymptotics(AsymptoticCase::Flagged { beta: 1.0 }, &M_LADDER),
        "spectrum-asymptotics/flagged-purified" => {
            check_spectrum_asymptotics(AsymptoticCase::FlaggedPurified { beta: 1.0 }, &M_LADDER)
        }
        "unit-eigenvalues" => check_purified_unit_eigenvalues(1.0, &M_LADDER),
        _ => return None,
    };
    Some(outcome)
}

/// Runs the whole suite; outcomes are sorted by name.
pub fn run_suite(config: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut out: Vec<CheckOutcome> = SUITE.iter().filter_map(|k| run_check(k, config)).collect();
    sort_outcomes(&mut out);
    out
}

/// Deterministic report order.
pub fn sort_outcomes(outcomes: &mut [CheckOutcome]) {
    outcomes.sort_by(|a, b| a.name.cmp(&b.name));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        for o in run_suite(&SuiteConfig::default()) {
            assert!(o.passed, "{o:?}");
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let c = SuiteConfig::default();
        assert_eq!(run_suite(&c), run_suite(&c));
    }

    #[test]
    fn wrong_gamma_fails_clearly() {
        for gamma in [0.5, 2.0] {
            let o = run_check(
                "flag-condition",
                &SuiteConfig {
                    gamma,
                    ..SuiteConfig::default()
                },
            )
            .unwrap();
            assert!(!o.passed);
            assert!(o.max_residual > 0.1, "{o:?}");
        }
        let mut rng = stream(1, 0);
        assert!(!check_flag_condition(2.0..=2.0, 100, 2.0, &mut rng).passed);
    }

    #[test]
    fn equal_points_satisfy_any_gamma() {
        for gamma in [0.5, 1.0, 2.0, 3.7] {
            assert!(flag_condition_residual(2.0, gamma, (0.3, -1.1), (0.3, -1.1)) < 1e-15);
        }
    }

    #[test]
    fn degradability_regimes() {
        assert!(check_extended_attenuator_degradability(0.8, 0.05).passed);
        assert!(check_extended_attenuator_degradability(0.51, 2.0).passed);
        let o = check_extended_attenuator_degradability(0.4, 0.05);
        assert!(!o.applicable && !o.passed);
    }

    #[test]
    fn zero_angle_is_exact() {
        let mut rng = stream(3, 0);
        let ch = make_channel(ChannelFamily::FlaggedAdditive { beta: 1.0 }).unwrap();
        let state = random_one_mode_state(&mut rng).unwrap();
        let r = gauge_rotation(0.0, GaugePattern::Flagged);
        let out = ch.apply(&state).unwrap();
        assert_eq!(out.transformed(&r).unwrap().cov(), out.cov());
    }

    #[test]
    fn unknown_key() {
        assert!(run_check("nope", &SuiteConfig::default()).is_none());
    }
}
