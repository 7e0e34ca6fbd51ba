//! Gaussian channels as affine moment maps `m -> X m`, `V -> X V X^T + Y`.

use nalgebra::SymmetricEigen;

use crate::error::{domain, Error, Result};
use crate::math;
use crate::symplectic::{block_diag, max_abs, omega, two_mode_squeezed_cov, CovarianceMatrix, GaussianState, Matrix};

/// Tolerance of the complete-positivity certificate.
pub const CP_TOL: f64 = 1e-10;
/// Tolerance for recognising `X = sqrt(tau) I2`, `Y = y I2`.
pub const PHASE_INSENSITIVE_TOL: f64 = 1e-10;

/// Parameterised channel families with closed-form moment maps.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelFamily {
    /// Thermal attenuator with transmissivity `eta` and bath photons `n`.
    Attenuator { eta: f64, n: f64 },
    /// Thermal amplifier with gain `g` and bath photons `n`.
    Amplifier { g: f64, n: f64 },
    /// Additive Gaussian noise with inverse temperature `beta`.
    Additive { beta: f64 },
    /// Random displacements with covariance `y`; `X = I`.
    ClassicalMixing { y: Matrix },
    /// Attenuator extended by a vacuum ancilla, 1 -> 2 modes.
    ExtendedAttenuator { eta: f64, n: f64 },
    /// Pair of beam splitters sharing a two-mode squeezed environment, 2 -> 2 modes.
    ExtendedAttenuatorTwoMode { eta: f64, n: f64 },
    /// Additive noise with two squeezed flag modes, 1 -> 3 modes.
    FlaggedAdditive { beta: f64 },
}

/// Affine moment map between `n_in` and `n_out` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    n_in: usize,
    n_out: usize,
    x: Matrix,
    y: Matrix,
    family: Option<ChannelFamily>,
}

impl GaussianChannel {
    /// Builds a channel from raw `(X, Y)` and certifies complete positivity.
    pub fn new(x: Matrix, y: Matrix) -> Result<Self> {
        let (rows, cols) = x.shape();
        if rows % 2 != 0 || cols % 2 != 0 {
            return Err(Error::BadShape { rows, cols });
        }
        if y.shape() != (rows, rows) {
            return Err(Error::BadShape {
                rows: y.nrows(),
                cols: y.ncols(),
            });
        }
        let asymmetry = max_abs(&(&y - y.transpose()));
        if asymmetry > crate::symplectic::SYMMETRY_TOL * max_abs(&y).max(1.0) {
            return Err(Error::NonSymmetric { asymmetry });
        }
        let y = (&y + y.transpose()) * 0.5;
        let channel = Self {
            n_in: cols / 2,
            n_out: rows / 2,
            x,
            y,
            family: None,
        };
        channel.certify_cp()?;
        Ok(channel)
    }

    pub fn identity(modes: usize) -> Self {
        Self {
            n_in: modes,
            n_out: modes,
            x: Matrix::identity(2 * modes, 2 * modes),
            y: Matrix::zeros(2 * modes, 2 * modes),
            family: None,
        }
    }

    fn tagged(mut self, family: ChannelFamily) -> Self {
        self.family = Some(family);
        self
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    /// The family this channel was constructed from, if any. Composed and
    /// tensored channels carry no tag.
    pub fn family(&self) -> Option<&ChannelFamily> {
        self.family.as_ref()
    }

    /// Smallest eigenvalue of the Hermitian form `Y + i Omega_out - i X Omega_in X^T`.
    pub fn cp_margin(&self) -> f64 {
        let b = omega(self.n_out) - &self.x * omega(self.n_in) * self.x.transpose();
        // H = Y + iB is Hermitian; [[Y, -B], [B, Y]] has the same spectrum, doubled.
        let k = self.y.nrows();
        let mut real = Matrix::zeros(2 * k, 2 * k);
        real.view_mut((0, 0), (k, k)).copy_from(&self.y);
        real.view_mut((k, k), (k, k)).copy_from(&self.y);
        real.view_mut((0, k), (k, k)).copy_from(&(-&b));
        real.view_mut((k, 0), (k, k)).copy_from(&b);
        if k == 0 {
            return 0.0;
        }
        SymmetricEigen::new(real)
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |acc, &v| acc.min(v))
    }

    pub fn certify_cp(&self) -> Result<()> {
        let min = self.cp_margin();
        if min < -CP_TOL * max_abs(&self.y).max(1.0) {
            return Err(Error::CpViolation { min_eigenvalue: min });
        }
        Ok(())
    }

    /// Output covariance `X V X^T + Y`.
    pub fn apply_cov(&self, v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        if v.modes() != self.n_in {
            return Err(Error::DimensionMismatch {
                expected: self.n_in,
                found: v.modes(),
            });
        }
        CovarianceMatrix::new(&self.x * v.entries() * self.x.transpose() + &self.y)
    }

    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState> {
        let cov = self.apply_cov(state.cov())?;
        Ok(GaussianState::from_parts_unchecked(&self.x * state.mean(), cov))
    }
}

fn check_unit_interval(name: &'static str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(domain(name, v, "must lie in [0, 1]"));
    }
    Ok(())
}

fn check_photons(n: f64) -> Result<()> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(domain("N", n, "mean photon number must be >= 0"));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(domain("beta", beta, "inverse temperature must be > 0"));
    }
    Ok(())
}

/// The 6x6 classical-mixing covariance whose displacements realise the
/// flagged additive-noise channel on (signal, flag X', flag P').
pub fn flag_mixing_matrix(beta: f64) -> Matrix {
    let a = 2.0 / beta;
    let b = 1.0 / beta;
    let c = 1.0 / (2.0 * beta);
    #[rustfmt::skip]
    let m = Matrix::from_row_slice(6, 6, &[
        a,   0.0, 0.0, 0.0, 0.0, -b,
        0.0, a,   0.0, b,   0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, b,   0.0, c,   0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        -b,  0.0, 0.0, 0.0, 0.0, c,
    ]);
    m
}

/// Covariance of the two squeezed flags `|beta/2> (x) |beta/2>`.
pub fn flag_vacuum_cov(beta: f64) -> CovarianceMatrix {
    let sq = Matrix::from_row_slice(2, 2, &[2.0 / beta, 0.0, 0.0, beta / 2.0]);
    CovarianceMatrix::new(block_diag(&sq, &sq)).expect("diagonal is symmetric")
}

/// Builds the channel for a family, validating parameters and complete positivity.
pub fn make_channel(family: ChannelFamily) -> Result<GaussianChannel> {
    let i2 = Matrix::identity(2, 2);
    let channel = match &family {
        &ChannelFamily::Attenuator { eta, n } => {
            check_unit_interval("eta", eta)?;
            check_photons(n)?;
            GaussianChannel::new(i2.clone() * math::sqrt(eta), i2 * ((1.0 - eta) * (2.0 * n + 1.0)))?
        }
        &ChannelFamily::Amplifier { g, n } => {
            if !(g >= 1.0) || !g.is_finite() {
                return Err(domain("g", g, "gain must be >= 1"));
            }
            check_photons(n)?;
            GaussianChannel::new(i2.clone() * math::sqrt(g), i2 * ((g - 1.0) * (2.0 * n + 1.0)))?
        }
        &ChannelFamily::Additive { beta } => {
            check_beta(beta)?;
            GaussianChannel::new(i2.clone(), i2 * (2.0 / beta))?
        }
        ChannelFamily::ClassicalMixing { y } => {
            let (rows, cols) = y.shape();
            if rows != cols || rows % 2 != 0 {
                return Err(Error::BadShape { rows, cols });
            }
            let min = SymmetricEigen::new((y + y.transpose()) * 0.5)
                .eigenvalues
                .iter()
                .fold(f64::INFINITY, |acc, &v| acc.min(v));
            if rows > 0 && min < -CP_TOL * max_abs(y).max(1.0) {
                return Err(domain("Y", min, "classical mixing covariance must be PSD"));
            }
            GaussianChannel::new(Matrix::identity(rows, rows), y.clone())?
        }
        &ChannelFamily::ExtendedAttenuatorTwoMode { eta, n } => {
            check_unit_interval("eta", eta)?;
            check_photons(n)?;
            let env = two_mode_squeezed_cov(n)?;
            GaussianChannel::new(Matrix::identity(4, 4) * math::sqrt(eta), env.into_inner() * (1.0 - eta))?
        }
        &ChannelFamily::ExtendedAttenuator { eta, n } => {
            check_unit_interval("eta", eta)?;
            check_photons(n)?;
            let mut x = Matrix::zeros(4, 2);
            x.view_mut((0, 0), (2, 2)).copy_from(&(i2 * math::sqrt(eta)));
            // vacuum on the ancilla passes through with weight eta
            let ancilla = block_diag(&Matrix::zeros(2, 2), &Matrix::identity(2, 2)) * eta;
            let y = two_mode_squeezed_cov(n)?.into_inner() * (1.0 - eta) + ancilla;
            GaussianChannel::new(x, y)?
        }
        &ChannelFamily::FlaggedAdditive { beta } => {
            check_beta(beta)?;
            let mut x = Matrix::zeros(6, 2);
            x.view_mut((0, 0), (2, 2)).copy_from(&i2);
            let flags = block_diag(&Matrix::zeros(2, 2), flag_vacuum_cov(beta).entries());
            GaussianChannel::new(x, flag_mixing_matrix(beta) + flags)?
        }
    };
    Ok(channel.tagged(family))
}

/// `second o first`: `X = X2 X1`, `Y = X2 Y1 X2^T + Y2`.
pub fn compose(second: &GaussianChannel, first: &GaussianChannel) -> Result<GaussianChannel> {
    if first.n_out != second.n_in {
        return Err(Error::DimensionMismatch {
            expected: second.n_in,
            found: first.n_out,
        });
    }
    let x = &second.x * &first.x;
    let y = &second.x * &first.y * second.x.transpose() + &second.y;
    GaussianChannel::new(x, y)
}

/// Where identity modes go in [`tensor_with_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `channel (x) I_extra` (or `I_extra (x) channel` for [`Side::Left`]).
pub fn tensor_with_identity(channel: &GaussianChannel, extra_modes: usize, side: Side) -> GaussianChannel {
    let id = Matrix::identity(2 * extra_modes, 2 * extra_modes);
    let zero = Matrix::zeros(2 * extra_modes, 2 * extra_modes);
    let (x, y) = match side {
        Side::Right => (block_diag(&channel.x, &id), block_diag(&channel.y, &zero)),
        Side::Left => (block_diag(&id, &channel.x), block_diag(&zero, &channel.y)),
    };
    GaussianChannel {
        n_in: channel.n_in + extra_modes,
        n_out: channel.n_out + extra_modes,
        x,
        y,
        family: None,
    }
}

/// One-mode phase-insensitive channel `X = sqrt(tau) I2`, `Y = y I2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseInsensitiveParams {
    tau: f64,
    y: f64,
}

/// Named family a phase-insensitive channel belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseInsensitiveKind {
    Identity,
    Attenuator { eta: f64, n: f64 },
    Amplifier { g: f64, n: f64 },
    Additive { beta: f64 },
}

/// `tau` within this distance of one is treated as additive noise.
pub const UNIT_GAIN_TOL: f64 = 1e-12;

impl PhaseInsensitiveParams {
    pub fn new(tau: f64, y: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(domain("tau", tau, "must be > 0"));
        }
        if !y.is_finite() {
            return Err(domain("y", y, "must be finite"));
        }
        let margin = y - (1.0 - tau).abs();
        if margin < -1e-12 {
            return Err(Error::CpViolation { min_eigenvalue: margin });
        }
        Ok(Self { tau, y })
    }

    pub fn attenuator(eta: f64, n: f64) -> Result<Self> {
        check_unit_interval("eta", eta)?;
        check_photons(n)?;
        Self::new(eta, (1.0 - eta) * (2.0 * n + 1.0))
    }

    pub fn amplifier(g: f64, n: f64) -> Result<Self> {
        if !(g >= 1.0) {
            return Err(domain("g", g, "gain must be >= 1"));
        }
        check_photons(n)?;
        Self::new(g, (g - 1.0) * (2.0 * n + 1.0))
    }

    pub fn additive(beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Self::new(1.0, 2.0 / beta)
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Parameters of `second o self`.
    pub fn then(&self, second: &Self) -> Result<Self> {
        Self::new(self.tau * second.tau, second.tau * self.y + second.y)
    }

    pub fn kind(&self) -> PhaseInsensitiveKind {
        let excess = |scale: f64| (0.5 * (self.y / scale - 1.0)).max(0.0);
        if (self.tau - 1.0).abs() <= UNIT_GAIN_TOL {
            if self.y <= 0.0 {
                PhaseInsensitiveKind::Identity
            } else {
                PhaseInsensitiveKind::Additive { beta: 2.0 / self.y }
            }
        } else if self.tau < 1.0 {
            PhaseInsensitiveKind::Attenuator {
                eta: self.tau,
                n: excess(1.0 - self.tau),
            }
        } else {
            PhaseInsensitiveKind::Amplifier {
                g: self.tau,
                n: excess(self.tau - 1.0),
            }
        }
    }
}

/// Reads `(tau, y)` off a one-mode channel.
pub fn to_phase_insensitive(channel: &GaussianChannel) -> Result<PhaseInsensitiveParams> {
    if channel.n_in != 1 || channel.n_out != 1 {
        return Err(Error::NotPhaseInsensitive);
    }
    let x = &channel.x;
    let y = &channel.y;
    let tol = PHASE_INSENSITIVE_TOL;
    let iso = |m: &Matrix| (m[(0, 0)] - m[(1, 1)]).abs() <= tol && m[(0, 1)].abs() <= tol && m[(1, 0)].abs() <= tol;
    if !iso(x) || !iso(y) || x[(0, 0)] <= 0.0 {
        return Err(Error::NotPhaseInsensitive);
    }
    let s = 0.5 * (x[(0, 0)] + x[(1, 1)]);
    PhaseInsensitiveParams::new(s * s, 0.5 * (y[(0, 0)] + y[(1, 1)]))
}

/// The family member realising `p`: attenuator, additive noise or amplifier by `tau`.
pub fn from_phase_insensitive(p: &PhaseInsensitiveParams) -> Result<GaussianChannel> {
    let p = PhaseInsensitiveParams::new(p.tau, p.y)?;
    match p.kind() {
        PhaseInsensitiveKind::Identity => Ok(GaussianChannel::identity(1)),
        PhaseInsensitiveKind::Attenuator { eta, n } => make_channel(ChannelFamily::Attenuator { eta, n }),
        PhaseInsensitiveKind::Amplifier { g, n } => make_channel(ChannelFamily::Amplifier { g, n }),
        PhaseInsensitiveKind::Additive { beta } => make_channel(ChannelFamily::Additive { beta }),
    }
}

/// Closed-form complementary channel for families that have one: the
/// extended attenuators (and, as a weak complement, the thermal attenuator)
/// map to the same family with `eta -> 1 - eta`.
pub fn complementary(channel: &GaussianChannel) -> Result<GaussianChannel> {
    match channel.family() {
        Some(&ChannelFamily::Attenuator { eta, n }) => make_channel(ChannelFamily::Attenuator { eta: 1.0 - eta, n }),
        Some(&ChannelFamily::ExtendedAttenuatorTwoMode { eta, n }) => {
            make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta: 1.0 - eta, n })
        }
        Some(&ChannelFamily::ExtendedAttenuator { eta, n }) => {
            make_channel(ChannelFamily::ExtendedAttenuator { eta: 1.0 - eta, n })
        }
        _ => Err(Error::NoKnownComplement),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{CovarianceMatrix, Vector};
    use approx::assert_abs_diff_eq;

    fn residual(a: &Matrix, b: &Matrix) -> f64 {
        max_abs(&(a - b))
    }

    fn same_channel(a: &GaussianChannel, b: &GaussianChannel) -> f64 {
        residual(a.x(), b.x()).max(residual(a.y(), b.y()))
    }

    #[test]
    fn identity_attenuator() {
        let c = make_channel(ChannelFamily::Attenuator { eta: 1.0, n: 5.0 }).unwrap();
        assert_eq!(c.x(), &Matrix::identity(2, 2));
        assert_eq!(c.y(), &Matrix::zeros(2, 2));
    }

    #[test]
    fn domain_errors() {
        let bad = [
            ChannelFamily::Attenuator { eta: 1.2, n: 0.0 },
            ChannelFamily::Attenuator { eta: 0.5, n: -1.0 },
            ChannelFamily::Amplifier { g: 0.9, n: 0.0 },
            ChannelFamily::Additive { beta: 0.0 },
            ChannelFamily::FlaggedAdditive { beta: -1.0 },
            ChannelFamily::ExtendedAttenuator { eta: -0.1, n: 0.0 },
            ChannelFamily::ClassicalMixing {
                y: Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
            },
        ];
        for family in bad {
            assert!(matches!(make_channel(family), Err(Error::ParamDomain { .. })));
        }
    }

    #[test]
    fn every_family_is_cp() {
        let families = [
            ChannelFamily::Attenuator { eta: 0.3, n: 2.0 },
            ChannelFamily::Amplifier { g: 3.0, n: 0.5 },
            ChannelFamily::Additive { beta: 0.7 },
            ChannelFamily::ClassicalMixing {
                y: flag_mixing_matrix(1.3),
            },
            ChannelFamily::ExtendedAttenuator { eta: 0.7, n: 0.05 },
            ChannelFamily::ExtendedAttenuatorTwoMode { eta: 0.2, n: 3.0 },
            ChannelFamily::FlaggedAdditive { beta: 0.4 },
            ChannelFamily::FlaggedAdditive { beta: 12.0 },
        ];
        for family in families {
            let c = make_channel(family).unwrap();
            assert!(c.cp_margin() >= -CP_TOL, "{:?}", c.family());
        }
    }

    #[test]
    fn apply_examples() {
        let vac = GaussianState::centered(CovarianceMatrix::vacuum(1)).unwrap();
        let out = make_channel(ChannelFamily::Additive { beta: 4.0 })
            .unwrap()
            .apply(&vac)
            .unwrap();
        assert_abs_diff_eq!(residual(out.cov().entries(), &(Matrix::identity(2, 2) * 1.5)), 0.0);
        assert_eq!(out.mean(), &Vector::zeros(2));

        let thermal = GaussianState::centered(CovarianceMatrix::thermal(1.0).unwrap()).unwrap();
        let out = make_channel(ChannelFamily::Attenuator { eta: 0.5, n: 0.0 })
            .unwrap()
            .apply(&thermal)
            .unwrap();
        assert_abs_diff_eq!(
            residual(out.cov().entries(), &(Matrix::identity(2, 2) * 2.0)),
            0.0,
            epsilon = 1e-15
        );

        let displaced = GaussianState::new(
            Vector::from_vec(alloc::vec![0.3, -1.0]),
            CovarianceMatrix::thermal(0.2).unwrap(),
        )
        .unwrap();
        let out = GaussianChannel::identity(1).apply(&displaced).unwrap();
        assert_eq!(out, displaced);

        let wrong = GaussianState::centered(CovarianceMatrix::vacuum(2)).unwrap();
        assert!(matches!(
            GaussianChannel::identity(1).apply(&wrong),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn attenuators_compose() {
        let n = 0.7;
        let a1 = make_channel(ChannelFamily::Attenuator { eta: 0.6, n }).unwrap();
        let a2 = make_channel(ChannelFamily::Attenuator { eta: 0.3, n }).unwrap();
        let want = make_channel(ChannelFamily::Attenuator { eta: 0.18, n }).unwrap();
        assert!(same_channel(&compose(&a2, &a1).unwrap(), &want) <= 1e-12);
    }

    #[test]
    fn amplifier_splits_into_quantum_limited_amplifier_and_noise() {
        let (g, n) = (2.0, 3.0);
        let beta_tilde = 1.0 / ((g - 1.0) * n);
        let limited = make_channel(ChannelFamily::Amplifier { g, n: 0.0 }).unwrap();
        let noise = make_channel(ChannelFamily::Additive { beta: beta_tilde }).unwrap();
        let want = make_channel(ChannelFamily::Amplifier { g, n }).unwrap();
        assert!(same_channel(&compose(&noise, &limited).unwrap(), &want) <= 1e-12);
    }

    #[test]
    fn extended_attenuator_degrades() {
        let (eta, n) = (0.8, 0.05);
        let f = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta, n }).unwrap();
        let degrading = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode {
            eta: (1.0 - eta) / eta,
            n,
        })
        .unwrap();
        let comp = complementary(&f).unwrap();
        assert!(same_channel(&compose(&degrading, &f).unwrap(), &comp) <= 1e-12);
    }

    #[test]
    fn compose_rejects_mismatched_modes() {
        let f = make_channel(ChannelFamily::FlaggedAdditive { beta: 1.0 }).unwrap();
        assert!(matches!(compose(&f, &f), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn tensor_with_identity_shapes() {
        let id = tensor_with_identity(&GaussianChannel::identity(1), 1, Side::Right);
        assert_eq!(id.x(), GaussianChannel::identity(2).x());
        assert_eq!(id.y(), GaussianChannel::identity(2).y());
        let f = make_channel(ChannelFamily::FlaggedAdditive { beta: 1.0 }).unwrap();
        let t = tensor_with_identity(&f, 2, Side::Left);
        assert_eq!((t.n_in(), t.n_out()), (3, 5));
        assert_eq!(t.x()[(4, 4)], 1.0);
        assert_eq!(t.x()[(0, 0)], 1.0);
        assert!(t.cp_margin() >= -CP_TOL);
    }

    #[test]
    fn phase_insensitive_round_trip() {
        let att = make_channel(ChannelFamily::Attenuator { eta: 0.7, n: 0.05 }).unwrap();
        let p = to_phase_insensitive(&att).unwrap();
        assert_abs_diff_eq!(p.tau(), 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y(), 0.33, epsilon = 1e-15);
        let back = from_phase_insensitive(&p).unwrap();
        assert!(same_channel(&back, &att) <= 1e-12);

        let add = from_phase_insensitive(&PhaseInsensitiveParams::new(1.0, 0.5).unwrap()).unwrap();
        assert_eq!(add.family(), Some(&ChannelFamily::Additive { beta: 4.0 }));

        assert!(matches!(
            PhaseInsensitiveParams::new(2.0, 0.5),
            Err(Error::CpViolation { .. })
        ));
        let squeezer = GaussianChannel::new(
            Matrix::from_diagonal(&Vector::from_vec(alloc::vec![2.0, 0.5])),
            Matrix::zeros(2, 2),
        )
        .unwrap();
        assert_eq!(to_phase_insensitive(&squeezer), Err(Error::NotPhaseInsensitive));
    }

    #[test]
    fn complementary_is_an_involution() {
        let f = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta: 0.8, n: 0.3 }).unwrap();
        let fc = complementary(&f).unwrap();
        assert_eq!(
            fc.family(),
            Some(&ChannelFamily::ExtendedAttenuatorTwoMode { eta: 1.0 - 0.8, n: 0.3 })
        );
        let fcc = complementary(&fc).unwrap();
        assert!(same_channel(&fcc, &f) <= 1e-15);
        let half = make_channel(ChannelFamily::ExtendedAttenuatorTwoMode { eta: 0.5, n: 0.3 }).unwrap();
        assert_eq!(complementary(&half).unwrap(), half);
        let flagged = make_channel(ChannelFamily::FlaggedAdditive { beta: 1.0 }).unwrap();
        assert_eq!(complementary(&flagged), Err(Error::NoKnownComplement));
    }
}
