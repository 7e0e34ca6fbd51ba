//! Mode-level linear algebra: the symplectic form, covariance matrices,
//! symplectic spectra and the entropy of Gaussian states.
//!
//! Conventions: quadratures are ordered `(x1, p1, x2, p2, ...)` and the
//! vacuum has covariance `I2`, so a thermal state with mean photon number
//! `N` has covariance `(2N + 1) I2`. Entropies are in bits.

use alloc::vec::Vec;
use core::cmp::Ordering;

use nalgebra::{DMatrix, DVector};

use crate::error::{domain, Error, Result};
use crate::math;

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Relative tolerance on `|V - V^T|`.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Symplectic eigenvalues may dip this far below one and still count as physical.
pub const PHYSICAL_TOL: f64 = 1e-10;
/// Relative tolerance for pairing the eigenvalues of `Omega V` into `+/- i d`.
pub const PAIRING_TOL: f64 = 1e-9;

/// The block-diagonal symplectic form `[[0, 1], [-1, 0]]^{(+) n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    modes: usize,
    matrix: Matrix,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Self {
        Self {
            modes,
            matrix: omega(modes),
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// `Omega` for `modes` modes as a bare matrix.
pub fn omega(modes: usize) -> Matrix {
    let mut m = Matrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

/// Largest absolute entry, used to scale tolerances.
pub(crate) fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// `max |S^T Omega S - Omega|` for a square even-dimensional `S`.
pub fn symplectic_residual(s: &Matrix) -> f64 {
    let om = omega(s.nrows() / 2);
    max_abs(&(s.transpose() * &om * s - om))
}

/// Block-diagonal composition of two matrices.
pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = Matrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// Covariance matrix of an `n`-mode Gaussian state.
///
/// Construction checks shape and symmetry. Physicality is certified
/// separately by [`CovarianceMatrix::physical`] or [`CovarianceMatrix::certify`]
/// because intermediate matrices in the channel algebra need not be states.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    entries: Matrix,
}

impl CovarianceMatrix {
    /// Wraps a symmetric even-dimensional matrix. Rounding-level asymmetry
    /// is removed by symmetrizing.
    pub fn new(entries: Matrix) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows % 2 != 0 {
            return Err(Error::BadShape { rows, cols });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(domain("covariance", f64::NAN, "entries must be finite"));
        }
        let asymmetry = max_abs(&(&entries - entries.transpose()));
        if asymmetry > SYMMETRY_TOL * max_abs(&entries).max(1.0) {
            return Err(Error::NonSymmetric { asymmetry });
        }
        let entries = (&entries + entries.transpose()) * 0.5;
        Ok(Self { entries })
    }

    /// Like [`CovarianceMatrix::new`] but also requires a physical state.
    pub fn physical(entries: Matrix) -> Result<Self> {
        let cov = Self::new(entries)?;
        cov.certify()?;
        Ok(cov)
    }

    /// Zero-mode state; the neutral element of [`direct_sum`].
    pub fn empty() -> Self {
        Self {
            entries: Matrix::zeros(0, 0),
        }
    }

    pub fn vacuum(modes: usize) -> Self {
        Self {
            entries: Matrix::identity(2 * modes, 2 * modes),
        }
    }

    /// Single-mode thermal state `(2N + 1) I2`.
    pub fn thermal(mean_photons: f64) -> Result<Self> {
        if !(mean_photons >= 0.0) || !mean_photons.is_finite() {
            return Err(domain("N", mean_photons, "mean photon number must be >= 0"));
        }
        Ok(Self {
            entries: Matrix::identity(2, 2) * (2.0 * mean_photons + 1.0),
        })
    }

    /// Single-mode squeezed vacuum `diag(var_x, 1 / var_x)`.
    pub fn squeezed_vacuum(var_x: f64) -> Result<Self> {
        if !(var_x > 0.0) || !var_x.is_finite() {
            return Err(domain("var_x", var_x, "quadrature variance must be > 0"));
        }
        Ok(Self {
            entries: Matrix::from_diagonal(&Vector::from_vec(alloc::vec![var_x, 1.0 / var_x])),
        })
    }

    pub fn modes(&self) -> usize {
        self.entries.nrows() / 2
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_inner(self) -> Matrix {
        self.entries
    }

    pub fn spectrum(&self) -> Result<SymplecticSpectrum> {
        symplectic_eigenvalues(self)
    }

    /// Errors with [`Error::Unphysical`] unless every symplectic eigenvalue
    /// is at least `1 - tol`, where `tol` grows with the matrix norm to
    /// absorb the eigensolver's backward error.
    pub fn certify(&self) -> Result<()> {
        let spectrum = self.spectrum()?;
        let tol = PHYSICAL_TOL * max_abs(&self.entries).max(1.0);
        match spectrum.min() {
            Some(d) if d < 1.0 - tol => Err(Error::Unphysical { min_eigenvalue: d }),
            _ => Ok(()),
        }
    }

    pub fn entropy(&self) -> Result<f64> {
        entropy_from_cov(self)
    }

    /// `S V S^T`.
    pub fn transformed(&self, s: &Matrix) -> Result<Self> {
        if s.ncols() != self.entries.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.modes(),
                found: s.ncols() / 2,
            });
        }
        Self::new(s * &self.entries * s.transpose())
    }

    /// Reduced covariance on the listed modes (in the order given).
    pub fn reduced(&self, modes: &[usize]) -> Result<Self> {
        let n = self.modes();
        if let Some(&bad) = modes.iter().find(|&&m| m >= n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad + 1,
            });
        }
        let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let k = idx.len();
        let entries = Matrix::from_fn(k, k, |i, j| self.entries[(idx[i], idx[j])]);
        Ok(Self { entries })
    }
}

/// Gaussian state: first moments plus covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: Vector,
    cov: CovarianceMatrix,
}

impl GaussianState {
    pub fn new(mean: Vector, cov: CovarianceMatrix) -> Result<Self> {
        if mean.len() != cov.entries.nrows() {
            return Err(Error::DimensionMismatch {
                expected: cov.modes(),
                found: mean.len() / 2,
            });
        }
        if mean.iter().any(|v| !v.is_finite()) {
            return Err(domain("mean", f64::NAN, "mean vector must be finite"));
        }
        cov.certify()?;
        Ok(Self { mean, cov })
    }

    /// Zero-mean state with the given covariance.
    pub fn centered(cov: CovarianceMatrix) -> Result<Self> {
        Self::new(Vector::zeros(cov.entries.nrows()), cov)
    }

    pub(crate) fn from_parts_unchecked(mean: Vector, cov: CovarianceMatrix) -> Self {
        Self { mean, cov }
    }

    pub fn modes(&self) -> usize {
        self.cov.modes()
    }

    pub fn mean(&self) -> &Vector {
        &self.mean
    }

    pub fn cov(&self) -> &CovarianceMatrix {
        &self.cov
    }

    pub fn entropy(&self) -> Result<f64> {
        self.cov.entropy()
    }

    /// `r -> S r`, `V -> S V S^T`.
    pub fn transformed(&self, s: &Matrix) -> Result<Self> {
        let cov = self.cov.transformed(s)?;
        Ok(Self {
            mean: s * &self.mean,
            cov,
        })
    }
}

/// Symplectic eigenvalues `d1 >= d2 >= ... >= dn`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn largest(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn min(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sum of `h(d_k)`; values within tolerance below one count as one.
    pub fn entropy(&self) -> f64 {
        self.values.iter().map(|&d| h_clamped(d)).sum()
    }
}

/// Symplectic eigenvalues of `V`, from the eigenvalues of the real matrix
/// `Omega V`, which come in pairs `+/- i d_k`.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let n = v.modes();
    if n == 0 {
        return Ok(SymplecticSpectrum { values: Vec::new() });
    }
    let scale = max_abs(&v.entries).max(1.0);
    let tol = PAIRING_TOL * scale;
    let a = omega(n) * &v.entries;
    let eig = a.complex_eigenvalues();

    // iOmega V must have a real spectrum, i.e. Omega V a purely imaginary one.
    let real_residue = eig.iter().fold(0.0_f64, |acc, z| acc.max(z.re.abs()));
    if real_residue > tol {
        return Err(Error::PairingFailure { residual: real_residue });
    }

    let mut im: Vec<f64> = eig.iter().map(|z| z.im).collect();
    im.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    let (pos, neg) = im.split_at(n);
    let mut values = Vec::with_capacity(n);
    let mut residual = 0.0_f64;
    for (k, &p) in pos.iter().enumerate() {
        // neg is ascending in magnitude from the middle; mirror it.
        let q = -neg[n - 1 - k];
        if p < 0.0 || q < 0.0 {
            residual = residual.max(p.abs().max(q.abs()));
        }
        residual = residual.max((p - q).abs());
        values.push(0.5 * (p + q));
    }
    if residual > tol {
        return Err(Error::PairingFailure { residual });
    }
    Ok(SymplecticSpectrum { values })
}

/// Bosonic entropy function
/// `h(x) = (x+1)/2 log2((x+1)/2) - (x-1)/2 log2((x-1)/2)` in bits.
pub fn bosonic_entropy_h(x: f64) -> Result<f64> {
    if x.is_nan() || x < 1.0 - PHYSICAL_TOL {
        return Err(domain("x", x, "h(x) requires x >= 1"));
    }
    Ok(h_clamped(x))
}

/// `h` with arguments below one treated as one. Callers are responsible
/// for the domain check.
pub(crate) fn h_clamped(x: f64) -> f64 {
    if x <= 1.0 + 1e-12 {
        return 0.0;
    }
    let a = 0.5 * (x + 1.0);
    let b = 0.5 * (x - 1.0);
    let nats = if b >= 1.0 {
        // a ln a - b ln b = ln b + a ln(1 + 1/b), free of cancellation for large x
        math::ln(b) + a * libm::log1p(1.0 / b)
    } else {
        a * math::ln(a) - b * math::ln(b)
    };
    nats / core::f64::consts::LN_2
}

/// Von Neumann entropy (bits) of the Gaussian state with covariance `V`.
pub fn entropy_from_cov(v: &CovarianceMatrix) -> Result<f64> {
    let spectrum = symplectic_eigenvalues(v)?;
    let tol = PHYSICAL_TOL * max_abs(&v.entries).max(1.0);
    if let Some(d) = spectrum.min() {
        if d < 1.0 - tol {
            return Err(Error::Unphysical { min_eigenvalue: d });
        }
    }
    Ok(spectrum.entropy())
}

/// Two-mode squeezed vacuum purifying a thermal state with `N` photons:
/// diagonal blocks `(2N+1) I2`, off-diagonal blocks `2 sqrt(N(N+1)) sigma_3`.
pub fn two_mode_squeezed_cov(mean_photons: f64) -> Result<CovarianceMatrix> {
    if !(mean_photons >= 0.0) || !mean_photons.is_finite() {
        return Err(domain("N", mean_photons, "mean photon number must be >= 0"));
    }
    let a = 2.0 * mean_photons + 1.0;
    let c = 2.0 * math::sqrt(mean_photons * (mean_photons + 1.0));
    let mut m = Matrix::zeros(4, 4);
    m[(0, 0)] = a;
    m[(1, 1)] = a;
    m[(2, 2)] = a;
    m[(3, 3)] = a;
    m[(0, 2)] = c;
    m[(2, 0)] = c;
    m[(1, 3)] = -c;
    m[(3, 1)] = -c;
    Ok(CovarianceMatrix { entries: m })
}

/// Which phase-space rotation to build in [`gauge_rotation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugePattern {
    /// Single-mode `R(theta)`.
    Single,
    /// Three-mode rotation acting on the output of the flagged additive-noise channel.
    Flagged,
    /// Two-mode rotation acting on the output of the extended attenuator.
    ExtendedAttenuator,
}

fn rotation(theta: f64) -> Matrix {
    let (s, c) = (math::sin(theta), math::cos(theta));
    Matrix::from_row_slice(2, 2, &[c, s, -s, c])
}

/// Orthogonal symplectic rotation for the requested pattern.
pub fn gauge_rotation(theta: f64, pattern: GaugePattern) -> Matrix {
    let (s, c) = (math::sin(theta), math::cos(theta));
    match pattern {
        GaugePattern::Single => rotation(theta),
        GaugePattern::Flagged => {
            // flags rotate the (x2, x3) and (p2, p3) pairs together
            let mut m = Matrix::zeros(6, 6);
            m.view_mut((0, 0), (2, 2)).copy_from(&rotation(theta));
            m[(2, 2)] = c;
            m[(2, 4)] = s;
            m[(3, 3)] = c;
            m[(3, 5)] = s;
            m[(4, 2)] = -s;
            m[(4, 4)] = c;
            m[(5, 3)] = -s;
            m[(5, 5)] = c;
            m
        }
        GaugePattern::ExtendedAttenuator => block_diag(&rotation(theta), &rotation(-theta)),
    }
}

/// `V1 (+) V2`; mode counts add.
pub fn direct_sum(v1: &CovarianceMatrix, v2: &CovarianceMatrix) -> CovarianceMatrix {
    CovarianceMatrix {
        entries: block_diag(&v1.entries, &v2.entries),
    }
}

/// Concatenation of mean vectors.
pub fn embed_mean(m1: &Vector, m2: &Vector) -> Vector {
    let mut out = Vector::zeros(m1.len() + m2.len());
    out.rows_mut(0, m1.len()).copy_from(m1);
    out.rows_mut(m1.len(), m2.len()).copy_from(m2);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn omega_squares_to_minus_identity() {
        let form = SymplecticForm::new(3);
        let om = form.matrix();
        assert_eq!(om * om, -Matrix::identity(6, 6));
        assert_eq!(om.transpose(), -om.clone());
    }

    #[test]
    fn vacuum_and_thermal_spectra() {
        let s = symplectic_eigenvalues(&CovarianceMatrix::vacuum(1)).unwrap();
        assert_abs_diff_eq!(s.values()[0], 1.0, epsilon = 1e-12);
        let s = symplectic_eigenvalues(&CovarianceMatrix::thermal(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(s.values()[0], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn two_mode_squeezed_is_pure() {
        // storing 2 sqrt(N(N+1)) in doubles already moves d by ~eps N^2
        for (n, tol) in [(0.0, 1e-10), (0.3, 1e-10), (1.0, 1e-10), (10.0, 1e-10), (1e4, 1e-6)] {
            let v = two_mode_squeezed_cov(n).unwrap();
            let s = v.spectrum().unwrap();
            assert_eq!(s.len(), 2);
            for d in s.values() {
                assert_abs_diff_eq!(*d, 1.0, epsilon = tol);
            }
            assert_abs_diff_eq!(v.entropy().unwrap(), 0.0, epsilon = 1e-9);
        }
        assert_eq!(two_mode_squeezed_cov(0.0).unwrap().entries(), &Matrix::identity(4, 4));
    }

    #[test]
    fn two_mode_squeezed_entries_at_one_photon() {
        let v = two_mode_squeezed_cov(1.0).unwrap();
        let c = 2.0 * 2.0_f64.sqrt();
        let expected = Matrix::from_row_slice(
            4,
            4,
            &[
                3.0, 0.0, c, 0.0, //
                0.0, 3.0, 0.0, -c, //
                c, 0.0, 3.0, 0.0, //
                0.0, -c, 0.0, 3.0,
            ],
        );
        assert_abs_diff_eq!(max_abs(&(v.entries() - expected)), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn reduced_two_mode_squeezed_is_thermal() {
        let v = two_mode_squeezed_cov(2.5).unwrap();
        for mode in [0, 1] {
            let r = v.reduced(&[mode]).unwrap();
            assert_eq!(r.entries(), &(Matrix::identity(2, 2) * 6.0));
        }
        assert!(v.reduced(&[2]).is_err());
    }

    #[test]
    fn h_special_values() {
        assert_eq!(bosonic_entropy_h(1.0).unwrap(), 0.0);
        assert_eq!(bosonic_entropy_h(1.0 + 1e-13).unwrap(), 0.0);
        assert_abs_diff_eq!(bosonic_entropy_h(3.0).unwrap(), 2.0, epsilon = 1e-14);
        assert!(bosonic_entropy_h(0.5).is_err());
        assert!(bosonic_entropy_h(f64::NAN).is_err());
        // slightly below one is clamped, not rejected
        assert_eq!(bosonic_entropy_h(1.0 - 1e-11).unwrap(), 0.0);
    }

    #[test]
    fn h_matches_geometric_distribution_entropy() {
        // thermal state with N = 10 photons has V = 21; its photon-number
        // distribution is geometric with p_n = N^n / (N+1)^(n+1).
        let n_mean: f64 = 10.0;
        let q = n_mean / (n_mean + 1.0);
        let mut p = 1.0 / (n_mean + 1.0);
        let mut direct = 0.0;
        for _ in 0..2000 {
            if p > 0.0 {
                direct -= p * p.log2();
            }
            p *= q;
        }
        let h = bosonic_entropy_h(21.0).unwrap();
        assert_abs_diff_eq!(h, direct, epsilon = 1e-10);
        assert_abs_diff_eq!(h, 4.834467, epsilon = 1e-6);
    }

    #[test]
    fn h_asymptote() {
        let x = 1e6;
        let asym = (x * core::f64::consts::E / 2.0).log2();
        assert_abs_diff_eq!(bosonic_entropy_h(x).unwrap(), asym, epsilon = 1e-6);
    }

    #[test]
    fn entropy_of_simple_states() {
        assert_eq!(entropy_from_cov(&CovarianceMatrix::vacuum(2)).unwrap(), 0.0);
        assert_abs_diff_eq!(
            entropy_from_cov(&CovarianceMatrix::thermal(1.0).unwrap()).unwrap(),
            2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn gauge_rotations() {
        for pattern in [
            GaugePattern::Single,
            GaugePattern::Flagged,
            GaugePattern::ExtendedAttenuator,
        ] {
            let r = gauge_rotation(0.0, pattern);
            assert_eq!(r, Matrix::identity(r.nrows(), r.nrows()));
            let r = gauge_rotation(0.37, pattern);
            assert!(symplectic_residual(&r) <= 1e-12);
            let orth = max_abs(&(r.transpose() * &r - Matrix::identity(r.nrows(), r.nrows())));
            assert!(orth <= 1e-12);
        }
        let r = gauge_rotation(core::f64::consts::FRAC_PI_2, GaugePattern::Single);
        let expected = Matrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert_abs_diff_eq!(max_abs(&(r - expected)), 0.0, epsilon = 1e-15);
        assert_eq!(gauge_rotation(0.1, GaugePattern::Flagged).nrows(), 6);
        assert_eq!(gauge_rotation(0.1, GaugePattern::ExtendedAttenuator).nrows(), 4);
    }

    #[test]
    fn direct_sums() {
        let i2 = CovarianceMatrix::vacuum(1);
        assert_eq!(direct_sum(&i2, &i2), CovarianceMatrix::vacuum(2));
        let v = two_mode_squeezed_cov(1.0).unwrap();
        assert_eq!(direct_sum(&v, &CovarianceMatrix::empty()), v);
        let s = direct_sum(&CovarianceMatrix::thermal(1.0).unwrap(), &v)
            .spectrum()
            .unwrap();
        assert_eq!(s.len(), 3);
        for (got, want) in s.values().iter().zip([3.0, 1.0, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-10);
        }
        let m = embed_mean(&Vector::from_vec(alloc::vec![1.0, 2.0]), &Vector::zeros(2));
        assert_eq!(m.as_slice(), &[1.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_matrices() {
        let asym = Matrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(CovarianceMatrix::new(asym), Err(Error::NonSymmetric { .. })));
        assert!(matches!(
            CovarianceMatrix::new(Matrix::identity(3, 3)),
            Err(Error::BadShape { .. })
        ));
        let small = Matrix::identity(2, 2) * 0.5;
        assert!(matches!(
            CovarianceMatrix::physical(small),
            Err(Error::Unphysical { .. })
        ));
        // indefinite: Omega V has a real eigenvalue pair
        let indefinite = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(
            symplectic_eigenvalues(&CovarianceMatrix::new(indefinite).unwrap()),
            Err(Error::PairingFailure { .. })
        ));
    }
}
