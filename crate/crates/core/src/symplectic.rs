//! Phase-space engine for Gaussian states of bosonic modes.
//!
//! Quadrature convention: X_{2n-1} = (a_n + a_n†)/√2, X_{2n} = -i(a_n - a_n†)/√2,
//! covariance σ_ij = ⟨X_i X_j + X_j X_i⟩ - 2⟨X_i⟩⟨X_j⟩, so the vacuum covariance
//! is the identity. The symplectic form is Ω = ⊕_i [[0, 1], [-1, 0]].
//!
//! A state is physical iff σ + iΩ ⪰ 0, equivalently all symplectic eigenvalues
//! (moduli of the eigenvalues of iΩσ) are ≥ 1. Entanglement of a two-mode state
//! is detected by partial transposition — a momentum-sign flip on one mode in
//! phase space — followed by the smallest symplectic eigenvalue ν₋ of the
//! transposed matrix; the negativity is N = max[0, (1 - ν₋)/(2ν₋)].

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

/// Allowed asymmetry in covariance matrix entries.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Maximum residual ‖SΩSᵀ − Ω‖_max for a transform to count as symplectic.
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// Most negative eigenvalue of σ + iΩ tolerated in the physicality check.
pub const PHYSICALITY_TOL: f64 = 1e-10;
/// Tolerance for cross-checks between independent computation routes.
pub const CROSS_CHECK_TOL: f64 = 1e-9;

/// The symplectic form Ω on `n` modes: block-diagonal copies of [[0,1],[-1,0]].
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    dim_modes: usize,
    entries: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(dim_modes: usize) -> Result<Self> {
        if dim_modes == 0 {
            return Err(Error::InvalidDimension(
                "symplectic form needs at least one mode".into(),
            ));
        }
        let mut entries = DMatrix::zeros(2 * dim_modes, 2 * dim_modes);
        for i in 0..dim_modes {
            entries[(2 * i, 2 * i + 1)] = 1.0;
            entries[(2 * i + 1, 2 * i)] = -1.0;
        }
        Ok(Self { dim_modes, entries })
    }

    pub fn dim_modes(&self) -> usize {
        self.dim_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// Real symmetric 2n×2n second-moment matrix of the field quadratures.
///
/// Symmetry is enforced on construction. Physicality (σ + iΩ ⪰ 0) is *not*
/// enforced, because partial transposes of entangled states — the very objects
/// the negativity is computed from — are legitimately unphysical; call
/// [`CovarianceMatrix::check_physical`] where a state is expected.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    dim_modes: usize,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::InvalidDimension(format!(
                "covariance matrix must be square with even dimension, got {rows}x{cols}"
            )));
        }
        let mut max_asym = 0.0_f64;
        for i in 0..rows {
            for j in (i + 1)..rows {
                max_asym = max_asym.max((entries[(i, j)] - entries[(j, i)]).abs());
            }
        }
        if max_asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(max_asym));
        }
        Ok(Self {
            dim_modes: rows / 2,
            entries,
        })
    }

    /// Vacuum state of `n` modes: the 2n×2n identity.
    pub fn vacuum(dim_modes: usize) -> Result<Self> {
        if dim_modes == 0 {
            return Err(Error::InvalidDimension(
                "vacuum state needs at least one mode".into(),
            ));
        }
        Ok(Self {
            dim_modes,
            entries: DMatrix::identity(2 * dim_modes, 2 * dim_modes),
        })
    }

    /// Two-mode squeezed state with squeezing parameter `r`:
    /// diagonal blocks cosh(2r)·I₂, off-diagonal blocks diag(sinh 2r, -sinh 2r).
    pub fn two_mode_squeezed(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "squeezing parameter must be finite, got {r}"
            )));
        }
        let c = (2.0 * r).cosh();
        let s = (2.0 * r).sinh();
        let mut m = DMatrix::zeros(4, 4);
        for i in 0..4 {
            m[(i, i)] = c;
        }
        m[(0, 2)] = s;
        m[(2, 0)] = s;
        m[(1, 3)] = -s;
        m[(3, 1)] = -s;
        Ok(Self {
            dim_modes: 2,
            entries: m,
        })
    }

    pub fn dim_modes(&self) -> usize {
        self.dim_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Smallest eigenvalue of the Hermitian matrix σ + iΩ.
    ///
    /// Errors if it is below `-PHYSICALITY_TOL`; otherwise returns the margin
    /// (possibly slightly negative within tolerance).
    pub fn check_physical(&self) -> Result<f64> {
        let omega = SymplecticForm::new(self.dim_modes)?;
        let n = 2 * self.dim_modes;
        let mut herm = DMatrix::<Complex<f64>>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                herm[(i, j)] = Complex::new(self.entries[(i, j)], omega.matrix()[(i, j)]);
            }
        }
        let eig = nalgebra::SymmetricEigen::new(herm);
        let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -PHYSICALITY_TOL {
            return Err(Error::NotPhysical(min));
        }
        Ok(min)
    }

    /// σ ↦ SσSᵀ.
    pub fn transform_by(&self, s: &SymplecticTransform) -> Result<CovarianceMatrix> {
        if s.dim_modes != self.dim_modes {
            return Err(Error::DimensionMismatch(format!(
                "transform acts on {} modes, state has {}",
                s.dim_modes, self.dim_modes
            )));
        }
        let m = &s.entries * &self.entries * s.entries.transpose();
        Ok(CovarianceMatrix::from_congruence(m, self.dim_modes))
    }

    // Symmetrizes rounding noise from a congruence SσSᵀ.
    fn from_congruence(mut m: DMatrix<f64>, dim_modes: usize) -> CovarianceMatrix {
        let n = m.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = avg;
                m[(j, i)] = avg;
            }
        }
        CovarianceMatrix {
            dim_modes,
            entries: m,
        }
    }

    /// Reduced state of the listed modes (1-based), in the order given.
    /// Tracing out a mode deletes its quadrature rows and columns.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<CovarianceMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidParameter(
                "partial trace must keep at least one mode".into(),
            ));
        }
        for (i, &m) in keep.iter().enumerate() {
            if m == 0 || m > self.dim_modes {
                return Err(Error::IndexOutOfRange(format!(
                    "mode {m} not in 1..={}",
                    self.dim_modes
                )));
            }
            if keep[..i].contains(&m) {
                return Err(Error::InvalidParameter(format!(
                    "mode {m} listed more than once"
                )));
            }
        }
        let k = keep.len();
        let mut out = DMatrix::zeros(2 * k, 2 * k);
        for (a, &ma) in keep.iter().enumerate() {
            for (b, &mb) in keep.iter().enumerate() {
                for p in 0..2 {
                    for q in 0..2 {
                        out[(2 * a + p, 2 * b + q)] =
                            self.entries[(2 * (ma - 1) + p, 2 * (mb - 1) + q)];
                    }
                }
            }
        }
        Ok(CovarianceMatrix {
            dim_modes: k,
            entries: out,
        })
    }

    /// Partial transposition of the given mode (1-based): flips the sign of
    /// that mode's momentum quadrature row and column (σ ↦ PσP with
    /// P = diag(…, 1, -1, …)).
    pub fn partial_transpose(&self, mode: usize) -> Result<CovarianceMatrix> {
        if mode == 0 || mode > self.dim_modes {
            return Err(Error::IndexOutOfRange(format!(
                "mode {mode} not in 1..={}",
                self.dim_modes
            )));
        }
        let p = 2 * (mode - 1) + 1;
        let mut m = self.entries.clone();
        let n = m.nrows();
        for j in 0..n {
            m[(p, j)] = -m[(p, j)];
        }
        for i in 0..n {
            m[(i, p)] = -m[(i, p)];
        }
        Ok(CovarianceMatrix {
            dim_modes: self.dim_modes,
            entries: m,
        })
    }
}

/// Real 2n×2n matrix preserving the symplectic form: SΩSᵀ = Ω.
///
/// Construction validates the defining identity to `SYMPLECTIC_TOL`, so every
/// value of this type is an exactly symplectic transform (up to 1e-10).
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform {
    dim_modes: usize,
    entries: DMatrix<f64>,
}

impl SymplecticTransform {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::InvalidDimension(format!(
                "symplectic transform must be square with even dimension, got {rows}x{cols}"
            )));
        }
        let candidate = Self {
            dim_modes: rows / 2,
            entries,
        };
        let resid = candidate.symplectic_residual()?;
        if resid > SYMPLECTIC_TOL {
            return Err(Error::NotSymplectic(resid));
        }
        Ok(candidate)
    }

    pub fn identity(dim_modes: usize) -> Result<Self> {
        if dim_modes == 0 {
            return Err(Error::InvalidDimension(
                "identity transform needs at least one mode".into(),
            ));
        }
        Ok(Self {
            dim_modes,
            entries: DMatrix::identity(2 * dim_modes, 2 * dim_modes),
        })
    }

    /// Phase-space rotation by `angle` on one mode (1-based), identity elsewhere.
    pub fn single_mode_rotation(dim_modes: usize, mode: usize, angle: f64) -> Result<Self> {
        if mode == 0 || mode > dim_modes {
            return Err(Error::IndexOutOfRange(format!(
                "mode {mode} not in 1..={dim_modes}"
            )));
        }
        let mut m = DMatrix::identity(2 * dim_modes, 2 * dim_modes);
        let i = 2 * (mode - 1);
        m[(i, i)] = angle.cos();
        m[(i, i + 1)] = -angle.sin();
        m[(i + 1, i)] = angle.sin();
        m[(i + 1, i + 1)] = angle.cos();
        Ok(Self { dim_modes, entries: m })
    }

    /// Direct sum: `self` on the first modes, `other` on the rest.
    pub fn direct_sum(&self, other: &SymplecticTransform) -> SymplecticTransform {
        let n = self.dim_modes + other.dim_modes;
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        let a = 2 * self.dim_modes;
        m.view_mut((0, 0), (a, a)).copy_from(&self.entries);
        m.view_mut((a, a), (2 * other.dim_modes, 2 * other.dim_modes))
            .copy_from(&other.entries);
        SymplecticTransform {
            dim_modes: n,
            entries: m,
        }
    }

    /// ‖SΩSᵀ − Ω‖_max.
    pub fn symplectic_residual(&self) -> Result<f64> {
        let omega = SymplecticForm::new(self.dim_modes)?;
        let lhs = &self.entries * omega.matrix() * self.entries.transpose();
        let mut resid = 0.0_f64;
        for i in 0..lhs.nrows() {
            for j in 0..lhs.ncols() {
                resid = resid.max((lhs[(i, j)] - omega.matrix()[(i, j)]).abs());
            }
        }
        Ok(resid)
    }

    pub fn dim_modes(&self) -> usize {
        self.dim_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// Symplectic eigenvalues (ν₊, ν₋) of a 4×4 covariance matrix from the
/// closed form ν±² = (Δ ± √(Δ² − 4 det σ))/2 on the 2×2 blocks
/// σ = [[A, C], [Cᵀ, B]], Δ = det A + det B + 2 det C.
///
/// This is the ordinary symplectic spectrum of the matrix it is given; the
/// partial transposition, where wanted, is applied explicitly beforehand
/// (it flips the sign of det C, recovering the transposed-state form of Δ).
pub fn two_mode_symplectic_eigenvalues(sigma: &CovarianceMatrix) -> Result<(f64, f64)> {
    if sigma.dim_modes != 2 {
        return Err(Error::InvalidDimension(format!(
            "closed form needs a two-mode state, got {} modes",
            sigma.dim_modes
        )));
    }
    let m = sigma.matrix();
    let det2 = |r0: usize, c0: usize| -> f64 {
        m[(r0, c0)] * m[(r0 + 1, c0 + 1)] - m[(r0, c0 + 1)] * m[(r0 + 1, c0)]
    };
    let det_a = det2(0, 0);
    let det_b = det2(2, 2);
    let det_c = det2(0, 2);
    let delta = det_a + det_b + 2.0 * det_c;
    let det_sigma = m.determinant();

    // Values in [-1e-10, 0) are rounding noise and clamp to zero; anything
    // more negative is a genuine degeneracy and errors out instead of
    // silently producing NaN.
    let clamp = |v: f64| -> Result<f64> {
        if v < -PHYSICALITY_TOL {
            return Err(Error::NumericalDegeneracy(v));
        }
        Ok(v.max(0.0))
    };

    let disc = clamp(delta * delta - 4.0 * det_sigma)?;
    let root = disc.sqrt();
    let nu_plus_sq = clamp(0.5 * (delta + root))?;
    let nu_minus_sq = clamp(0.5 * (delta - root))?;
    Ok((nu_plus_sq.sqrt(), nu_minus_sq.sqrt()))
}

/// Symplectic eigenvalues of an arbitrary covariance matrix: the moduli of
/// the eigenvalues of iΩσ, paired and returned as n values in descending
/// order. Serves as the independent oracle for the two-mode closed form.
pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix) -> Result<Vec<f64>> {
    let omega = SymplecticForm::new(sigma.dim_modes)?;
    let prod = omega.matrix() * sigma.matrix();
    let eigs = prod.complex_eigenvalues();
    let mut moduli: Vec<f64> = eigs.iter().map(|z| z.norm()).collect();
    if moduli.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigenFailure(
            "non-finite eigenvalue of i*Omega*sigma".into(),
        ));
    }
    moduli.sort_by(|a, b| b.partial_cmp(a).expect("finite moduli"));
    // Eigenvalues of iΩσ come in ±ν pairs; average each pair.
    let nus: Vec<f64> = moduli
        .chunks_exact(2)
        .map(|pair| 0.5 * (pair[0] + pair[1]))
        .collect();
    Ok(nus)
}

/// Negativity from the smallest symplectic eigenvalue of the partially
/// transposed state: N = max[0, (1 − ν₋)/(2ν₋)].
pub fn negativity(nu_min: f64) -> Result<f64> {
    if !(nu_min > 0.0) || !nu_min.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "smallest symplectic eigenvalue must be positive and finite, got {nu_min}"
        )));
    }
    if nu_min >= 1.0 {
        Ok(0.0)
    } else {
        Ok((1.0 - nu_min) / (2.0 * nu_min))
    }
}

/// Negativity of a two-mode state: partial transpose on the second mode,
/// smallest symplectic eigenvalue, then the max-clamped formula.
pub fn two_mode_negativity(sigma: &CovarianceMatrix) -> Result<f64> {
    let pt = sigma.partial_transpose(2)?;
    let (_, nu_min) = two_mode_symplectic_eigenvalues(&pt)?;
    negativity(nu_min)
}
