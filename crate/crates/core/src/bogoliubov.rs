//! Mode structure of the trapped phonon field and the acceleration-induced
//! Bogoliubov machinery.
//!
//! A quasi-1D condensate of length L with sound speed c_s carries phonon
//! modes with the linear spectrum ω_n = 2πn·c_s/L. Switching uniform proper
//! acceleration a on and off mixes those modes and creates quasiparticle
//! pairs; to first order in the dimensionless parameter h = aL/c_s² the
//! mixing and pair-creation amplitudes between modes m and n are
//!
//!   α⁽¹⁾_mn = (-1 + (-1)^{m-n}) √(mn) / (π² (m-n)³)       (mode mixing)
//!   β⁽¹⁾_mn = ( 1 - (-1)^{m-n}) √(mn) / (π² (m+n)³)       (pair creation)
//!
//! per unit h, vanishing whenever m - n is even. During the accelerated
//! segment each mode also picks up a free-evolution phase with the comoving
//! frequency Ω_n = n·Ω₁.
//!
//! Two channel constructions are provided (see [`ChannelMode`]):
//!
//! - `Composed`: S = B⁻¹·R(Δτ)·B, where B = exp(hK) exponentiates the
//!   quadratic generator K implied by the first-order coefficients (exactly
//!   symplectic, correct to O(h²)) and R(Δτ) is the block-diagonal rotation
//!   with angles Ω_nΔτ. The switch-on/switch-off interference makes the
//!   degradation oscillate periodically in Δτ, with period 2π/Ω₁.
//! - `Literal`: S = R(Δτ)·exp(√2·hK), the Δτ-independent effective one-kick
//!   channel. The √2 carries the mean on/off double-kick enhancement, which
//!   is exactly what the closed-form second-order negativity absorbs into its
//!   coefficients; the covariance pipeline applied to this channel agrees
//!   with the closed form through O(h²) with an O(h⁴) residual.

use nalgebra::{Complex, DMatrix, Matrix2};

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::symplectic::SymplecticTransform;

const PI: f64 = std::f64::consts::PI;

/// Tail of the f-sums beyond the truncation must be below this bound.
pub const TAIL_TOL: f64 = 1e-8;

/// Trapped-condensate parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CondensateParams {
    /// Trap length L (m).
    pub trap_length: f64,
    /// Speed of sound c_s (m/s).
    pub sound_speed: f64,
    /// Atomic mass (kg).
    pub atom_mass: f64,
    /// Mode-space truncation order.
    pub n_max: usize,
}

impl CondensateParams {
    pub fn new(trap_length: f64, sound_speed: f64, atom_mass: f64, n_max: usize) -> Result<Self> {
        if !(trap_length > 0.0) || !trap_length.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "trap length must be positive, got {trap_length}"
            )));
        }
        if !(sound_speed > 0.0) || !sound_speed.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "sound speed must be positive, got {sound_speed}"
            )));
        }
        if sound_speed / SPEED_OF_LIGHT > 1e-3 {
            return Err(Error::InvalidParameter(format!(
                "sound speed {sound_speed} m/s is not small against the speed of light"
            )));
        }
        if !(atom_mass > 0.0) || !atom_mass.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "atom mass must be positive, got {atom_mass}"
            )));
        }
        if n_max < 2 {
            return Err(Error::InvalidParameter(format!(
                "truncation order must be at least 2, got {n_max}"
            )));
        }
        Ok(Self {
            trap_length,
            sound_speed,
            atom_mass,
            n_max,
        })
    }

    /// Angular frequency of mode n in the lab frame: ω_n = 2πn·c_s/L (rad/s).
    pub fn mode_frequency(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter("mode index starts at 1".into()));
        }
        Ok(2.0 * PI * n as f64 * self.sound_speed / self.trap_length)
    }

    /// Dimensionless expansion parameter h = aL/c_s².
    pub fn perturbative_h(&self, acceleration: f64) -> Result<f64> {
        if !(acceleration >= 0.0) || !acceleration.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "acceleration must be non-negative, got {acceleration}"
            )));
        }
        let h = acceleration * self.trap_length / (self.sound_speed * self.sound_speed);
        if h >= 1.0 {
            return Err(Error::PerturbationBreakdown { h });
        }
        Ok(h)
    }
}

/// A single period of uniform proper acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManeuverParams {
    /// Proper acceleration (m/s²).
    pub acceleration: f64,
    /// Proper duration of the accelerated segment (s).
    pub delta_tau: f64,
    /// h = aL/c_s², recomputed from the condensate parameters.
    pub h: f64,
}

impl ManeuverParams {
    pub fn new(acceleration: f64, delta_tau: f64, params: &CondensateParams) -> Result<Self> {
        if !(delta_tau >= 0.0) || !delta_tau.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "acceleration duration must be non-negative, got {delta_tau}"
            )));
        }
        let h = params.perturbative_h(acceleration)?;
        Ok(Self {
            acceleration,
            delta_tau,
            h,
        })
    }

    /// True when h exceeds 0.3 and second-order results should be read
    /// with care.
    pub fn strongly_perturbative(&self) -> bool {
        self.h > 0.3
    }
}

/// First-order mode-mixing coefficient per unit h; zero when m = n (the
/// diagonal is carried entirely by the zeroth order at this order) and for
/// even m - n.
pub fn alpha_first_order(m: usize, n: usize) -> f64 {
    if m == n {
        return 0.0;
    }
    let diff = m as f64 - n as f64;
    let parity = if (m + n).is_multiple_of(2) { 1.0 } else { -1.0 };
    (-1.0 + parity) * ((m * n) as f64).sqrt() / (PI * PI * diff.powi(3))
}

/// First-order pair-creation coefficient per unit h; zero for even m - n.
pub fn beta_first_order(m: usize, n: usize) -> f64 {
    let parity = if (m + n).is_multiple_of(2) { 1.0 } else { -1.0 };
    let sum = (m + n) as f64;
    (1.0 - parity) * ((m * n) as f64).sqrt() / (PI * PI * sum.powi(3))
}

/// Total coefficients (α_mn, β_mn) of the one-kick expansion at the given h:
/// α_mn = δ_mn e^{-iΩ_nΔτ} + h·e^{-i(Ω_n-Ω_m)Δτ}·α⁽¹⁾_mn and
/// β_mn = h·e^{+i(Ω_n-Ω_m)Δτ}·β⁽¹⁾_mn, with Ω_n = n·omega1.
/// The moduli are independent of Δτ.
pub fn total_coefficients(
    m: usize,
    n: usize,
    h: f64,
    delta_tau: f64,
    omega1: f64,
) -> (Complex<f64>, Complex<f64>) {
    let om_m = m as f64 * omega1;
    let om_n = n as f64 * omega1;
    let zeroth = if m == n {
        Complex::new(0.0, -om_n * delta_tau).exp()
    } else {
        Complex::new(0.0, 0.0)
    };
    let phase = Complex::new(0.0, -(om_n - om_m) * delta_tau).exp();
    let alpha = zeroth + phase * h * alpha_first_order(m, n);
    let beta = phase.conj() * h * beta_first_order(m, n);
    (alpha, beta)
}

/// The 2×2 phase-space block encoding a coefficient pair (α, β):
///
/// ```text
/// [  Re(α - β)   Im(α + β) ]
/// [ -Im(α - β)   Re(α + β) ]
/// ```
///
/// α = 1 gives the identity, α = e^{-iθ} a rotation by θ, and a real β
/// alone gives diag(-β, β).
pub fn quadrature_block(alpha: Complex<f64>, beta: Complex<f64>) -> Matrix2<f64> {
    let d = alpha - beta;
    let s = alpha + beta;
    Matrix2::new(d.re, s.im, -d.im, s.re)
}

/// Perturbative order carried by a coefficient set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientOrder {
    Zeroth,
    First,
    Composed,
}

/// Truncated complex α, β coefficient matrices (row index m, column index n).
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovSet {
    pub alpha: DMatrix<Complex<f64>>,
    pub beta: DMatrix<Complex<f64>>,
    pub order: CoefficientOrder,
}

impl BogoliubovSet {
    /// Free evolution only: α_mn = δ_mn e^{-iΩ_nΔτ}, β = 0.
    pub fn zeroth_order(n_max: usize, delta_tau: f64, omega1: f64) -> Self {
        let mut alpha = DMatrix::zeros(n_max, n_max);
        let beta = DMatrix::zeros(n_max, n_max);
        for n in 1..=n_max {
            alpha[(n - 1, n - 1)] = Complex::new(0.0, -(n as f64) * omega1 * delta_tau).exp();
        }
        Self {
            alpha,
            beta,
            order: CoefficientOrder::Zeroth,
        }
    }

    /// One-kick expansion truncated at first order, at the given h.
    pub fn first_order(n_max: usize, h: f64, delta_tau: f64, omega1: f64) -> Self {
        let mut alpha = DMatrix::zeros(n_max, n_max);
        let mut beta = DMatrix::zeros(n_max, n_max);
        for m in 1..=n_max {
            for n in 1..=n_max {
                let (a, b) = total_coefficients(m, n, h, delta_tau, omega1);
                alpha[(m - 1, n - 1)] = a;
                beta[(m - 1, n - 1)] = b;
            }
        }
        Self {
            alpha,
            beta,
            order: CoefficientOrder::First,
        }
    }

    /// Coefficients read back from an exactly symplectic transform by
    /// inverting the quadrature-block encoding. The matrices are indexed by
    /// the transform's (row-block, column-block); in that ordering an
    /// exactly symplectic transform satisfies αα† − ββ† = I and αᵀβ
    /// symmetric to machine precision.
    pub fn from_transform(s: &SymplecticTransform) -> Self {
        let n_max = s.dim_modes();
        let m = s.matrix();
        let mut alpha = DMatrix::zeros(n_max, n_max);
        let mut beta = DMatrix::zeros(n_max, n_max);
        for row in 0..n_max {
            for col in 0..n_max {
                let p = m[(2 * row, 2 * col)];
                let q = m[(2 * row, 2 * col + 1)];
                let u = m[(2 * row + 1, 2 * col)];
                let v = m[(2 * row + 1, 2 * col + 1)];
                alpha[(row, col)] = Complex::new(0.5 * (p + v), 0.5 * (q - u));
                beta[(row, col)] = Complex::new(0.5 * (v - p), 0.5 * (q + u));
            }
        }
        Self {
            alpha,
            beta,
            order: CoefficientOrder::Composed,
        }
    }

    /// ‖αα† − ββ† − I‖_max restricted to the given row (1-based mode index).
    pub fn identity_residual_row(&self, row: usize) -> f64 {
        let n = self.alpha.nrows();
        let mut worst = 0.0_f64;
        for j in 0..n {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..n {
                acc += self.alpha[(row - 1, k)] * self.alpha[(j, k)].conj()
                    - self.beta[(row - 1, k)] * self.beta[(j, k)].conj();
            }
            if j == row - 1 {
                acc -= Complex::new(1.0, 0.0);
            }
            worst = worst.max(acc.norm());
        }
        worst
    }
}

/// Sums of squared first-order coefficient moduli for the mode of interest,
/// per unit h²: f^α_{k'} = Σ_n |α⁽¹⁾_{k'n}|², f^β_{k'} = Σ_n |β⁽¹⁾_{k'n}|².
///
/// The terms decay like n⁻⁵, so the truncated sums converge fast; an
/// analytic envelope bound on the dropped tail must come in below
/// [`TAIL_TOL`] or the truncation is rejected.
pub fn f_sums(k_prime: usize, n_max: usize) -> Result<(f64, f64)> {
    if k_prime == 0 {
        return Err(Error::InvalidParameter("mode index starts at 1".into()));
    }
    if 2 * k_prime > n_max {
        return Err(Error::TruncationTooSmall(format!(
            "mode {k_prime} needs a truncation of at least {}",
            2 * k_prime
        )));
    }
    let tail = f_sum_tail_bound(k_prime, n_max);
    if tail > TAIL_TOL {
        return Err(Error::TruncationTooSmall(format!(
            "tail bound {tail:.3e} exceeds {TAIL_TOL:.0e} at truncation {n_max}"
        )));
    }
    let mut f_alpha = 0.0;
    let mut f_beta = 0.0;
    for n in 1..=n_max {
        f_alpha += alpha_first_order(k_prime, n).powi(2);
        f_beta += beta_first_order(k_prime, n).powi(2);
    }
    Ok((f_alpha, f_beta))
}

/// Envelope bound on the dropped tail of both f-sums beyond `n_max`:
/// |α⁽¹⁾_{k'n}|² ≤ 4k'n/(π⁴(n-k')⁶) and |β⁽¹⁾_{k'n}|² ≤ 4k'n/(π⁴(n+k')⁶),
/// integrated from n_max to infinity.
pub fn f_sum_tail_bound(k_prime: usize, n_max: usize) -> f64 {
    let k = k_prime as f64;
    let n = n_max as f64;
    let u = n - k; // > 0 since n_max >= 2 k'
    let alpha_tail = (4.0 * k / PI.powi(4)) * (0.25 * u.powi(-4) + 0.2 * k * u.powi(-5));
    let v = n + k;
    let beta_tail = (4.0 * k / PI.powi(4)) * (0.25 * v.powi(-4) + 0.2 * k * v.powi(-5));
    alpha_tail + beta_tail
}

/// How the maneuver is turned into a phase-space transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelMode {
    /// Δτ-independent effective one-kick channel matching the closed-form
    /// second-order negativity through O(h²).
    Literal,
    /// Switch-on / evolve / switch-off composition B⁻¹·R(Δτ)·B; degradation
    /// oscillates in Δτ with period 2π/Ω₁.
    Composed,
}

/// The maneuver channel for a fixed condensate, h and comoving fundamental
/// frequency. The exponentials of the mixing generator are cached so that a
/// sweep over Δτ only pays for rotations and matrix products.
#[derive(Debug, Clone)]
pub struct ManeuverChannel {
    n_max: usize,
    omega1: f64,
    mode: ChannelMode,
    h: f64,
    /// Literal: exp(√2·hK). Composed: exp(hK).
    forward: DMatrix<f64>,
    /// Composed only: exp(-hK).
    inverse: Option<DMatrix<f64>>,
}

impl ManeuverChannel {
    pub fn new(params: &CondensateParams, mode: ChannelMode, h: f64, omega1: f64) -> Result<Self> {
        if !(h >= 0.0) || h >= 1.0 {
            return Err(Error::PerturbationBreakdown { h });
        }
        if !(omega1 > 0.0) || !omega1.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "comoving fundamental frequency must be positive, got {omega1}"
            )));
        }
        let n_max = params.n_max;
        let k = mixing_generator(n_max);
        let (forward, inverse) = match mode {
            ChannelMode::Literal => ((&k * (2.0_f64.sqrt() * h)).exp(), None),
            ChannelMode::Composed => (((&k * h).exp()), Some((&k * (-h)).exp())),
        };
        Ok(Self {
            n_max,
            omega1,
            mode,
            h,
            forward,
            inverse,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn mode(&self) -> ChannelMode {
        self.mode
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Total transform for an accelerated segment of proper duration Δτ.
    pub fn transform(&self, delta_tau: f64) -> Result<SymplecticTransform> {
        if !(delta_tau >= 0.0) || !delta_tau.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "acceleration duration must be non-negative, got {delta_tau}"
            )));
        }
        let r = rotation_matrix(self.n_max, self.omega1, delta_tau);
        let total = match self.mode {
            ChannelMode::Literal => r * &self.forward,
            ChannelMode::Composed => {
                let inv = self.inverse.as_ref().expect("composed channel caches both");
                inv * (r * &self.forward)
            }
        };
        SymplecticTransform::new(total).map_err(|e| match e {
            Error::NotSymplectic(resid) => Error::TruncationTooSmall(format!(
                "channel residual {resid:.3e} exceeds symplectic tolerance; raise the truncation"
            )),
            other => other,
        })
    }
}

/// Quadratic generator K of the first-order kick: the phase-space block at
/// (row n, col m) is diag(α⁽¹⁾_mn − β⁽¹⁾_mn, α⁽¹⁾_mn + β⁽¹⁾_mn). K satisfies
/// KΩ + ΩKᵀ = 0, so its exponential is symplectic by construction and
/// reproduces the first-order coefficients to O(h²).
fn mixing_generator(n_max: usize) -> DMatrix<f64> {
    let mut k = DMatrix::zeros(2 * n_max, 2 * n_max);
    for n in 1..=n_max {
        for m in 1..=n_max {
            let a = alpha_first_order(m, n);
            let b = beta_first_order(m, n);
            k[(2 * (n - 1), 2 * (m - 1))] = a - b;
            k[(2 * (n - 1) + 1, 2 * (m - 1) + 1)] = a + b;
        }
    }
    k
}

/// Block-diagonal free evolution: rotation by Ω_nΔτ on mode n, Ω_n = n·Ω₁.
fn rotation_matrix(n_max: usize, omega1: f64, delta_tau: f64) -> DMatrix<f64> {
    let mut r = DMatrix::zeros(2 * n_max, 2 * n_max);
    for n in 1..=n_max {
        let theta = n as f64 * omega1 * delta_tau;
        let (s, c) = theta.sin_cos();
        let i = 2 * (n - 1);
        r[(i, i)] = c;
        r[(i, i + 1)] = -s;
        r[(i + 1, i)] = s;
        r[(i + 1, i + 1)] = c;
    }
    r
}

/// Convenience wrapper building the composed total transform for a maneuver.
/// `omega1` falls back to the lab-frame fundamental mode frequency.
pub fn compose_total_transform(
    params: &CondensateParams,
    maneuver: &ManeuverParams,
    omega1: Option<f64>,
) -> Result<SymplecticTransform> {
    let omega1 = match omega1 {
        Some(w) => w,
        None => params.mode_frequency(1)?,
    };
    ManeuverChannel::new(params, ChannelMode::Composed, maneuver.h, omega1)?
        .transform(maneuver.delta_tau)
}
