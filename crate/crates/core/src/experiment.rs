//! End-to-end pipeline: assemble the initial two-mode squeezed state, apply
//! the maneuver channel to one condensate, and compute the surviving
//! negativity along two independent routes:
//!
//! - the closed-form second-order expression
//!   N = max[0, N⁽⁰⁾(1 − e^{2r}(f^α + f^β)h²) − e^{2r}f^β h²] with
//!   N⁽⁰⁾ = max[0, (e^{2r} − 1)/2], and
//! - the full covariance path: the channel's 2×2 blocks assembled into the
//!   reduced two-mode covariance (and, as an internal consistency check, the
//!   same state obtained by transforming the complete (N+1)-mode covariance
//!   and tracing out everything else), then partial transposition and the
//!   symplectic spectrum.
//!
//! One spectator mode stays inertial; only the maneuvering condensate's
//! modes transform.

use nalgebra::{DMatrix, Matrix2};

use crate::bogoliubov::{f_sums, ChannelMode, CondensateParams, ManeuverChannel};
use crate::constants::{GM_EARTH, HBAR, R_EARTH};
use crate::error::{Error, Result};
use crate::orbits::{
    delta_phi, delta_phi_from_dv, dv_from_delta_phi, duration_from_kick, hohmann_kicks, OrbitPair,
};
use crate::symplectic::{
    two_mode_negativity, CovarianceMatrix, SymplecticTransform, CROSS_CHECK_TOL,
};

/// How the maneuver magnitude is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ManeuverSource {
    /// A full orbit pair; the first Hohmann kick sets the burn duration.
    Orbit(OrbitPair),
    /// Difference in gravitational potential between the orbits (m²/s²).
    DeltaPhi(f64),
    /// Burn duration directly (s).
    DeltaTau(f64),
}

/// Reference orbit used to convert between δφ and Δτ when the maneuver is
/// given directly rather than as an orbit pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceOrbit {
    pub gm: f64,
    pub r_high: f64,
}

impl Default for ReferenceOrbit {
    fn default() -> Self {
        // 400 km LEO
        Self {
            gm: GM_EARTH,
            r_high: R_EARTH + 4e5,
        }
    }
}

/// Full description of one experiment evaluation.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub condensate: CondensateParams,
    /// Thruster proper acceleration (m/s²).
    pub thruster_acceleration: f64,
    /// Initial squeezing r ≥ 0 shared by the two condensates.
    pub squeezing: f64,
    /// Spectator mode index (inertial condensate); does not affect the
    /// negativity but is validated and echoed.
    pub mode_k: usize,
    /// Mode of interest in the maneuvering condensate.
    pub mode_k_prime: usize,
    /// Comoving fundamental frequency Ω₁; defaults to the lab-frame
    /// fundamental mode frequency 2πc_s/L.
    pub omega1_override: Option<f64>,
    pub channel_mode: ChannelMode,
    pub maneuver: ManeuverSource,
    pub reference_orbit: ReferenceOrbit,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.squeezing >= 0.0) || !self.squeezing.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "squeezing must be non-negative, got {}",
                self.squeezing
            )));
        }
        if self.mode_k == 0 || self.mode_k_prime == 0 {
            return Err(Error::InvalidParameter("mode indices start at 1".into()));
        }
        if 2 * self.mode_k_prime > self.condensate.n_max {
            return Err(Error::TruncationTooSmall(format!(
                "mode {} needs a truncation of at least {}",
                self.mode_k_prime,
                2 * self.mode_k_prime
            )));
        }
        if self.condensate.n_max < self.mode_k_prime + 10 {
            return Err(Error::TruncationTooSmall(format!(
                "truncation {} leaves fewer than 10 modes above the mode of interest {}",
                self.condensate.n_max, self.mode_k_prime
            )));
        }
        if let Some(w) = self.omega1_override {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "comoving fundamental frequency must be positive, got {w}"
                )));
            }
        }
        if !(self.thruster_acceleration >= 0.0) || !self.thruster_acceleration.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "thruster acceleration must be non-negative, got {}",
                self.thruster_acceleration
            )));
        }
        Ok(())
    }

    pub fn omega1(&self) -> Result<f64> {
        match self.omega1_override {
            Some(w) => Ok(w),
            None => self.condensate.mode_frequency(1),
        }
    }

    /// (Δτ, δφ) for the configured maneuver.
    pub fn resolve_maneuver(&self) -> Result<(f64, f64)> {
        let a = self.thruster_acceleration;
        match self.maneuver {
            ManeuverSource::DeltaTau(tau) => {
                if !(tau >= 0.0) || !tau.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "burn duration must be non-negative, got {tau}"
                    )));
                }
                let dv = a * tau;
                let dphi =
                    delta_phi_from_dv(dv, self.reference_orbit.r_high, self.reference_orbit.gm)?;
                Ok((tau, dphi))
            }
            ManeuverSource::DeltaPhi(dphi) => {
                let dv =
                    dv_from_delta_phi(dphi, self.reference_orbit.r_high, self.reference_orbit.gm)?;
                let tau = if dv == 0.0 {
                    0.0
                } else {
                    duration_from_kick(dv, a)?
                };
                Ok((tau, dphi))
            }
            ManeuverSource::Orbit(orbit) => {
                let dphi = delta_phi(&orbit);
                let (dv_low, _) = hohmann_kicks(&orbit);
                let tau = if dv_low == 0.0 {
                    0.0
                } else {
                    duration_from_kick(dv_low, a)?
                };
                Ok((tau, dphi))
            }
        }
    }

    /// Builds the channel for this configuration (reusable across a sweep).
    pub fn channel(&self) -> Result<ManeuverChannel> {
        self.validate()?;
        let h = self.condensate.perturbative_h(self.thruster_acceleration)?;
        ManeuverChannel::new(&self.condensate, self.channel_mode, h, self.omega1()?)
    }

    /// Single end-to-end evaluation.
    pub fn evaluate(&self) -> Result<NegativityResult> {
        let channel = self.channel()?;
        let (tau, dphi) = self.resolve_maneuver()?;
        self.evaluate_with_channel(&channel, tau, dphi)
    }

    fn evaluate_with_channel(
        &self,
        channel: &ManeuverChannel,
        delta_tau: f64,
        dphi: f64,
    ) -> Result<NegativityResult> {
        let r = self.squeezing;
        let kp = self.mode_k_prime;
        let transform = channel.transform(delta_tau)?;

        let n_block = negativity_via_blocks(&transform, r, kp)?;
        let n_full = negativity_via_full_state(&transform, r, kp)?;
        if (n_block - n_full).abs() > CROSS_CHECK_TOL {
            return Err(Error::InternalConsistency(format!(
                "block route {n_block:.12e} and full-state route {n_full:.12e} disagree by {:.3e}",
                (n_block - n_full).abs()
            )));
        }

        let n0 = initial_negativity(r);
        let (fa, fb) = f_sums(kp, channel.n_max())?;
        let n_pert = perturbative_negativity(r, channel.h(), fa, fb)?;
        let degradation_pct = if n0 > 0.0 {
            100.0 * (n0 - n_block) / n0
        } else {
            0.0
        };
        Ok(NegativityResult {
            n0,
            n_pert,
            n_num: n_block,
            degradation_pct,
            h: channel.h(),
            delta_tau,
            delta_phi: dphi,
        })
    }
}

/// One evaluated point of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult {
    /// Negativity of the initial two-mode squeezed state.
    pub n0: f64,
    /// Closed-form second-order value.
    pub n_pert: f64,
    /// Full covariance-path value.
    pub n_num: f64,
    /// 100·(n0 − n_num)/n0, zero when the initial state is separable.
    pub degradation_pct: f64,
    pub h: f64,
    pub delta_tau: f64,
    pub delta_phi: f64,
}

/// N⁽⁰⁾ = max[0, (e^{2r} − 1)/2].
pub fn initial_negativity(r: f64) -> f64 {
    (((2.0 * r).exp() - 1.0) / 2.0).max(0.0)
}

/// Closed-form degraded negativity
/// N = max[0, N⁽⁰⁾(1 − e^{2r}(f^α + f^β)h²) − e^{2r}f^β h²].
pub fn perturbative_negativity(r: f64, h: f64, f_alpha: f64, f_beta: f64) -> Result<f64> {
    if !(h >= 0.0) || h >= 1.0 {
        return Err(Error::PerturbationBreakdown { h });
    }
    let e2r = (2.0 * r).exp();
    let n0 = initial_negativity(r);
    let h2 = h * h;
    Ok((n0 * (1.0 - e2r * (f_alpha + f_beta) * h2) - e2r * f_beta * h2).max(0.0))
}

fn block_of(transform: &SymplecticTransform, row_mode: usize, col_mode: usize) -> Matrix2<f64> {
    let m = transform.matrix();
    let i = 2 * (row_mode - 1);
    let j = 2 * (col_mode - 1);
    Matrix2::new(
        m[(i, j)],
        m[(i, j + 1)],
        m[(i + 1, j)],
        m[(i + 1, j + 1)],
    )
}

/// Reduced-state route: the spectator block stays cosh(2r)·I₂, the cross
/// block is φ·Mᵀ_{k'k'}, and the maneuvered block is
/// cosh(2r)·M_{k'k'}Mᵀ_{k'k'} + Σ_{n≠k'} M_{k'n}Mᵀ_{k'n}, where M_{k'n} is
/// the channel's 2×2 block coupling mode n into mode k'.
pub fn negativity_via_blocks(
    transform: &SymplecticTransform,
    r: f64,
    k_prime: usize,
) -> Result<f64> {
    let n_max = transform.dim_modes();
    if k_prime == 0 || k_prime > n_max {
        return Err(Error::IndexOutOfRange(format!(
            "mode {k_prime} not in 1..={n_max}"
        )));
    }
    let c = (2.0 * r).cosh();
    let s = (2.0 * r).sinh();
    let phi = Matrix2::new(s, 0.0, 0.0, -s);

    let m_diag = block_of(transform, k_prime, k_prime);
    let c_kk = Matrix2::identity() * c;
    let c_cross = phi * m_diag.transpose();
    let mut c_kpkp = m_diag * m_diag.transpose() * c;
    for n in 1..=n_max {
        if n == k_prime {
            continue;
        }
        let m_n = block_of(transform, k_prime, n);
        c_kpkp += m_n * m_n.transpose();
    }

    let mut sigma = DMatrix::zeros(4, 4);
    sigma.view_mut((0, 0), (2, 2)).copy_from(&c_kk);
    sigma.view_mut((0, 2), (2, 2)).copy_from(&c_cross);
    sigma
        .view_mut((2, 0), (2, 2))
        .copy_from(&c_cross.transpose());
    // symmetrize rounding noise in the maneuvered block
    let c_kpkp_sym = 0.5 * (c_kpkp + c_kpkp.transpose());
    sigma.view_mut((2, 2), (2, 2)).copy_from(&c_kpkp_sym);

    two_mode_negativity(&CovarianceMatrix::new(sigma)?)
}

/// Full-state route: the complete (N+1)-mode covariance (spectator mode
/// first) transformed by I₂ ⊕ S and traced down to the two modes of
/// interest.
pub fn negativity_via_full_state(
    transform: &SymplecticTransform,
    r: f64,
    k_prime: usize,
) -> Result<f64> {
    let n_max = transform.dim_modes();
    if k_prime == 0 || k_prime > n_max {
        return Err(Error::IndexOutOfRange(format!(
            "mode {k_prime} not in 1..={n_max}"
        )));
    }
    let c = (2.0 * r).cosh();
    let s = (2.0 * r).sinh();
    let total_modes = n_max + 1;
    let mut sigma = DMatrix::identity(2 * total_modes, 2 * total_modes);
    sigma[(0, 0)] = c;
    sigma[(1, 1)] = c;
    let kp = 2 * k_prime; // quadrature offset of the maneuvered mode of interest
    sigma[(kp, kp)] = c;
    sigma[(kp + 1, kp + 1)] = c;
    sigma[(0, kp)] = s;
    sigma[(kp, 0)] = s;
    sigma[(1, kp + 1)] = -s;
    sigma[(kp + 1, 1)] = -s;

    let full = SymplecticTransform::identity(1)?.direct_sum(transform);
    let transformed = CovarianceMatrix::new(sigma)?.transform_by(&full)?;
    let reduced = transformed.partial_trace(&[1, k_prime + 1])?;
    two_mode_negativity(&reduced)
}

/// Sweep axis for [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    DeltaPhi,
    DeltaTau,
}

/// Evaluates the pipeline over an inclusive linear grid of the chosen axis.
/// Rows come back ordered by grid index; the channel (and the exponentials
/// inside it) is built once and shared across all points.
pub fn sweep(
    cfg: &ExperimentConfig,
    axis: SweepAxis,
    min: f64,
    max: f64,
    steps: usize,
) -> Result<Vec<NegativityResult>> {
    if steps == 0 {
        return Err(Error::InvalidParameter("sweep needs at least one step".into()));
    }
    if !(min.is_finite() && max.is_finite()) || min > max || min < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sweep range must satisfy 0 <= min <= max, got [{min}, {max}]"
        )));
    }
    let channel = cfg.channel()?;
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let x = if steps == 1 {
            min
        } else {
            min + (max - min) * (i as f64) / ((steps - 1) as f64)
        };
        let (tau, dphi) = match axis {
            SweepAxis::DeltaTau => {
                let dv = cfg.thruster_acceleration * x;
                let dphi =
                    delta_phi_from_dv(dv, cfg.reference_orbit.r_high, cfg.reference_orbit.gm)?;
                (x, dphi)
            }
            SweepAxis::DeltaPhi => {
                let dv = dv_from_delta_phi(x, cfg.reference_orbit.r_high, cfg.reference_orbit.gm)?;
                let tau = if dv == 0.0 {
                    0.0
                } else {
                    duration_from_kick(dv, cfg.thruster_acceleration)?
                };
                (tau, x)
            }
        };
        rows.push(cfg.evaluate_with_channel(&channel, tau, dphi)?);
    }
    Ok(rows)
}

/// Weak-dissipation coherence time t = ħ/(m·c_s²).
pub fn coherence_time(atom_mass: f64, sound_speed: f64) -> Result<f64> {
    if !(atom_mass > 0.0) || !(sound_speed > 0.0) {
        return Err(Error::InvalidParameter(
            "mass and sound speed must be positive".into(),
        ));
    }
    Ok(HBAR / (atom_mass * sound_speed * sound_speed))
}

/// Number of correlated measurements achievable within one coherence time:
/// n_dots · floor(t_coherence / t_modulation).
pub fn measurement_budget(n_dots: u64, t_coherence: f64, t_modulation: f64) -> Result<u64> {
    if n_dots == 0 || !(t_coherence > 0.0) || !(t_modulation > 0.0) {
        return Err(Error::InvalidParameter(
            "dot count and times must be positive".into(),
        ));
    }
    Ok(n_dots * (t_coherence / t_modulation).floor() as u64)
}
