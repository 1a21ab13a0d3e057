//! Acoustic-metric and Rindler-coordinate utilities.
//!
//! Phonons in a flowing condensate propagate on the effective metric
//!
//!   𝔤_ab = ρ/√(1 − u_d u^d/c₀²) · [ g_ab (1 − u_d u^d/c₀²) + u_a u_b/c₀² ]
//!
//! built from the background metric g, the flow field u, the phonon speed c₀
//! and the background density ρ. For comoving flow the result is conformal to
//! a flat metric whose light cones open at the scalar speed of sound. The
//! entanglement pipeline only consumes that speed; these routines are
//! diagnostic coverage of the construction itself.
//!
//! Uniformly accelerated segments are described in Rindler coordinates
//! (η, χ), related to the Minkowski lab coordinates by t = (χ/c_s) sinh η,
//! x = χ cosh η. A trajectory of constant χ = χ₀ has proper acceleration
//! a = c_s²/χ₀ and proper time τ = (c_s/a)·η.

use nalgebra::{Matrix4, Vector4};

use crate::bogoliubov::CondensateParams;
use crate::constants::HBAR;
use crate::error::{Error, Result};

/// Effective acoustic metric with its overall prefactor kept separate.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveMetric {
    /// Full metric components (prefactor included).
    pub components: Matrix4<f64>,
    /// The prefactor ρ/√(1 − u_d u^d/c₀²).
    pub conformal_factor: f64,
}

/// A point in the right Rindler wedge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RindlerPoint {
    /// Dimensionless Rindler time.
    pub eta: f64,
    /// Position χ > 0 (m).
    pub chi: f64,
}

impl RindlerPoint {
    pub fn new(eta: f64, chi: f64) -> Result<Self> {
        if !(chi > 0.0) || !chi.is_finite() || !eta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Rindler point needs chi > 0 and finite eta, got eta={eta}, chi={chi}"
            )));
        }
        Ok(Self { eta, chi })
    }
}

/// Builds the effective metric from the background metric `g`, the
/// contravariant flow field `u`, the phonon propagation speed `c0` and the
/// background density `rho`. Rejects flows with 1 − u_d u^d/c₀² ≤ 0.
pub fn effective_metric(
    g: &Matrix4<f64>,
    u: &Vector4<f64>,
    c0: f64,
    rho: f64,
) -> Result<EffectiveMetric> {
    if !(c0 > 0.0) || !c0.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "phonon speed must be positive, got {c0}"
        )));
    }
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "background density must be positive, got {rho}"
        )));
    }
    let u_lower = g * u;
    let u_sq = u_lower.dot(u);
    let factor = 1.0 - u_sq / (c0 * c0);
    if !(factor > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "acausal flow: 1 - u_d u^d / c0^2 = {factor} is not positive"
        )));
    }
    let conformal_factor = rho / factor.sqrt();
    // g_ab(1 - u²/c₀²) + u_a u_b/c₀² rearranged as
    // g_ab + (u_a u_b - g_ab u²)/c₀² so the comoving time-time component
    // cancels exactly instead of through a large intermediate.
    let mut components = Matrix4::zeros();
    for a in 0..4 {
        for b in 0..4 {
            components[(a, b)] = conformal_factor
                * (g[(a, b)] + (u_lower[a] * u_lower[b] - g[(a, b)] * u_sq) / (c0 * c0));
        }
    }
    Ok(EffectiveMetric {
        components,
        conformal_factor,
    })
}

/// Scalar speed of sound: c_s² = (c²c₀²/‖u‖²) / (1 + c₀²/‖u‖²).
/// Monotone increasing in c₀ and bounded above by c.
pub fn scalar_speed_of_sound(c0: f64, u_norm: f64, c: f64) -> Result<f64> {
    if !(u_norm > 0.0) || !u_norm.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "flow norm must be positive, got {u_norm}"
        )));
    }
    if !(c0 >= 0.0) || !(c > 0.0) {
        return Err(Error::InvalidParameter(
            "speeds must be non-negative (c positive)".into(),
        ));
    }
    let ratio = (c0 / u_norm).powi(2);
    Ok((c * c * ratio / (1.0 + ratio)).sqrt())
}

/// Minkowski coordinates of a Rindler point: t = (χ/c_s) sinh η, x = χ cosh η.
/// Preserves the hyperbola invariant x² − c_s²t² = χ².
pub fn minkowski_from_rindler(p: &RindlerPoint, sound_speed: f64) -> Result<(f64, f64)> {
    if !(sound_speed > 0.0) || !sound_speed.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "sound speed must be positive, got {sound_speed}"
        )));
    }
    let t = (p.chi / sound_speed) * p.eta.sinh();
    let x = p.chi * p.eta.cosh();
    Ok((t, x))
}

/// Proper acceleration of the constant-χ₀ trajectory: a = c_s²/χ₀.
pub fn proper_acceleration(chi0: f64, sound_speed: f64) -> Result<f64> {
    if !(chi0 > 0.0) || !chi0.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "chi must be positive, got {chi0}"
        )));
    }
    Ok(sound_speed * sound_speed / chi0)
}

/// Proper time elapsed at Rindler time η on the constant-χ₀ trajectory:
/// τ = (c_s/a)·η = (χ₀/c_s)·η.
pub fn proper_time(eta: f64, chi0: f64, sound_speed: f64) -> Result<f64> {
    if !(chi0 > 0.0) || !(sound_speed > 0.0) {
        return Err(Error::InvalidParameter(
            "chi and sound speed must be positive".into(),
        ));
    }
    Ok(chi0 * eta / sound_speed)
}

/// Result of the homogeneity validity check for accelerated condensates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneityReport {
    /// (h/L) / (mc/ħ).
    pub ratio: f64,
    pub pass: bool,
}

/// Uniform acceleration is treatable as long as the induced density gradient
/// h/L stays far below the Compton scale mc/ħ; passes when the ratio is
/// below 1e-3.
pub fn homogeneity_check(h: f64, params: &CondensateParams, c: f64) -> Result<HomogeneityReport> {
    if !(h >= 0.0) || !(c > 0.0) {
        return Err(Error::InvalidParameter(
            "h must be non-negative and c positive".into(),
        ));
    }
    let gradient_scale = h / params.trap_length;
    let compton_scale = params.atom_mass * c / HBAR;
    let ratio = gradient_scale / compton_scale;
    Ok(HomogeneityReport {
        ratio,
        pass: ratio < 1e-3,
    })
}
