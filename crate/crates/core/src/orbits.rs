//! Hohmann-transfer orbital mechanics: velocity kicks, transfer period,
//! gravitational-potential difference, and the mapping from a potential
//! change to the duration of a constant-thrust burn.

use crate::constants::THRUSTER_DV_CAPABILITY;
use crate::error::{Error, Result};

const PI: f64 = std::f64::consts::PI;

/// A pair of circular orbits around the same primary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitPair {
    /// Gravitational parameter GM (m³/s²).
    pub gm: f64,
    /// Lower circular radius (m).
    pub r_low: f64,
    /// Higher circular radius (m).
    pub r_high: f64,
}

impl OrbitPair {
    pub fn new(gm: f64, r_low: f64, r_high: f64) -> Result<Self> {
        if !(gm > 0.0) || !gm.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gravitational parameter must be positive, got {gm}"
            )));
        }
        if !(r_low > 0.0) || !(r_high >= r_low) || !r_high.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "orbit radii must satisfy 0 < r_low <= r_high, got {r_low}, {r_high}"
            )));
        }
        Ok(Self { gm, r_low, r_high })
    }
}

/// Both velocity kicks of the transfer:
/// Δv_l = √(GM/r_l)(√(2r_h/(r_l+r_h)) − 1) to leave the lower orbit and
/// Δv_h = √(GM/r_h)(1 − √(2r_l/(r_l+r_h))) to circularize at the higher one.
pub fn hohmann_kicks(orbit: &OrbitPair) -> (f64, f64) {
    let OrbitPair { gm, r_low, r_high } = *orbit;
    let sum = r_low + r_high;
    let dv_low = (gm / r_low).sqrt() * ((2.0 * r_high / sum).sqrt() - 1.0);
    let dv_high = (gm / r_high).sqrt() * (1.0 - (2.0 * r_low / sum).sqrt());
    (dv_low.max(0.0), dv_high.max(0.0))
}

/// Transfer period, both as the outer-radius approximation P ≈ 2π√(r_h³/GM)
/// and exactly from the half-ellipse semi-major axis (r_l + r_h)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferPeriod {
    /// 2π√(r_h³/GM): treats the outer radius as the semi-major axis.
    pub approx: f64,
    /// 2π√(a³/GM) with a = (r_l + r_h)/2.
    pub exact: f64,
}

pub fn transfer_period(orbit: &OrbitPair) -> TransferPeriod {
    let OrbitPair { gm, r_low, r_high } = *orbit;
    let approx = 2.0 * PI * (r_high.powi(3) / gm).sqrt();
    let a = 0.5 * (r_low + r_high);
    let exact = 2.0 * PI * (a.powi(3) / gm).sqrt();
    TransferPeriod { approx, exact }
}

/// Difference in gravitational potential between the orbits,
/// δφ = GM(1/r_l − 1/r_h) (m²/s²). Reduces to GM·δr/r_h² at first order
/// in δr = r_h − r_l.
pub fn delta_phi(orbit: &OrbitPair) -> f64 {
    orbit.gm * (1.0 / orbit.r_low - 1.0 / orbit.r_high)
}

/// Small-altitude-change kick from the potential difference:
/// Δv ≈ √(r_h/GM)·δφ/4.
pub fn dv_from_delta_phi(delta_phi: f64, r_high: f64, gm: f64) -> Result<f64> {
    if !(r_high > 0.0) || !(gm > 0.0) {
        return Err(Error::InvalidParameter(
            "radius and gravitational parameter must be positive".into(),
        ));
    }
    if !(delta_phi >= 0.0) || !delta_phi.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "potential difference must be non-negative, got {delta_phi}"
        )));
    }
    Ok((r_high / gm).sqrt() * delta_phi / 4.0)
}

/// Inverse of [`dv_from_delta_phi`].
pub fn delta_phi_from_dv(dv: f64, r_high: f64, gm: f64) -> Result<f64> {
    if !(r_high > 0.0) || !(gm > 0.0) {
        return Err(Error::InvalidParameter(
            "radius and gravitational parameter must be positive".into(),
        ));
    }
    Ok(4.0 * dv * (gm / r_high).sqrt())
}

/// Duration of a constant-acceleration burn delivering the kick: Δτ = Δv/a.
pub fn duration_from_kick(dv: f64, acceleration: f64) -> Result<f64> {
    if !(acceleration > 0.0) || !acceleration.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "thruster acceleration must be positive, got {acceleration}"
        )));
    }
    if !(dv >= 0.0) || !dv.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "velocity kick must be non-negative, got {dv}"
        )));
    }
    Ok(dv / acceleration)
}

/// Fully derived maneuver: kicks, periods, potential difference and the
/// burn duration of the first kick at the given thruster acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManeuverPlan {
    pub orbit: OrbitPair,
    pub dv_low: f64,
    pub dv_high: f64,
    pub period: TransferPeriod,
    pub delta_phi: f64,
    /// Burn duration of the first kick, Δτ = Δv_l/a.
    pub delta_tau_low: f64,
}

impl ManeuverPlan {
    pub fn for_orbit(orbit: OrbitPair, thruster_acceleration: f64) -> Result<Self> {
        let (dv_low, dv_high) = hohmann_kicks(&orbit);
        let period = transfer_period(&orbit);
        let dphi = delta_phi(&orbit);
        let delta_tau_low = duration_from_kick(dv_low, thruster_acceleration)?;
        Ok(Self {
            orbit,
            dv_low,
            dv_high,
            period,
            delta_phi: dphi,
            delta_tau_low,
        })
    }

    /// Whether both kicks together fit the reference thruster's total
    /// delta-v budget.
    pub fn within_capability(&self) -> bool {
        self.dv_low + self.dv_high <= THRUSTER_DV_CAPABILITY
    }
}
