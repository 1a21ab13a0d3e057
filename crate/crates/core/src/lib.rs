//! Simulator for the degradation of entanglement between phonon modes of two
//! Bose-Einstein condensates when one condensate rides a satellite through an
//! orbit change.
//!
//! The pipeline: two trapped quasi-1D condensates share a two-mode squeezed
//! state between one phonon mode of each. One satellite performs the first
//! kick of a Hohmann transfer — a finite period of uniform proper
//! acceleration — which mixes the moving condensate's Bogoliubov modes and
//! creates quasiparticle pairs. In phase space this is a symplectic channel
//! acting on the covariance matrix; the surviving entanglement is quantified
//! by the negativity computed from the smallest symplectic eigenvalue of the
//! partially transposed two-mode state.
//!
//! Module map:
//! - [`symplectic`] — Gaussian-state engine: covariance matrices, symplectic
//!   transforms, partial trace/transpose, symplectic spectra, negativity.
//! - [`bogoliubov`] — mode structure of the trapped phonon field, first-order
//!   mixing/pair-creation coefficients, channel transforms, f-sums.
//! - [`spacetime`] — acoustic-metric and Rindler-coordinate utilities.
//! - [`orbits`] — Hohmann transfer kicks, transfer period, potential
//!   difference, and the mapping to acceleration duration.
//! - [`experiment`] — end-to-end negativity evaluation (closed form and
//!   covariance path), parameter sweeps, measurement budgets.
//! - [`validate`] — the self-check suite behind `becorbit validate`.

// Validation guards are written as `!(x > 0.0)` so NaN inputs fail them;
// the suggested `partial_cmp` rewrite would lose that.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bogoliubov;
pub mod error;
pub mod experiment;
pub mod orbits;
pub mod spacetime;
pub mod symplectic;
pub mod validate;

pub use error::{Error, Result};

/// Physical constants shared across modules (SI units).
pub mod constants {
    /// Speed of light in vacuum (m/s).
    pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
    /// Reduced Planck constant (J·s).
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Standard gravitational parameter of the Earth (m³/s²).
    pub const GM_EARTH: f64 = 3.986_004_418e14;
    /// Mean Earth radius (m).
    pub const R_EARTH: f64 = 6.371e6;
    /// Mass of a helium-4 atom (kg).
    pub const HE4_MASS: f64 = 6.6465e-27;
    /// Single-axis thruster delta-v capability of the reference
    /// nanosatellite pair (m/s).
    pub const THRUSTER_DV_CAPABILITY: f64 = 11.1;
}
