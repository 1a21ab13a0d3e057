//! Self-check suite behind `becorbit validate`: every module's invariants,
//! executed with fixed seeds so the report is reproducible. Each check
//! reports its worst residual against its threshold.

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bogoliubov::{
    alpha_first_order, beta_first_order, f_sums, f_sum_tail_bound, ChannelMode, CondensateParams,
    ManeuverChannel,
};
use crate::constants::{GM_EARTH, HE4_MASS};
use crate::error::Result;
use crate::experiment::{
    initial_negativity, ExperimentConfig, ManeuverSource, ReferenceOrbit, SweepAxis,
};
use crate::orbits::{hohmann_kicks, transfer_period, OrbitPair};
use crate::spacetime::{minkowski_from_rindler, RindlerPoint};
use crate::symplectic::{
    negativity, symplectic_eigenvalues, two_mode_negativity, two_mode_symplectic_eigenvalues,
    CovarianceMatrix, SymplecticForm, SymplecticTransform,
};

const PI: f64 = std::f64::consts::PI;

/// Outcome of one named invariant check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    /// Worst observed residual.
    pub residual: f64,
    /// Pass iff residual <= threshold.
    pub threshold: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(name: &'static str, residual: f64, threshold: f64) -> Self {
        Self {
            name,
            residual,
            threshold,
            pass: residual <= threshold && residual.is_finite(),
        }
    }
}

fn params(n_max: usize) -> CondensateParams {
    CondensateParams::new(1e-4, 1e-3, HE4_MASS, n_max).expect("reference parameters are valid")
}

/// Deterministic random physical two-mode covariance: a random thermal
/// diagonal conjugated by a random symplectic exp(ΩA) with A symmetric.
pub fn random_physical_two_mode(rng: &mut StdRng) -> CovarianceMatrix {
    let mut a = DMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in i..4 {
            let v = rng.random_range(-0.5..0.5);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let omega = SymplecticForm::new(2).expect("two modes");
    let s = (omega.matrix() * a).exp();
    let nu1 = 1.0 + rng.random_range(0.0..1.5);
    let nu2 = 1.0 + rng.random_range(0.0..1.5);
    let thermal = DMatrix::from_diagonal(&nalgebra::dvector![nu1, nu1, nu2, nu2]);
    let m = &s * thermal * s.transpose();
    let sym = 0.5 * (&m + m.transpose());
    CovarianceMatrix::new(sym).expect("congruence preserves symmetry")
}

/// Runs the whole suite. `omega_perturbation` feeds the negative-control
/// hook: a nonzero value corrupts the reference symplectic form and must
/// make the first check fail.
pub fn run_all(omega_perturbation: f64) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    // 1. Symplectic form identities (with the injection hook).
    {
        let mut worst = 0.0_f64;
        for n in [1usize, 2, 3, 50] {
            let omega = SymplecticForm::new(n)?;
            let mut m = omega.matrix().clone();
            m[(0, 1)] += omega_perturbation;
            let sq = &m * &m + DMatrix::<f64>::identity(2 * n, 2 * n);
            let anti = &m + m.transpose();
            worst = worst.max(sq.abs().max()).max(anti.abs().max());
        }
        checks.push(CheckResult::new("symplectic_form_identities", worst, 1e-15));
    }

    // 2. Vacuum and squeezed-state physicality.
    {
        let mut worst = 0.0_f64;
        for n in [1usize, 3] {
            let margin = CovarianceMatrix::vacuum(n)?.check_physical()?;
            worst = worst.max((-margin).max(0.0));
        }
        for r in [0.0, 0.5, 1.0] {
            let margin = CovarianceMatrix::two_mode_squeezed(r)?.check_physical()?;
            worst = worst.max((-margin).max(0.0));
        }
        checks.push(CheckResult::new("state_physicality", worst, 1e-10));
    }

    // 3. Squeezed states are pure: symplectic eigenvalues equal one.
    {
        let mut worst = 0.0_f64;
        for r in [0.0, 0.25, 0.5, 1.0] {
            let s = CovarianceMatrix::two_mode_squeezed(r)?;
            for nu in symplectic_eigenvalues(&s)? {
                worst = worst.max((nu - 1.0).abs());
            }
        }
        checks.push(CheckResult::new("squeezed_state_purity", worst, 1e-10));
    }

    // 4. Partial transposition is an involution.
    {
        let s = CovarianceMatrix::two_mode_squeezed(0.7)?;
        let twice = s.partial_transpose(2)?.partial_transpose(2)?;
        let diff = (twice.matrix() - s.matrix()).abs().max();
        checks.push(CheckResult::new("partial_transpose_involution", diff, 0.0));
    }

    // 5. Closed-form initial negativity vs the covariance route.
    {
        let mut worst = 0.0_f64;
        for r in [0.0, 0.25, 0.5, 1.0] {
            let n = two_mode_negativity(&CovarianceMatrix::two_mode_squeezed(r)?)?;
            worst = worst.max((n - initial_negativity(r)).abs());
        }
        checks.push(CheckResult::new("initial_negativity_consistency", worst, 1e-9));
    }

    // 6. Two-mode closed form vs the general eigenvalue oracle.
    {
        let mut rng = StdRng::seed_from_u64(0x5EED);
        let mut worst = 0.0_f64;
        for _ in 0..200 {
            let sigma = random_physical_two_mode(&mut rng);
            let (p, m) = two_mode_symplectic_eigenvalues(&sigma)?;
            let general = symplectic_eigenvalues(&sigma)?;
            worst = worst.max((general[0] - p).abs()).max((general[1] - m).abs());
        }
        checks.push(CheckResult::new("closed_form_vs_eigen_oracle", worst, 1e-9));
    }

    // 7. Coefficient parity and (anti)symmetry.
    {
        let mut worst = 0.0_f64;
        for m in 1..=100usize {
            for n in 1..=100usize {
                if (m + n) % 2 == 0 {
                    worst = worst
                        .max(alpha_first_order(m, n).abs())
                        .max(beta_first_order(m, n).abs());
                }
                worst = worst
                    .max((alpha_first_order(m, n) + alpha_first_order(n, m)).abs())
                    .max((beta_first_order(m, n) - beta_first_order(n, m)).abs());
            }
        }
        checks.push(CheckResult::new("coefficient_parity_symmetry", worst, 0.0));
    }

    // 8. f-sum truncation tail.
    {
        let tail = f_sum_tail_bound(1, 100);
        let (fa100, fb100) = f_sums(1, 100)?;
        let (fa50, fb50) = f_sums(1, 50)?;
        let observed = (fa100 - fa50).abs().max((fb100 - fb50).abs());
        checks.push(CheckResult::new(
            "f_sum_tail",
            tail.max(observed),
            crate::bogoliubov::TAIL_TOL,
        ));
    }

    // 9. Channel transforms are symplectic everywhere they are produced.
    {
        let p = params(100);
        let om1 = p.mode_frequency(1)?;
        let mut worst = 0.0_f64;
        for mode in [ChannelMode::Literal, ChannelMode::Composed] {
            for h in [0.1, 0.3] {
                let ch = ManeuverChannel::new(&p, mode, h, om1)?;
                for i in 0..5 {
                    let tau = 0.02 * i as f64;
                    worst = worst.max(ch.transform(tau)?.symplectic_residual()?);
                }
            }
        }
        checks.push(CheckResult::new("channel_symplectic_residual", worst, 1e-10));
    }

    // 10. Composed-channel periodicity in the burn duration.
    {
        let p = params(100);
        let om1 = p.mode_frequency(1)?;
        let ch = ManeuverChannel::new(&p, ChannelMode::Composed, 0.2, om1)?;
        let period = 2.0 * PI / om1;
        let mut worst = 0.0_f64;
        for i in 0..4 {
            let tau = 0.004 + 0.005 * i as f64;
            let s1 = ch.transform(tau)?;
            let s2 = ch.transform(tau + period)?;
            worst = worst.max((s1.matrix() - s2.matrix()).abs().max());
        }
        checks.push(CheckResult::new("composed_channel_periodicity", worst, 1e-8));
    }

    // 11. Negativity invariant under single-mode rotations.
    {
        let s = CovarianceMatrix::two_mode_squeezed(0.5)?;
        let n0 = two_mode_negativity(&s)?;
        let mut rng = StdRng::seed_from_u64(0xA11CE);
        let mut worst = 0.0_f64;
        for _ in 0..100 {
            let angle = rng.random_range(0.0..2.0 * PI);
            let mode = if rng.random_range(0..2) == 0 { 1 } else { 2 };
            let rot = SymplecticTransform::single_mode_rotation(2, mode, angle)?;
            let n = two_mode_negativity(&s.transform_by(&rot)?)?;
            worst = worst.max((n - n0).abs());
        }
        checks.push(CheckResult::new("rotation_invariance", worst, 1e-10));
    }

    // 12. Covariance route vs the closed-form second-order negativity.
    {
        let cfg = ExperimentConfig {
            condensate: params(100),
            thruster_acceleration: 1e-3,
            squeezing: 0.5,
            mode_k: 1,
            mode_k_prime: 1,
            omega1_override: None,
            channel_mode: ChannelMode::Literal,
            maneuver: ManeuverSource::DeltaTau(0.0123),
            reference_orbit: ReferenceOrbit::default(),
        };
        let res = cfg.evaluate()?;
        checks.push(CheckResult::new(
            "covariance_vs_closed_form",
            (res.n_num - res.n_pert).abs(),
            3e-4,
        ));
    }

    // 13. Degradation bound over a composed sweep.
    {
        let cfg = ExperimentConfig {
            condensate: params(100),
            thruster_acceleration: 2e-3,
            squeezing: 0.5,
            mode_k: 1,
            mode_k_prime: 1,
            omega1_override: None,
            channel_mode: ChannelMode::Composed,
            maneuver: ManeuverSource::DeltaTau(0.0),
            reference_orbit: ReferenceOrbit::default(),
        };
        let om1 = cfg.omega1()?;
        let rows = crate::experiment::sweep(&cfg, SweepAxis::DeltaTau, 0.0, 2.0 * PI / om1, 41)?;
        let mut worst = 0.0_f64;
        for row in rows {
            worst = worst.max(row.n_num - row.n0);
        }
        checks.push(CheckResult::new("degradation_bound", worst.max(0.0), 1e-9));
    }

    // 14. Rindler map preserves the hyperbola invariant (10^4-point grid,
    // residual scaled by the cosh²eta conditioning of the subtraction).
    {
        let cs = 1e-3;
        let mut worst = 0.0_f64;
        for i in 0..100 {
            let eta = -5.0 + 10.0 * (i as f64) / 99.0;
            for j in 0..100 {
                let chi = 1e-5 + 1e-2 * (j as f64) / 99.0;
                let p = RindlerPoint::new(eta, chi)?;
                let (t, x) = minkowski_from_rindler(&p, cs)?;
                let scale = eta.cosh().powi(2).max(1.0);
                let rel = ((x - cs * t) * (x + cs * t) / (chi * chi) - 1.0).abs() / scale;
                worst = worst.max(rel);
            }
        }
        checks.push(CheckResult::new("rindler_hyperbola_invariant", worst, 1e-12));
    }

    // 15. Orbital scaling consistency under a unit rescaling.
    {
        let k: f64 = 2.3;
        let o1 = OrbitPair::new(GM_EARTH, 6.771e6, 6.9e6)?;
        let o2 = OrbitPair::new(
            GM_EARTH * k * k,
            6.771e6 * k.powf(2.0 / 3.0),
            6.9e6 * k.powf(2.0 / 3.0),
        )?;
        let p1 = transfer_period(&o1);
        let p2 = transfer_period(&o2);
        let (dv1, _) = hohmann_kicks(&o1);
        let (dv2, _) = hohmann_kicks(&o2);
        let worst = ((p2.exact - p1.exact) / p1.exact)
            .abs()
            .max((dv2 / dv1 / k.powf(2.0 / 3.0) - 1.0).abs());
        checks.push(CheckResult::new("orbit_unit_scaling", worst, 1e-12));
    }

    // 16. Negativity clamp boundaries.
    {
        let worst = negativity(1.0)?.max(negativity(2.5)?);
        checks.push(CheckResult::new("negativity_clamp", worst, 0.0));
    }

    Ok(checks)
}
