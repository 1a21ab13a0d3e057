//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured quantities (visible with `--nocapture`). Run with
//! `cargo test --test acceptance -p becorbit-cli`.

use std::process::Command;
use std::time::Instant;

use becorbit::bogoliubov::{
    alpha_first_order, beta_first_order, f_sums, ChannelMode, CondensateParams,
};
use becorbit::constants::{GM_EARTH, HE4_MASS};
use becorbit::experiment::{
    initial_negativity, sweep, ExperimentConfig, ManeuverSource, ReferenceOrbit, SweepAxis,
};
use becorbit::orbits::{hohmann_kicks, transfer_period, OrbitPair};
use becorbit::symplectic::{
    symplectic_eigenvalues, two_mode_negativity, two_mode_symplectic_eigenvalues,
    CovarianceMatrix,
};

const PI: f64 = std::f64::consts::PI;

fn fig2_config(a: f64, mode: ChannelMode) -> ExperimentConfig {
    ExperimentConfig {
        condensate: CondensateParams::new(1e-4, 1e-3, HE4_MASS, 100).unwrap(),
        thruster_acceleration: a,
        squeezing: 0.5,
        mode_k: 1,
        mode_k_prime: 1,
        omega1_override: None,
        channel_mode: mode,
        maneuver: ManeuverSource::DeltaTau(0.0),
        reference_orbit: ReferenceOrbit::default(),
    }
}

#[test]
fn criterion_01_initial_negativity_regression() {
    let start = Instant::now();
    let n_half = initial_negativity(0.5);
    let n_zero = initial_negativity(0.0);
    let elapsed = start.elapsed();
    assert!((n_half - 0.859141).abs() <= 1e-6, "N(0.5) = {n_half}");
    assert_eq!(n_zero, 0.0);
    assert!(elapsed.as_micros() < 1000, "took {elapsed:?}");
    println!(
        "[PASS] criterion 1: initial negativity {n_half:.6} (|err| <= 1e-6), N(0) = 0, {elapsed:?}"
    );
}

#[test]
fn criterion_02_negativity_formula_consistency() {
    let mut worst = 0.0_f64;
    for r in [0.0, 0.25, 0.5, 1.0] {
        let sigma = CovarianceMatrix::two_mode_squeezed(r).unwrap();
        let via_covariance = two_mode_negativity(&sigma).unwrap();
        let closed_form = initial_negativity(r);
        worst = worst.max((via_covariance - closed_form).abs());
    }
    assert!(worst <= 1e-9, "worst deviation {worst}");
    println!("[PASS] criterion 2: covariance-route negativity matches closed form, worst {worst:.3e} <= 1e-9");
}

#[test]
fn criterion_03_closed_form_vs_eigen_oracle_1000_states() {
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xACCE97);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let sigma = becorbit::validate::random_physical_two_mode(&mut rng);
        let (nu_plus, nu_minus) = two_mode_symplectic_eigenvalues(&sigma).unwrap();
        let general = symplectic_eigenvalues(&sigma).unwrap();
        worst = worst
            .max((general[0] - nu_plus).abs())
            .max((general[1] - nu_minus).abs());
    }
    let elapsed = start.elapsed();
    assert!(worst <= 1e-9, "worst deviation {worst}");
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "[PASS] criterion 3: closed form vs iOmega-sigma oracle on 1000 states, worst {worst:.3e} <= 1e-9, {elapsed:?}"
    );
}

#[test]
fn criterion_04_first_order_coefficient_regression() {
    // in-test oracle expressions, written out from the coefficient formulas
    let alpha_21_expected = -2.0 * 2.0_f64.sqrt() / (PI * PI);
    let beta_21_expected = 2.0 * 2.0_f64.sqrt() / (27.0 * PI * PI);
    let a21 = alpha_first_order(2, 1);
    let b21 = beta_first_order(2, 1);
    assert!((a21 - alpha_21_expected).abs() <= 1e-6, "alpha21 = {a21}");
    assert!((b21 - beta_21_expected).abs() <= 1e-12, "beta21 = {b21}");
    assert!((b21 - 0.010614).abs() <= 1e-6, "beta21 = {b21}");
    for m in 1..=100usize {
        for n in 1..=100usize {
            let a = alpha_first_order(m, n);
            let b = beta_first_order(m, n);
            if (m + n) % 2 == 0 {
                assert_eq!(a, 0.0, "parity zero alpha({m},{n})");
                assert_eq!(b, 0.0, "parity zero beta({m},{n})");
            }
            assert_eq!(a, -alpha_first_order(n, m), "alpha antisymmetry ({m},{n})");
            assert_eq!(b, beta_first_order(n, m), "beta symmetry ({m},{n})");
        }
    }
    println!(
        "[PASS] criterion 4: alpha21 = {a21:.6} beta21 = {b21:.6}; parity zeros and (anti)symmetry exact for m,n <= 100"
    );
}

#[test]
fn criterion_05_f_sum_convergence() {
    // independent oracle: direct partial summation written out here
    let oracle = |kp: usize, n_max: usize| -> (f64, f64) {
        let mut fa = 0.0;
        let mut fb = 0.0;
        for n in 1..=n_max {
            if n != kp {
                let d = kp as f64 - n as f64;
                let parity = if (kp + n).is_multiple_of(2) { 1.0 } else { -1.0 };
                fa += ((-1.0 + parity) * ((kp * n) as f64).sqrt() / (PI * PI * d.powi(3))).powi(2);
            }
            let s = (kp + n) as f64;
            let parity = if (kp + n).is_multiple_of(2) { 1.0 } else { -1.0 };
            fb += ((1.0 - parity) * ((kp * n) as f64).sqrt() / (PI * PI * s.powi(3))).powi(2);
        }
        (fa, fb)
    };
    let (fa, fb) = f_sums(1, 100).unwrap();
    let (fa_oracle, fb_oracle) = oracle(1, 100);
    assert!((fa - fa_oracle).abs() <= 1e-12);
    assert!((fb - fb_oracle).abs() <= 1e-12);
    assert!((fa - 8.2374e-2).abs() <= 1e-6, "f_alpha = {fa}");
    assert!((fb - 1.255e-4).abs() <= 1e-6, "f_beta = {fb}");
    let (fa2, fb2) = f_sums(1, 200).unwrap();
    assert!((fa2 - fa).abs() < 1e-8, "doubling changed f_alpha by {}", (fa2 - fa).abs());
    assert!((fb2 - fb).abs() < 1e-8, "doubling changed f_beta by {}", (fb2 - fb).abs());
    println!(
        "[PASS] criterion 5: f_alpha = {fa:.6e}, f_beta = {fb:.6e}; oracle match <= 1e-12; doubling drift {:.1e}/{:.1e} < 1e-8",
        (fa2 - fa).abs(),
        (fb2 - fb).abs()
    );
}

#[test]
fn criterion_06_perturbative_numeric_agreement() {
    let start = Instant::now();
    let gap_at = |h_target: f64| -> f64 {
        // a = h * cs^2 / L with the reference condensate
        let a = h_target * 1e-6 / 1e-4;
        let mut cfg = fig2_config(a, ChannelMode::Literal);
        cfg.maneuver = ManeuverSource::DeltaTau(0.0123);
        let res = cfg.evaluate().unwrap();
        (res.n_pert - res.n_num).abs()
    };
    let gap_02 = gap_at(0.2);
    let gap_01 = gap_at(0.1);
    let gap_005 = gap_at(0.05);
    let elapsed = start.elapsed();
    assert!(gap_01 <= 3e-4, "gap at h=0.1 is {gap_01}");
    let ratio_a = gap_02 / gap_01;
    let ratio_b = gap_01 / gap_005;
    assert!((8.0..=32.0).contains(&ratio_a), "ratio 0.2/0.1 = {ratio_a}");
    assert!((8.0..=32.0).contains(&ratio_b), "ratio 0.1/0.05 = {ratio_b}");
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "[PASS] criterion 6: gap(h=0.1) = {gap_01:.3e} <= 3e-4; halving ratios {ratio_a:.1}, {ratio_b:.1} in [8, 32]; {elapsed:?}"
    );
}

#[test]
fn criterion_07_degradation_and_h_squared_scaling() {
    let depth_and_bound = |a: f64| -> (f64, bool) {
        let cfg = fig2_config(a, ChannelMode::Composed);
        let period = 2.0 * PI / cfg.omega1().unwrap();
        let rows = sweep(&cfg, SweepAxis::DeltaTau, 0.0, period, 41).unwrap();
        let mut depth = 0.0_f64;
        let mut bounded = true;
        for row in &rows {
            depth = depth.max(row.n0 - row.n_num);
            bounded &= row.n_num <= row.n0 + 1e-9;
        }
        (depth, bounded)
    };
    let (d1, ok1) = depth_and_bound(1e-3);
    let (d2, ok2) = depth_and_bound(2e-3);
    let (_, ok3) = depth_and_bound(3e-3);
    assert!(ok1 && ok2 && ok3, "negativity exceeded its initial value");
    let ratio = d2 / d1;
    assert!((3.6..=4.4).contains(&ratio), "depth ratio = {ratio}");

    // periodicity of the composed-channel negativity
    let cfg = fig2_config(2e-3, ChannelMode::Composed);
    let period = 2.0 * PI / cfg.omega1().unwrap();
    let channel = cfg.channel().unwrap();
    let mut worst = 0.0_f64;
    for i in 0..4 {
        let tau = 0.004 + 0.005 * i as f64;
        let n1 =
            becorbit::experiment::negativity_via_blocks(&channel.transform(tau).unwrap(), 0.5, 1)
                .unwrap();
        let n2 = becorbit::experiment::negativity_via_blocks(
            &channel.transform(tau + period).unwrap(),
            0.5,
            1,
        )
        .unwrap();
        worst = worst.max((n1 - n2).abs());
    }
    assert!(worst <= 1e-8, "periodicity deviation {worst}");
    println!(
        "[PASS] criterion 7: degradation bounded on the grid; depth ratio {ratio:.2} in [3.6, 4.4]; periodicity deviation {worst:.2e} <= 1e-8"
    );
}

#[test]
fn criterion_08_oscillation_period_and_depth_bracket() {
    let start = Instant::now();
    let mut cfg = fig2_config(3e-3, ChannelMode::Composed);
    cfg.omega1_override = Some(2.0 * PI * 50.0);
    let rows = sweep(&cfg, SweepAxis::DeltaPhi, 0.0, 4.0, 500).unwrap();

    let degradation: Vec<f64> = rows.iter().map(|r| r.n0 - r.n_num).collect();
    let max_depth = degradation.iter().cloned().fold(0.0_f64, f64::max);
    let n0 = rows[0].n0;
    let max_pct = 100.0 * max_depth / n0;
    assert!(
        (2.0..=30.0).contains(&max_pct),
        "max degradation {max_pct}%"
    );

    // the oscillation returns to (near) zero degradation once per period;
    // measure the spacing of those minima
    let threshold = 0.05 * max_depth;
    let mut minima = Vec::new();
    for i in 0..rows.len() {
        let left_ok = i == 0 || degradation[i] <= degradation[i - 1];
        let right_ok = i + 1 == rows.len() || degradation[i] <= degradation[i + 1];
        if left_ok && right_ok && degradation[i] < threshold {
            minima.push(rows[i].delta_phi);
        }
    }
    assert!(minima.len() >= 2, "found {} near-zero minima", minima.len());
    let period = (minima.last().unwrap() - minima.first().unwrap()) / (minima.len() - 1) as f64;
    assert!(
        (1.5..=2.5).contains(&period),
        "oscillation period {period} m^2/s^2"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!(
        "[PASS] criterion 8: delta-phi period {period:.3} in [1.5, 2.5]; max degradation {max_pct:.2}% in [2, 30]; 500 points in {elapsed:?}"
    );
}

#[test]
fn criterion_09_hohmann_regression() {
    let orbit = OrbitPair::new(GM_EARTH, 6.771e6, 6.772e6).unwrap();
    let (dv_low, _) = hohmann_kicks(&orbit);
    assert!((dv_low - 0.28327).abs() <= 1e-4, "dv_l = {dv_low}");

    let leo = OrbitPair::new(GM_EARTH, 6.771e6, 6.771e6).unwrap();
    let period = transfer_period(&leo);
    assert!((period.approx - 5545.0).abs() <= 1.0, "period = {}", period.approx);
    assert!((period.approx - 5000.0).abs() / 5000.0 <= 0.15);

    let (dvl, dvh) = hohmann_kicks(&leo);
    assert_eq!(dvl, 0.0);
    assert_eq!(dvh, 0.0);
    println!(
        "[PASS] criterion 9: dv_l = {dv_low:.5} m/s (0.28327 +/- 1e-4); period {:.1} s (5545 +/- 1, within 15% of 5000); degenerate orbit exact zeros",
        period.approx
    );
}

#[test]
fn criterion_10_symplectic_invariants_and_validate() {
    // every transform produced across a full sweep satisfies the symplectic
    // identity (construction enforces <= 1e-10; measure the worst residual)
    let cfg = fig2_config(3e-3, ChannelMode::Composed);
    let channel = cfg.channel().unwrap();
    let period = 2.0 * PI / cfg.omega1().unwrap();
    let mut worst = 0.0_f64;
    for i in 0..50 {
        let tau = period * (i as f64) / 49.0;
        let s = channel.transform(tau).unwrap();
        worst = worst.max(s.symplectic_residual().unwrap());
    }
    assert!(worst <= 1e-10, "worst symplectic residual {worst}");

    let out = Command::new(env!("CARGO_BIN_EXE_becorbit"))
        .arg("validate")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "validate must exit 0");
    println!(
        "[PASS] criterion 10: worst sweep residual {worst:.2e} <= 1e-10; `becorbit validate` exits 0"
    );
}

#[test]
fn criterion_11_sweep_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path1 = dir.path().join("run1.csv");
    let path2 = dir.path().join("run2.csv");
    for path in [&path1, &path2] {
        let out = Command::new(env!("CARGO_BIN_EXE_becorbit"))
            .args([
                "sweep", "--a", "2e-3", "--axis", "dphi", "--min", "0", "--max", "2",
                "--steps", "60", "--omega1", "314.159265358979", "--out",
                path.to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        assert!(out.status.success());
    }
    let a = std::fs::read(&path1).unwrap();
    let b = std::fs::read(&path2).unwrap();
    assert_eq!(a, b, "repeated sweeps must be byte-identical");
    println!(
        "[PASS] criterion 11: repeated identical sweep commands produced byte-identical CSV ({} bytes)",
        a.len()
    );
}
