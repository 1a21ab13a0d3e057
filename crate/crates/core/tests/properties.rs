//! Property tests over the phase-space engine and the coefficient machinery.

use nalgebra::DMatrix;
use proptest::prelude::*;

use becorbit::bogoliubov::{beta_first_order, total_coefficients};
use becorbit::orbits::{hohmann_kicks, OrbitPair};
use becorbit::spacetime::{minkowski_from_rindler, RindlerPoint};
use becorbit::symplectic::{
    negativity, symplectic_eigenvalues, two_mode_negativity, two_mode_symplectic_eigenvalues,
    CovarianceMatrix, SymplecticForm, SymplecticTransform,
};

/// Random physical two-mode covariance built from a bounded symmetric
/// generator and thermal occupations.
fn physical_two_mode(seed: [f64; 12]) -> CovarianceMatrix {
    let mut a = DMatrix::zeros(4, 4);
    let mut idx = 0;
    for i in 0..4 {
        for j in i..4 {
            a[(i, j)] = seed[idx];
            a[(j, i)] = seed[idx];
            idx += 1;
        }
    }
    let omega = SymplecticForm::new(2).unwrap();
    let s = (omega.matrix() * a).exp();
    let nu1 = 1.0 + seed[10].abs();
    let nu2 = 1.0 + seed[11].abs();
    let thermal = DMatrix::from_diagonal(&nalgebra::dvector![nu1, nu1, nu2, nu2]);
    let m = &s * thermal * s.transpose();
    CovarianceMatrix::new(0.5 * (&m + m.transpose())).unwrap()
}

proptest! {
    #[test]
    fn partial_transpose_is_involution(seed in prop::array::uniform12(-0.5f64..0.5)) {
        let sigma = physical_two_mode(seed);
        let twice = sigma.partial_transpose(2).unwrap().partial_transpose(2).unwrap();
        prop_assert_eq!(twice.matrix(), sigma.matrix());
    }

    #[test]
    fn negativity_monotone_nonincreasing(a in 0.01f64..1.0, b in 0.01f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(negativity(lo).unwrap() >= negativity(hi).unwrap());
    }

    #[test]
    fn closed_form_matches_eigen_oracle(seed in prop::array::uniform12(-0.5f64..0.5)) {
        let sigma = physical_two_mode(seed);
        let (p, m) = two_mode_symplectic_eigenvalues(&sigma).unwrap();
        let general = symplectic_eigenvalues(&sigma).unwrap();
        prop_assert!((general[0] - p).abs() < 1e-9, "{} vs {}", general[0], p);
        prop_assert!((general[1] - m).abs() < 1e-9, "{} vs {}", general[1], m);
    }

    #[test]
    fn physical_states_have_no_negativity_surprise(seed in prop::array::uniform12(-0.5f64..0.5)) {
        // symplectic eigenvalues of a physical state stay >= 1
        let sigma = physical_two_mode(seed);
        let (_, m) = two_mode_symplectic_eigenvalues(&sigma).unwrap();
        prop_assert!(m >= 1.0 - 1e-9);
    }

    #[test]
    fn rotations_preserve_negativity(r in 0.0f64..1.2, angle in 0.0f64..6.3, mode in 1usize..3) {
        let sigma = CovarianceMatrix::two_mode_squeezed(r).unwrap();
        let n0 = two_mode_negativity(&sigma).unwrap();
        let rot = SymplecticTransform::single_mode_rotation(2, mode, angle).unwrap();
        let n1 = two_mode_negativity(&sigma.transform_by(&rot).unwrap()).unwrap();
        prop_assert!((n0 - n1).abs() <= 1e-10);
    }

    #[test]
    fn coefficient_moduli_phase_free(
        m in 1usize..20,
        n in 1usize..20,
        dtau in 0.0f64..5.0,
        h in 0.0f64..0.5,
    ) {
        let om1 = 2.0 * std::f64::consts::PI * 10.0;
        let (a0, b0) = total_coefficients(m, n, h, 0.0, om1);
        let (a, b) = total_coefficients(m, n, h, dtau, om1);
        prop_assert!((a.norm() - a0.norm()).abs() < 1e-12);
        prop_assert!((b.norm() - b0.norm()).abs() < 1e-12);
    }

    #[test]
    fn pair_coefficient_symmetry(m in 1usize..60, n in 1usize..60) {
        prop_assert_eq!(beta_first_order(m, n), beta_first_order(n, m));
    }

    #[test]
    fn hohmann_kicks_nonnegative_and_ordered(
        r_l in 6.5e6f64..8.0e6,
        dr in 0.0f64..2.0e6,
    ) {
        let orbit = OrbitPair::new(3.986004418e14, r_l, r_l + dr).unwrap();
        let (dvl, dvh) = hohmann_kicks(&orbit);
        prop_assert!(dvl >= 0.0 && dvh >= 0.0);
        if dr == 0.0 {
            prop_assert_eq!(dvl, 0.0);
            prop_assert_eq!(dvh, 0.0);
        } else {
            prop_assert!(dvl > 0.0 && dvh > 0.0);
        }
    }

    #[test]
    fn rindler_hyperbola_preserved(eta in -5.0f64..5.0, chi in 1e-5f64..1e-2) {
        let cs = 1e-3;
        let p = RindlerPoint::new(eta, chi).unwrap();
        let (t, x) = minkowski_from_rindler(&p, cs).unwrap();
        let inv = (x - cs * t) * (x + cs * t);
        let scale = eta.cosh().powi(2).max(1.0);
        prop_assert!(((inv - chi * chi) / (chi * chi)).abs() / scale < 1e-12);
    }
}
