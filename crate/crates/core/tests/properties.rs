use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use selfadjoint::annulus::{boundary_flux, g_from_u, BoundaryConditionMatrix};
use selfadjoint::channels::ModelParams;
use selfadjoint::cli::{format_float, parse_config};
use selfadjoint::extensions::{
    bound_state_energy_theta, bound_state_energy_u, bound_states, extension_channels, mixing_matrix,
    reparameterize_theta, ExtensionMatrix,
};
use selfadjoint::linalg::{random_hermitian, random_unitary};
use selfadjoint::specfun::{bessel_j, bessel_j_prime, bessel_y, bessel_y_prime};

const NUS: [f64; 2] = [0.5, SQRT_2 - 0.5];

fn mono() -> ModelParams {
    ModelParams::monopole(0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn link_map_is_hermitian(seed in any::<u64>(), r0 in 0.02f64..1.0) {
        let u = ExtensionMatrix::new(mono(), random_unitary(4, &mut ChaCha8Rng::seed_from_u64(seed)), 1e-10).unwrap();
        let g = g_from_u(&u, r0).unwrap();
        prop_assert!(g.hermiticity_defect <= 1e-9);
    }

    #[test]
    fn theta_and_u_forms_agree(k in 0usize..2, f in -0.999f64..0.999) {
        let nu = NUS[k];
        let theta = f * (PI - 0.5 * PI * nu);
        let et = bound_state_energy_theta(theta, nu, 1.0).unwrap();
        let eu = bound_state_energy_u(Complex64::from_polar(1.0, theta), nu, 1.0).unwrap().unwrap();
        prop_assert!(((eu.re - et) / et).abs() < 1e-10);
        prop_assert!(eu.im.abs() <= 1e-9 * et.abs());
    }

    #[test]
    fn energy_rises_with_theta(k in 0usize..2, a in -0.99f64..0.99, b in -0.99f64..0.99) {
        let nu = NUS[k];
        let edge = PI - 0.5 * PI * nu;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-6);
        let e_lo = bound_state_energy_theta(lo * edge, nu, 1.0).unwrap();
        let e_hi = bound_state_energy_theta(hi * edge, nu, 1.0).unwrap();
        prop_assert!(e_lo < e_hi && e_hi < 0.0);
    }

    #[test]
    fn energy_is_independent_of_the_deficiency_scale(k in 0usize..2, f in -0.9f64..0.9, s2 in 0.2f64..5.0) {
        let nu = NUS[k];
        let theta = f * (PI - 0.5 * PI * nu);
        let e1 = bound_state_energy_theta(theta, nu, 1.0).unwrap();
        if let Some(t2) = reparameterize_theta(theta, nu, 1.0, 1.0, s2).unwrap() {
            let e2 = bound_state_energy_theta(t2, nu, s2).unwrap();
            prop_assert!((e2 / e1 - 1.0).abs() < 1e-9, "{} vs {}", e1, e2);
            let back = reparameterize_theta(t2, nu, 1.0, s2, 1.0).unwrap().unwrap();
            prop_assert!((back - theta).abs() < 1e-9);
        }
    }

    #[test]
    fn bound_states_never_exceed_four(thetas in prop::array::uniform4(-PI..PI)) {
        let u = ExtensionMatrix::diagonal(mono(), &thetas).unwrap();
        let states = bound_states(&u);
        prop_assert!(states.len() <= 4);
        for b in states {
            prop_assert!(thetas[b.index].cos() > -(0.5 * PI * b.channel.nu).cos());
        }
    }

    #[test]
    fn diagonal_u_does_not_mix(thetas in prop::array::uniform4(-PI..PI), e in 0.05f64..5.0) {
        let u = ExtensionMatrix::diagonal(mono(), &thetas).unwrap();
        let m = mixing_matrix(&u, e).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    prop_assert!(m.a_n[(i, j)].norm() < 1e-12 && m.a_s[(i, j)].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hermitian_g_conserves_flux(seed in any::<u64>(), re in prop::array::uniform4(-1.0f64..1.0), im in prop::array::uniform4(-1.0f64..1.0)) {
        let ch = extension_channels(&mono()).unwrap();
        let g = BoundaryConditionMatrix::new(0.1, ch, random_hermitian(4, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let psi: Vec<Complex64> = (0..4).map(|i| Complex64::new(re[i], im[i])).collect();
        prop_assert!(boundary_flux(&g, &psi).unwrap().imaginary_part <= 1e-12);
    }

    #[test]
    fn wronskian(nu in 0.05f64..3.0, x in 0.01f64..80.0) {
        prop_assume!((nu - nu.round()).abs() > 1e-3);
        let w = bessel_j(nu, x).unwrap() * bessel_y_prime(nu, x).unwrap()
            - bessel_j_prime(nu, x).unwrap() * bessel_y(nu, x).unwrap();
        prop_assert!((w * PI * x / 2.0 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn floats_round_trip(x in any::<f64>()) {
        prop_assume!(x.is_finite());
        prop_assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn config_emit_is_canonical(thetas in prop::array::uniform4(-PI..PI), mu in 0.1f64..10.0, n in 100usize..100_000) {
        let text = format!(
            r#"{{"model":{{"type":"monopole","mu":{mu}}},"extension":{{"diagonal_thetas":{thetas:?}}},"oracle":{{"n":{n}}}}}"#
        );
        let once = parse_config(&text).unwrap().emit();
        let cfg = parse_config(&once).unwrap();
        prop_assert_eq!(cfg.extension.diagonal_thetas.as_deref(), Some(&thetas[..]));
        prop_assert_eq!(cfg.emit(), once);
    }
}
