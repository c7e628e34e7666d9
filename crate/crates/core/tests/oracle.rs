//! The finite-difference oracle against the exact annulus eigenvalue, and
//! the exact annulus eigenvalue against the r0 -> 0 bound state.

use std::f64::consts::SQRT_2;

use selfadjoint::annulus::{
    annulus_bound_energy, assemble_radial_hamiltonian, g_from_u, oracle_spectrum, restrict, AnnulusGrid,
    InnerBoundary,
};
use selfadjoint::channels::ModelParams;
use selfadjoint::extensions::{bound_states, ExtensionMatrix};

fn setup(index: usize, theta: f64, r0: f64) -> (ExtensionMatrix, f64, f64, f64) {
    let mut th = [0.0; 4];
    th[index] = theta;
    let u = ExtensionMatrix::diagonal(ModelParams::monopole(0.5), &th).unwrap();
    let b = *bound_states(&u).iter().find(|b| b.index == index).unwrap();
    let g = g_from_u(&u, r0).unwrap().entries[(index, index)].re;
    let exact = annulus_bound_energy(&u.channels()[index], 1.0, r0, g, b.lambda).unwrap();
    (u, b.energy, g, exact)
}

#[test]
fn fd_converges_to_the_annulus_eigenvalue_once_r0_is_resolved() {
    // nu = sqrt2 - 1/2 at r0 = 1e-2 with h/r0 from 0.03 down to 0.007
    let (index, r0) = (1, 1e-2);
    let (u, _, _, exact) = setup(index, 0.0, r0);
    let g = restrict(&g_from_u(&u, r0).unwrap(), &[index]).unwrap();
    let ch = &u.channels()[index..=index];
    let mut errs = Vec::new();
    for n in [35_000, 70_000, 140_000] {
        let grid = AnnulusGrid::new(r0, 10.0, n).unwrap();
        let h = assemble_radial_hamiltonian(u.params(), &grid, InnerBoundary::Robin(&g), ch).unwrap();
        let e = oracle_spectrum(&h, 1).unwrap()[0].energy;
        errs.push((e / exact - 1.0).abs());
    }
    assert!(errs[2] < 1e-2, "{errs:?}");
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order > 1.7, "observed order {order}, errors {errs:?}");
    }
}

#[test]
fn annulus_eigenvalue_approaches_the_bound_state_like_r0_to_2_minus_2nu() {
    let decade_ratios = |index: usize, ks: std::ops::RangeInclusive<i32>| -> Vec<f64> {
        let errs: Vec<f64> = ks
            .map(|k| {
                let (_, analytic, _, exact) = setup(index, 0.4, 10f64.powi(-k));
                (exact / analytic - 1.0).abs()
            })
            .collect();
        errs.windows(2).map(|w| w[0] / w[1]).collect()
    };
    // nu = 1/2: first order in r0 from the start
    for r in decade_ratios(0, 2..=5) {
        assert!((r / 10.0 - 1.0).abs() < 0.01, "{r}");
    }
    // nu = sqrt2 - 1/2: the decade ratio falls towards 10^{2 - 2 nu} ~ 1.48
    let want = 10f64.powf(3.0 - 2.0 * SQRT_2);
    let r = decade_ratios(1, 2..=7);
    assert!(r.windows(2).all(|w| w[1] < w[0]), "{r:?}");
    assert!(r.iter().all(|&x| x > want), "{r:?}");
    assert!(r[r.len() - 1] / want - 1.0 < 0.06, "{r:?}");
}

#[test]
fn oracle_matches_for_half_order_at_r0_1e_3() {
    let (index, r0) = (0, 1e-3);
    for theta in [-1.0, 0.0, 1.0] {
        let (u, analytic, _, exact) = setup(index, theta, r0);
        let g = restrict(&g_from_u(&u, r0).unwrap(), &[index]).unwrap();
        let lambda = (-2.0 * analytic).sqrt();
        let grid = AnnulusGrid::new(r0, 40.0 / lambda, 8000).unwrap();
        let h = assemble_radial_hamiltonian(u.params(), &grid, InnerBoundary::Robin(&g), &u.channels()[..1]).unwrap();
        let e = oracle_spectrum(&h, 1).unwrap()[0].energy;
        assert!((e / analytic - 1.0).abs() < 1e-2);
        assert!((e / exact - 1.0).abs() < 1e-4);
    }
}
