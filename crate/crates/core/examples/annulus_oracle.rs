//! Finite-difference spectrum on [r0, R] with the Robin condition from U,
//! against the exact annulus eigenvalue and the r0 -> 0 bound state.
//!
//! Run with --release.

use selfadjoint::annulus::{
    annulus_bound_energy, assemble_radial_hamiltonian, g_from_u, oracle_spectrum, restrict, AnnulusGrid,
    InnerBoundary,
};
use selfadjoint::channels::ModelParams;
use selfadjoint::extensions::{bound_states, ExtensionMatrix};

fn main() -> selfadjoint::Result<()> {
    let p = ModelParams::monopole(0.5);
    let theta = 0.7;
    let u = ExtensionMatrix::diagonal(p, &[theta, 0.0, 0.0, 0.0])?;
    let b = bound_states(&u)[0];
    println!("channel 0, theta = {theta}: analytic E = {:.10}", b.energy);

    let r0 = 1e-3;
    let g = restrict(&g_from_u(&u, r0)?, &[0])?;
    let ch = &u.channels()[..1];
    let exact = annulus_bound_energy(&ch[0], p.mu, r0, g.entries[(0, 0)].re, b.lambda)?;
    println!("exact annulus eigenvalue at r0 = {r0}: {exact:.10}");

    for n in [4000, 8000, 16000] {
        let grid = AnnulusGrid::new(r0, 40.0 / b.lambda, n)?;
        let h = assemble_radial_hamiltonian(&p, &grid, InnerBoundary::Robin(&g), ch)?;
        let e = oracle_spectrum(&h, 1)?[0].energy;
        println!(
            "n = {n:>6}: E = {e:.10}  vs analytic {:+.2e}  vs annulus {:+.2e}",
            e / b.energy - 1.0,
            e / exact - 1.0
        );
    }
    Ok(())
}
