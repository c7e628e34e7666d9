//! From U to the Robin matrix g on a small sphere: Hermiticity, the r0 scan
//! and boundary flux.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use selfadjoint::annulus::{boundary_flux, g_from_u, r0_limit_scan};
use selfadjoint::channels::ModelParams;
use selfadjoint::extensions::ExtensionMatrix;
use selfadjoint::linalg::{c, random_unitary};

fn main() -> selfadjoint::Result<()> {
    let p = ModelParams::monopole(0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let u = ExtensionMatrix::new(p, random_unitary(4, &mut rng), 1e-10)?;

    let g = g_from_u(&u, 0.1)?;
    println!("random U, r0 = 0.1: ||g - g^H||_max = {:.2e}", g.hermiticity_defect);
    println!("{:.6}", g.entries);

    let psi = [c(1.0, 0.2), c(-0.3, 0.7), c(0.0, -1.0), c(0.5, 0.5)];
    let flux = boundary_flux(&g, &psi)?;
    println!("total flux {:.6}, |Im| / |psi|^2 = {:.1e}", flux.total, flux.imaginary_part);

    println!("{:>8} {:>14} {:>14}", "r0", "max|g|", "offdiag");
    for (name, u) in [("identity", ExtensionMatrix::identity(p)?), ("random", u)] {
        println!("{name}");
        for row in r0_limit_scan(&u, &[1e-1, 1e-2, 1e-3, 1e-4])? {
            println!("{:>8.0e} {:>14.6e} {:>14.6e}", row.r0, row.g_max, row.offdiag_norm);
        }
    }
    Ok(())
}
