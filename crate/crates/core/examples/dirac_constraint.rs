//! Which singular solutions survive the lift to a Dirac spinor, and the
//! one-parameter family of extensions consistent with it.

use num_complex::Complex64;
use selfadjoint::channels::ModelParams;
use selfadjoint::dirac::{dirac_normalizable, lower_exponent, relativistic_lambda};
use selfadjoint::extensions::{dirac_consistent_value, is_dirac_consistent, ExtensionMatrix};
use selfadjoint::linalg::CMatrix;
use selfadjoint::specfun::SolutionKind;

fn main() -> selfadjoint::Result<()> {
    for kappa in [0.0, -std::f64::consts::SQRT_2] {
        for kind in [SolutionKind::Nonsingular, SolutionKind::Singular] {
            let lo = lower_exponent(kappa, kind)?;
            println!(
                "kappa = {kappa:>9.6} {kind:?}: lower ~ r^{:.6}{}, normalizable: {}",
                lo.exponent,
                if lo.promoted { " (leading term cancelled)" } else { "" },
                dirac_normalizable(kappa, kind)?
            );
        }
    }

    let p = ModelParams::monopole(0.5);
    let ud = dirac_consistent_value(std::f64::consts::SQRT_2 - 0.5)?;
    println!("U_d = {ud:.12}");
    for alpha in [0.0, 1.0, 2.5] {
        let mut u = CMatrix::from_diagonal_element(4, 4, ud);
        u[(0, 0)] = Complex64::from_polar(1.0, alpha);
        let u = ExtensionMatrix::new(p, u, 1e-12)?;
        println!("diag(e^{{i {alpha}}}, U_d, U_d, U_d): consistent = {}", is_dirac_consistent(&u, 1e-10)?);
    }
    println!("identity: consistent = {}", is_dirac_consistent(&ExtensionMatrix::identity(p)?, 1e-10)?);

    for e in [1e-3, 1e-1, 1.0] {
        let cmp = relativistic_lambda(e, 1.0)?;
        println!("E' = {e}: lambda_rel / lambda_nr - 1 = {:.3e}", cmp.rel_diff);
    }
    Ok(())
}
