//! Bound-state energy against the diagonal phase, in both forms, and the
//! existence window.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use selfadjoint::extensions::{bound_state_energy_theta, bound_state_energy_u};

fn main() -> selfadjoint::Result<()> {
    for nu in [0.5, SQRT_2 - 0.5] {
        let edge = PI - 0.5 * PI * nu;
        println!("nu = {nu:.6}: bound state for |theta| < {edge:.6}");
        for k in -8..=8 {
            let theta = k as f64 * PI / 8.0;
            let e = bound_state_energy_theta(theta, nu, 1.0);
            let eu = bound_state_energy_u(Complex64::from_polar(1.0, theta), nu, 1.0)?;
            match e {
                Some(e) => println!("  theta = {theta:>9.5}  E/mu = {e:.14}  U-form {:.14}", eu.unwrap().re),
                None => println!("  theta = {theta:>9.5}  none"),
            }
        }
    }
    Ok(())
}
