//! Fractional-order Bessel functions: the Wronskian identity, the half-order
//! closed forms and K at the complex deficiency argument.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use selfadjoint::specfun::{bessel_j, bessel_j_prime, bessel_k_complex, bessel_y, bessel_y_prime, gamma_fn};

fn main() -> selfadjoint::Result<()> {
    let nu = SQRT_2 - 0.5;
    println!("Gamma(nu) = {:.16}", gamma_fn(nu)?);
    println!("{:>8} {:>24} {:>24} {:>12}", "x", "J_nu", "Y_nu", "W*pi*x/2-1");
    for x in [0.01, 0.5, 2.0, 10.0, 50.0] {
        let w = bessel_j(nu, x)? * bessel_y_prime(nu, x)? - bessel_j_prime(nu, x)? * bessel_y(nu, x)?;
        println!(
            "{x:>8} {:>24.16e} {:>24.16e} {:>12.2e}",
            bessel_j(nu, x)?,
            bessel_y(nu, x)?,
            w * PI * x / 2.0 - 1.0
        );
    }

    let x: f64 = 1.7;
    let closed = (2.0 / (PI * x)).sqrt() * x.sin();
    println!("J_1/2(1.7) - sqrt(2/pi x) sin x = {:.2e}", bessel_j(0.5, x)? - closed);

    for q in [0.5, 1.0, 4.0] {
        let z = Complex64::new(q, -q);
        let k = bessel_k_complex(nu, z)?;
        let kc = bessel_k_complex(nu, z.conj())?;
        println!("K_nu({z}) = {k:.12}, |K(conj z) - conj K(z)| = {:.1e}", (kc - k.conj()).norm());
    }
    Ok(())
}
