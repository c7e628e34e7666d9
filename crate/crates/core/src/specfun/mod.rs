//! Special functions: Gamma, fractional-order Bessel functions and the
//! small-argument coefficients used for matching near the origin.

mod bessel;
pub(crate) mod dd;
mod gamma;
mod small_arg;

pub use bessel::{
    bessel_j, bessel_j_prime, bessel_k_complex, bessel_k_prime_complex, bessel_y,
    bessel_y_prime, regimes, SWITCHOVER,
};
pub use gamma::gamma_fn;
pub use small_arg::{radial_profile, small_arg_coeffs, RadialValue, SmallRBehavior, SolutionKind};

/// Orders within this distance of an integer are rejected.
pub const INTEGER_ORDER_TOL: f64 = 1e-9;

pub fn is_integer_order(nu: f64) -> bool {
    (nu - nu.round()).abs() < INTEGER_ORDER_TOL
}
