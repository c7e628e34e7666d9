//! Fractional-order Bessel functions.
//!
//! Real argument `J` and `Y` use the ascending series (double-double
//! accumulation) for `x <= SWITCHOVER` and Hankel's asymptotic expansion
//! beyond. The modified function `K` at complex argument uses the
//! `I`-difference connection formula for small `|z|`, the trapezoidal rule on
//! `K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt` in the middle range, and
//! the asymptotic expansion past `SWITCHOVER`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::gamma::gamma_unchecked;
use super::is_integer_order;
use crate::error::{Error, Result};

/// Series/asymptotic switchover radius.
pub const SWITCHOVER: f64 = 15.0;

/// Below this `|z|` the `I`-difference for `K` is used; above it, quadrature.
pub(crate) const K_SERIES_LIMIT: f64 = 2.0;

const SERIES_MAX_TERMS: usize = 500;

/// `sum_k w^k / (k! (order + 1)_k)` with `w = sign * z^2 / 4`.
fn ascending_sum(order: f64, z: Complex64, sign: f64) -> Complex64 {
    let mut w = CDd::quarter_square(z.re, z.im);
    if sign < 0.0 {
        w = w.neg();
    }
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    for k in 0..SERIES_MAX_TERMS {
        let kp1 = (k + 1) as f64;
        let denom = Dd::new(kp1) * Dd::sum(kp1, order);
        term = term.mul(w).div_real(denom);
        sum = sum.add(term);
        let t = term.abs_hi();
        if t == 0.0 || (k > 2 && t <= 1e-33 * sum.abs_hi()) {
            break;
        }
    }
    sum.to_c64()
}

/// `J_order(x)` by ascending series, any non-negative-integer-free order.
pub(crate) fn j_series(order: f64, x: f64) -> f64 {
    let pref = (0.5 * x).powf(order) / gamma_unchecked(order + 1.0);
    pref * ascending_sum(order, Complex64::new(x, 0.0), -1.0).re
}

/// `I_order(z)` by ascending series.
pub(crate) fn i_series(order: f64, z: Complex64) -> Complex64 {
    let pref = (0.5 * z).powf(order) / gamma_unchecked(order + 1.0);
    pref * ascending_sum(order, z, 1.0)
}

/// Hankel's asymptotic `(P, Q)` pair for real `x`.
fn hankel_pq(order: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * order * order;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > last || mag < 1e-18 {
            // asymptotic: stop at the smallest term
            if mag < 1e-18 {
                add_hankel_term(k, term, &mut p, &mut q);
            }
            break;
        }
        add_hankel_term(k, term, &mut p, &mut q);
        last = mag;
    }
    (p, q)
}

fn add_hankel_term(k: usize, term: f64, p: &mut f64, q: &mut f64) {
    // a_k / x^k enters P for even k and Q for odd k with alternating sign
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    if k % 2 == 0 {
        *p += sign * term;
    } else {
        *q += sign * term;
    }
}

fn j_asymptotic(order: f64, x: f64) -> f64 {
    let (p, q) = hankel_pq(order, x);
    let chi = x - (0.5 * order + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn y_asymptotic(order: f64, x: f64) -> f64 {
    let (p, q) = hankel_pq(order, x);
    let chi = x - (0.5 * order + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.sin() + q * chi.cos())
}

/// `J_order(x)` for any real order that is not a negative integer.
pub(crate) fn j_any(order: f64, x: f64) -> f64 {
    if x <= SWITCHOVER {
        j_series(order, x)
    } else {
        j_asymptotic(order, x)
    }
}

/// Bessel function of the first kind, `J_nu(x)`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("bessel_j order must be >= 0, got {nu}")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j argument must be > 0, got {x}")));
    }
    Ok(j_any(nu, x))
}

pub(crate) fn y_unchecked(nu: f64, x: f64) -> f64 {
    if x <= SWITCHOVER {
        let (s, c) = (nu * PI).sin_cos();
        (j_series(nu, x) * c - j_series(-nu, x)) / s
    } else {
        y_asymptotic(nu, x)
    }
}

fn check_order(nu: f64) -> Result<()> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("order must be > 0, got {nu}")));
    }
    if is_integer_order(nu) {
        return Err(Error::IntegerOrder(nu));
    }
    Ok(())
}

/// Bessel function of the second kind, `Y_nu(x)`, non-integer `nu > 0`.
pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_y argument must be > 0, got {x}")));
    }
    Ok(y_unchecked(nu, x))
}

/// `J'_nu(x) = (nu/x) J_nu(x) - J_{nu+1}(x)`.
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    let j = bessel_j(nu, x)?;
    Ok(nu / x * j - j_any(nu + 1.0, x))
}

/// `Y'_nu(x) = (nu/x) Y_nu(x) - Y_{nu+1}(x)`.
pub fn bessel_y_prime(nu: f64, x: f64) -> Result<f64> {
    let y = bessel_y(nu, x)?;
    Ok(nu / x * y - y_unchecked(nu + 1.0, x))
}

fn k_series(nu: f64, z: Complex64) -> Complex64 {
    PI / (2.0 * (nu * PI).sin()) * (i_series(-nu, z) - i_series(nu, z))
}

fn k_quadrature(nu: f64, z: Complex64) -> Complex64 {
    // Analyticity strip half-width of the integrand is pi/2 - |arg z|.
    let strip = FRAC_PI_2 - z.arg().abs();
    let h = (strip / 8.0).min(0.1);
    let f = |t: f64| (-z * t.cosh()).exp() * (nu * t).cosh();
    let mut sum = 0.5 * f(0.0);
    let mut prev = sum.norm();
    let mut j = 1usize;
    loop {
        let val = f(j as f64 * h);
        sum += val;
        let mag = val.norm();
        if mag < 1e-20 * sum.norm() && mag <= prev {
            break;
        }
        prev = mag;
        j += 1;
        if j > 1_000_000 {
            break;
        }
    }
    sum * h
}

fn k_asymptotic(nu: f64, z: Complex64) -> Complex64 {
    let mu = 4.0 * nu * nu;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * z);
        let mag = next.norm();
        if mag > last {
            break;
        }
        term = next;
        sum += term;
        if mag < 1e-18 * sum.norm() {
            break;
        }
        last = mag;
    }
    (PI / (2.0 * z)).sqrt() * (-z).exp() * sum
}

/// Routing shared by the public entry point and internal derivative calls.
pub(crate) fn k_unchecked(nu: f64, z: Complex64) -> Complex64 {
    let r = z.norm();
    if r <= K_SERIES_LIMIT {
        k_series(nu, z)
    } else if r <= SWITCHOVER {
        k_quadrature(nu, z)
    } else {
        k_asymptotic(nu, z)
    }
}

/// Modified Bessel function `K_nu(z)` for `Re z > 0` and non-integer `nu > 0`.
pub fn bessel_k_complex(nu: f64, z: Complex64) -> Result<Complex64> {
    check_order(nu)?;
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(Error::Domain(format!("bessel_k_complex needs Re z > 0, got {z}")));
    }
    Ok(k_unchecked(nu, z))
}

/// `K'_nu(z) = -K_{nu-1}(z) - (nu/z) K_nu(z)`, using `K_{-a} = K_a`.
pub fn bessel_k_prime_complex(nu: f64, z: Complex64) -> Result<Complex64> {
    let k = bessel_k_complex(nu, z)?;
    Ok(-k_unchecked((nu - 1.0).abs(), z) - nu / z * k)
}

/// Regimes used by [`bessel_k_complex`], exposed for seam tests.
#[doc(hidden)]
pub mod regimes {
    use super::*;

    pub fn j_series(nu: f64, x: f64) -> f64 {
        super::j_series(nu, x)
    }
    pub fn j_asymptotic(nu: f64, x: f64) -> f64 {
        super::j_asymptotic(nu, x)
    }
    pub fn y_series(nu: f64, x: f64) -> f64 {
        let (s, c) = (nu * PI).sin_cos();
        (super::j_series(nu, x) * c - super::j_series(-nu, x)) / s
    }
    pub fn y_asymptotic(nu: f64, x: f64) -> f64 {
        super::y_asymptotic(nu, x)
    }
    pub fn k_series(nu: f64, z: Complex64) -> Complex64 {
        super::k_series(nu, z)
    }
    pub fn k_quadrature(nu: f64, z: Complex64) -> Complex64 {
        super::k_quadrature(nu, z)
    }
    pub fn k_asymptotic(nu: f64, z: Complex64) -> Complex64 {
        super::k_asymptotic(nu, z)
    }
}
