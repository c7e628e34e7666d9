use std::f64::consts::PI;

use num_complex::Complex64;

use super::bessel::{j_any, k_unchecked, y_unchecked};
use super::gamma::gamma_unchecked;
use super::is_integer_order;
use crate::error::{Error, Result};

/// Which radial solution `r^{-1/2} Z_nu(scale r)` is meant.
///
/// `N`, `S` use `J` and `Y` at real `scale = lambda`; `B` uses `K` at
/// `lambda`; the deficiency kinds use `K` at `(1 -/+ i) q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolutionKind {
    Nonsingular,
    Singular,
    Bound,
    DeficiencyPlus,
    DeficiencyMinus,
}

/// Leading small-`r` behaviour `c_minus r^{-1/2-nu} + c_plus r^{-1/2+nu}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmallRBehavior {
    pub nu: f64,
    pub c_minus: Complex64,
    pub c_plus: Complex64,
}

impl SmallRBehavior {
    pub fn zero(nu: f64) -> Self {
        SmallRBehavior {
            nu,
            c_minus: Complex64::new(0.0, 0.0),
            c_plus: Complex64::new(0.0, 0.0),
        }
    }

    /// Two-term expansion evaluated at `r`.
    pub fn eval(&self, r: f64) -> Complex64 {
        self.c_minus * r.powf(-0.5 - self.nu) + self.c_plus * r.powf(-0.5 + self.nu)
    }

    /// Radial derivative of the two-term expansion.
    pub fn eval_derivative(&self, r: f64) -> Complex64 {
        let nu = self.nu;
        self.c_minus * (-0.5 - nu) * r.powf(-1.5 - nu) + self.c_plus * (-0.5 + nu) * r.powf(-1.5 + nu)
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        SmallRBehavior {
            nu: self.nu,
            c_minus: self.c_minus * s,
            c_plus: self.c_plus * s,
        }
    }

    pub fn add(&self, other: &SmallRBehavior) -> Self {
        debug_assert_eq!(self.nu, other.nu);
        SmallRBehavior {
            nu: self.nu,
            c_minus: self.c_minus + other.c_minus,
            c_plus: self.c_plus + other.c_plus,
        }
    }

    /// `lim r->0 r^2 (conj(f)' g - conj(f) g')` for two functions with these
    /// expansions: `2 nu (conj(a+) b- - conj(a-) b+)`.
    pub fn boundary_form(&self, other: &SmallRBehavior) -> Complex64 {
        2.0 * self.nu * (self.c_plus.conj() * other.c_minus - self.c_minus.conj() * other.c_plus)
    }
}

/// Coefficients of `r^{-1/2 -/+ nu}` in the small-`r` expansion of
/// `r^{-1/2} Z_nu(scale r)`.
pub fn small_arg_coeffs(kind: SolutionKind, nu: f64, scale: Complex64) -> Result<SmallRBehavior> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("order must be > 0, got {nu}")));
    }
    if is_integer_order(nu) {
        return Err(Error::IntegerOrder(nu));
    }
    let half = 0.5 * scale;
    let down = half.powf(-nu);
    let up = half.powf(nu);
    let (c_minus, c_plus) = match kind {
        SolutionKind::Nonsingular => (Complex64::new(0.0, 0.0), up / gamma_unchecked(1.0 + nu)),
        SolutionKind::Singular => {
            let (s, c) = (nu * PI).sin_cos();
            (
                -down / (gamma_unchecked(1.0 - nu) * s),
                c * up / (gamma_unchecked(1.0 + nu) * s),
            )
        }
        SolutionKind::Bound | SolutionKind::DeficiencyPlus | SolutionKind::DeficiencyMinus => (
            0.5 * gamma_unchecked(nu) * down,
            0.5 * gamma_unchecked(-nu) * up,
        ),
    };
    Ok(SmallRBehavior { nu, c_minus, c_plus })
}

/// Value and radial derivative of a radial profile at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialValue {
    pub value: Complex64,
    pub derivative: Complex64,
}

/// `r^{-1/2} Z_nu(scale r)` and its `r`-derivative, derivatives taken from
/// Bessel recurrences.
pub fn radial_profile(kind: SolutionKind, nu: f64, scale: Complex64, r: f64) -> Result<RadialValue> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be > 0, got {r}")));
    }
    if is_integer_order(nu) {
        return Err(Error::IntegerOrder(nu));
    }
    let pre = r.powf(-0.5);
    let dpre = -0.5 * r.powf(-1.5);
    let (z, dz) = match kind {
        SolutionKind::Nonsingular | SolutionKind::Singular => {
            let lam = scale.re;
            if scale.im != 0.0 || !(lam > 0.0) {
                return Err(Error::Domain(format!("N/S profiles need real lambda > 0, got {scale}")));
            }
            let x = lam * r;
            let (f, fnext) = if kind == SolutionKind::Nonsingular {
                (j_any(nu, x), j_any(nu + 1.0, x))
            } else {
                (y_unchecked(nu, x), y_unchecked(nu + 1.0, x))
            };
            let d = nu / x * f - fnext;
            (Complex64::new(f, 0.0), Complex64::new(lam * d, 0.0))
        }
        _ => {
            let x = scale * r;
            if !(x.re > 0.0) {
                return Err(Error::Domain(format!("K profile needs Re(scale) > 0, got {scale}")));
            }
            let k = k_unchecked(nu, x);
            let d = -k_unchecked((nu - 1.0).abs(), x) - nu / x * k;
            (k, scale * d)
        }
    };
    Ok(RadialValue {
        value: pre * z,
        derivative: dpre * z + pre * dz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NU: f64 = std::f64::consts::SQRT_2 - 0.5;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn nonsingular_leading_term() {
        let b = small_arg_coeffs(SolutionKind::Nonsingular, 0.5, c(1.0, 0.0)).unwrap();
        assert_eq!(b.c_minus, c(0.0, 0.0));
        let want = 0.5f64.sqrt() / gamma_unchecked(1.5);
        assert!((b.c_plus.re - want).abs() < 1e-15);
    }

    #[test]
    fn bound_kind_half_order() {
        let b = small_arg_coeffs(SolutionKind::Bound, 0.5, c(1.0, 0.0)).unwrap();
        let pi_sqrt = PI.sqrt();
        assert!((b.c_minus.re - 0.5 * pi_sqrt * 2f64.sqrt()).abs() < 1e-14);
        assert!((b.c_plus.re - 0.5 * (-2.0 * pi_sqrt) * 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn integer_orders_rejected() {
        for kind in [SolutionKind::Nonsingular, SolutionKind::Bound] {
            assert!(matches!(
                small_arg_coeffs(kind, 1.0, c(1.0, 0.0)),
                Err(Error::IntegerOrder(_))
            ));
        }
    }

    #[test]
    fn two_term_expansion_matches_direct_evaluation() {
        let r = 1e-4;
        let cases = [
            (SolutionKind::Nonsingular, c(1.0, 0.0)),
            (SolutionKind::Singular, c(1.3, 0.0)),
            (SolutionKind::Bound, c(0.8, 0.0)),
            (SolutionKind::DeficiencyPlus, c(1.0, -1.0)),
            (SolutionKind::DeficiencyMinus, c(1.0, 1.0)),
        ];
        for nu in [0.5, NU] {
            for (kind, scale) in cases {
                let b = small_arg_coeffs(kind, nu, scale).unwrap();
                let direct = radial_profile(kind, nu, scale, r).unwrap().value;
                let err = (direct - b.eval(r)).norm();
                assert!(err <= 1e-6 * direct.norm(), "{kind:?} nu={nu}: {err}");
            }
        }
    }

    #[test]
    fn boundary_form_of_n_against_s_is_the_wronskian() {
        // r^2 (f' g - f g') for f = r^{-1/2} J, g = r^{-1/2} Y at lambda = 1
        // is -lambda r W(J, Y) = -2/pi.
        let n = small_arg_coeffs(SolutionKind::Nonsingular, 0.5, c(1.0, 0.0)).unwrap();
        let s = small_arg_coeffs(SolutionKind::Singular, 0.5, c(1.0, 0.0)).unwrap();
        let w = n.boundary_form(&s);
        assert!((w - c(-2.0 / PI, 0.0)).norm() < 1e-14, "{w}");
    }
}
