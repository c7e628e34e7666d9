use std::f64::consts::PI;

use num_complex::Complex64;

use super::ExtensionMatrix;
use crate::channels::ChannelSpec;
use crate::error::{Error, Result};
use crate::specfun::{small_arg_coeffs, SolutionKind};

const THRESHOLD_BAND: f64 = 1e-10;
const DECOUPLED_TOL: f64 = 1e-10;
const IM_GATE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundState {
    pub channel: ChannelSpec,
    /// Position of the channel in the extension's channel list.
    pub index: usize,
    pub theta: f64,
    pub energy: f64,
    /// `sqrt(-2 mu E)`.
    pub lambda: f64,
}

/// `E = -s [(cos(nu pi/2) + cos theta) / (1 + cos(theta - nu pi/2))]^{1/nu}`
/// for a decoupled channel with `U_ii = e^{i theta}`; `None` outside the
/// window `cos theta > -cos(nu pi/2)` (the threshold itself gives `E = 0`,
/// which is not a bound state).
pub fn bound_state_energy_theta(theta: f64, nu: f64, scale: f64) -> Option<f64> {
    let half = 0.5 * PI * nu;
    let num = half.cos() + theta.cos();
    if num <= THRESHOLD_BAND {
        return None;
    }
    let ratio = num / (1.0 + (theta - half).cos());
    Some(-scale * ratio.powf(1.0 / nu))
}

/// `E = -s [(1 + i^nu U) / (i^nu + U)]^{1/nu}` on the principal branch.
///
/// `None` at the pole `U = -i^nu`. The result is complex in general; see
/// [`accept_energy`].
pub fn bound_state_energy_u(u: Complex64, nu: f64, scale: f64) -> Result<Option<Complex64>> {
    if (u.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Domain(format!("|U| = {} is not 1", u.norm())));
    }
    let inu = Complex64::from_polar(1.0, 0.5 * PI * nu);
    let den = inu + u;
    if den.norm() <= 1e-12 {
        return Ok(None);
    }
    let ratio = (1.0 + inu * u) / den;
    Ok(Some(-scale * ratio.powf(1.0 / nu)))
}

/// A complex `E` from the `U`-form counts only if it is real to `1e-9`
/// relative and negative.
pub fn accept_energy(e: Complex64) -> Option<f64> {
    if e.im.abs() <= IM_GATE * e.norm() && e.re < 0.0 {
        Some(e.re)
    } else {
        None
    }
}

/// Bound states of the decoupled channels whose phase lies in the
/// existence window.
pub fn bound_states(u: &ExtensionMatrix) -> Vec<BoundState> {
    let p = u.params();
    let mut out = Vec::new();
    for (i, ch) in u.channels().iter().enumerate() {
        if !u.is_decoupled(i, DECOUPLED_TOL) {
            continue;
        }
        let theta = u.get(i, i).arg();
        if let Some(energy) = bound_state_energy_theta(theta, ch.nu, p.deficiency_scale) {
            out.push(BoundState {
                channel: *ch,
                index: i,
                theta,
                energy,
                lambda: (-2.0 * p.mu * energy).sqrt(),
            });
        }
    }
    out
}

/// The phase that describes the same extension when the deficiency scale
/// changes from `from` to `to`.
///
/// The extension is fixed by the small-`r` ratio `c+/c-` of `phi+ + e^{i
/// theta} phi-`, which is real and scales as `s^nu R(theta)`. Writing
/// `R = (1 - t tau) / (1 + t tau)` with `t = tan(theta/2)`, `tau = tan(nu
/// pi/4)` gives the new phase in closed form. `None` when the ratio is
/// infinite (the pole of the `U`-form).
pub fn reparameterize_theta(theta: f64, nu: f64, mu: f64, from: f64, to: f64) -> Result<Option<f64>> {
    let ratio_at = |th: f64, s: f64| -> Result<Option<Complex64>> {
        let q = (mu * s).sqrt();
        let plus = small_arg_coeffs(SolutionKind::DeficiencyPlus, nu, Complex64::new(q, -q))?;
        let minus = small_arg_coeffs(SolutionKind::DeficiencyMinus, nu, Complex64::new(q, q))?;
        let e = Complex64::from_polar(1.0, th);
        let cm = plus.c_minus + e * minus.c_minus;
        let cp = plus.c_plus + e * minus.c_plus;
        if cm.norm() <= 1e-14 * cp.norm() {
            return Ok(None);
        }
        Ok(Some(cp / cm))
    };
    let Some(rho) = ratio_at(theta, from)? else {
        return Ok(None);
    };
    // reduce to R(theta) via the scale-free prefactor at s = to
    let Some(rho0) = ratio_at(0.0, to)? else {
        return Ok(None);
    };
    let r = (rho / rho0).re;
    let tau = (0.25 * PI * nu).tan();
    let t = (1.0 - r) / (tau * (1.0 + r));
    Ok(Some(2.0 * t.atan()))
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::linalg::random_unitary;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    const NUS: [f64; 2] = [0.5, SQRT_2 - 0.5];

    #[test]
    fn theta_form_examples() {
        for nu in NUS {
            for mu in [1.0, 2.5] {
                assert!((bound_state_energy_theta(0.0, nu, mu).unwrap() + mu).abs() < 1e-12 * mu);
            }
        }
        let e = bound_state_energy_theta(FRAC_PI_2, 0.5, 1.0).unwrap();
        assert!((e + (3.0 - 2.0 * SQRT_2)).abs() < 1e-12);
        assert!(bound_state_energy_theta(0.75 * PI, 0.5, 1.0).is_none());
        assert!(bound_state_energy_theta(PI, SQRT_2 - 0.5, 1.0).is_none());
    }

    #[test]
    fn u_form_examples() {
        let e = bound_state_energy_u(Complex64::new(1.0, 0.0), 0.5, 1.0).unwrap().unwrap();
        assert!((e + 1.0).norm() < 1e-12);
        let e = bound_state_energy_u(Complex64::from_polar(1.0, FRAC_PI_2), 0.5, 1.0).unwrap().unwrap();
        assert!((accept_energy(e).unwrap() - bound_state_energy_theta(FRAC_PI_2, 0.5, 1.0).unwrap()).abs() < 1e-12);
        let e = bound_state_energy_u(Complex64::new(-1.0, 0.0), SQRT_2 - 0.5, 1.0).unwrap().unwrap();
        assert!(accept_energy(e).is_none());
        let pole = -Complex64::from_polar(1.0, 0.25 * PI);
        assert_eq!(bound_state_energy_u(pole, 0.5, 1.0).unwrap(), None);
        assert!(bound_state_energy_u(Complex64::new(2.0, 0.0), 0.5, 1.0).is_err());
    }

    #[test]
    fn forms_agree_inside_the_window() {
        for nu in NUS {
            let edge = (-(0.5 * PI * nu).cos()).acos();
            for k in 0..100 {
                let theta = -edge + 2.0 * edge * (k as f64 + 0.5) / 100.0;
                let a = bound_state_energy_theta(theta, nu, 1.0).unwrap();
                let b = accept_energy(bound_state_energy_u(Complex64::from_polar(1.0, theta), nu, 1.0).unwrap().unwrap())
                    .unwrap();
                assert!((a - b).abs() <= 1e-10 * a.abs(), "nu {nu} theta {theta}");
            }
        }
    }

    #[test]
    fn u_form_rejects_outside_the_window() {
        for nu in NUS {
            let edge = (-(0.5 * PI * nu).cos()).acos();
            for k in 1..50 {
                let theta = edge + (PI - edge) * k as f64 / 50.0;
                for th in [theta, -theta] {
                    assert!(bound_state_energy_theta(th, nu, 1.0).is_none());
                    // at nu = 1/2 the power 1/nu = 2 maps the negative ratio
                    // back onto the real axis, so only the theta form decides
                    if nu != 0.5 {
                        let e = bound_state_energy_u(Complex64::from_polar(1.0, th), nu, 1.0).unwrap();
                        assert!(e.and_then(accept_energy).is_none(), "nu {nu} theta {th}");
                    }
                }
            }
        }
    }

    #[test]
    fn bound_state_lists() {
        let id = ExtensionMatrix::identity(monopole()).unwrap();
        let b = bound_states(&id);
        assert_eq!(b.len(), 4);
        assert!(b.iter().all(|s| (s.energy + 1.0).abs() < 1e-12 && (s.lambda - SQRT_2).abs() < 1e-12));

        assert!(bound_states(&swap01(Complex64::new(-1.0, 0.0))).is_empty());

        let d = ExtensionMatrix::diagonal(monopole(), &[FRAC_PI_2, 0.0, 0.0, 0.0]).unwrap();
        let b = bound_states(&d);
        assert_eq!(b.len(), 4);
        assert!((b[0].energy + 3.0 - 2.0 * SQRT_2).abs() < 1e-12);
        assert!(b[1..].iter().all(|s| (s.energy + 1.0).abs() < 1e-12));
    }

    #[test]
    fn counts_for_random_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let u = ExtensionMatrix::new(monopole(), random_unitary(4, &mut rng), 1e-10).unwrap();
            assert!(bound_states(&u).len() <= 4);
        }
        for _ in 0..20 {
            let thetas: Vec<f64> = (0..4).map(|_| rng.random_range(-1.5..1.5)).collect();
            let u = ExtensionMatrix::diagonal(monopole(), &thetas).unwrap();
            assert_eq!(bound_states(&u).len(), 4);
        }
    }

    #[test]
    fn energy_is_invariant_under_scale_change() {
        for nu in NUS {
            for theta in [-1.2, -0.3, 0.0, 0.4, 1.3] {
                let e1 = bound_state_energy_theta(theta, nu, 1.0).unwrap();
                let th2 = reparameterize_theta(theta, nu, 1.0, 1.0, 2.0).unwrap().unwrap();
                let e2 = bound_state_energy_theta(th2, nu, 2.0).unwrap();
                assert!((e1 - e2).abs() < 1e-9 * e1.abs(), "nu {nu} theta {theta}: {e1} vs {e2}");
            }
        }
    }
}
