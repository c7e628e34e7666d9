//! Small-`r` analysis of the separated Dirac radial system.
//!
//! With upper component `f` equal to a Pauli radial solution, the lower one is
//! `g = -i (d/dr + (1 + kappa)/r) f / (mu + E)`. A Pauli solution survives the
//! relativistic completion only if `g` stays square integrable at the origin.

use num_complex::Complex64;

use crate::channels::nu_from_kappa;
use crate::error::{Error, Result};
use crate::quadrature;
use crate::specfun::{radial_profile, small_arg_coeffs, SolutionKind};

const CANCEL_TOL: f64 = 1e-12;

/// Leading small-`r` power of the lower component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerExponent {
    /// `1/2 -/+ nu + kappa`, the factor multiplying the naive leading power.
    pub coefficient: f64,
    /// Power of `r` that actually leads once cancellations are accounted for.
    pub exponent: f64,
    /// True when the naive leading term cancelled.
    pub promoted: bool,
}

fn is_singular_kind(kind: SolutionKind) -> bool {
    kind != SolutionKind::Nonsingular
}

/// Leading exponent of `g` for `f ~ r^{-1/2 -/+ nu}` (upper sign for
/// singular kinds).
///
/// `(d/dr + (1+kappa)/r) r^a = (a + 1 + kappa) r^{a-1}`. When the factor
/// vanishes the next surviving term is either the `r^2` correction of the
/// same series or, for singular kinds, the admixed `r^{-1/2+nu}` series
/// (absent when `cos(nu pi) = 0`).
pub fn lower_exponent(kappa: f64, kind: SolutionKind) -> Result<LowerExponent> {
    let nu = nu_from_kappa(kappa)?;
    let sign = if is_singular_kind(kind) { -1.0 } else { 1.0 };
    let a = -0.5 + sign * nu;
    let coefficient = a + 1.0 + kappa;
    if coefficient.abs() > CANCEL_TOL {
        return Ok(LowerExponent {
            coefficient,
            exponent: a - 1.0,
            promoted: false,
        });
    }
    let mut exponent = a + 1.0;
    if is_singular_kind(kind) {
        let admix = small_arg_coeffs(kind, nu, Complex64::new(1.0, 0.0))?.c_plus;
        let b = -0.5 + nu;
        if admix.norm() > CANCEL_TOL && (b + 1.0 + kappa).abs() > CANCEL_TOL {
            exponent = exponent.min(b - 1.0);
        }
    }
    Ok(LowerExponent {
        coefficient,
        exponent,
        promoted: true,
    })
}

/// Whether `int_0 |g|^2 r^2 dr` converges at the origin.
pub fn dirac_normalizable(kappa: f64, kind: SolutionKind) -> Result<bool> {
    let le = lower_exponent(kappa, kind)?;
    Ok(2.0 * le.exponent + 2.0 > -1.0)
}

/// A Pauli radial solution lifted to the Dirac system at momentum `lambda`.
#[derive(Clone, Copy, Debug)]
pub struct DiracRadialSolution {
    pub kappa: f64,
    pub kind: SolutionKind,
    pub lambda: f64,
    pub mu: f64,
}

impl DiracRadialSolution {
    pub fn new(kappa: f64, kind: SolutionKind, lambda: f64, mu: f64) -> Result<Self> {
        if !matches!(kind, SolutionKind::Nonsingular | SolutionKind::Singular) {
            return Err(Error::Domain(format!("Dirac lift needs N or S, got {kind:?}")));
        }
        if !(lambda > 0.0) || !(mu > 0.0) {
            return Err(Error::Domain("lambda and mu must be > 0".into()));
        }
        nu_from_kappa(kappa)?;
        Ok(DiracRadialSolution { kappa, kind, lambda, mu })
    }

    /// Total energy `sqrt(lambda^2 + mu^2)`.
    pub fn energy(&self) -> f64 {
        self.lambda.hypot(self.mu)
    }

    pub fn upper(&self, r: f64) -> Result<Complex64> {
        let nu = nu_from_kappa(self.kappa)?;
        Ok(radial_profile(self.kind, nu, Complex64::new(self.lambda, 0.0), r)?.value)
    }

    /// Lower component, from the analytic derivative of the upper one.
    pub fn lower(&self, r: f64) -> Result<Complex64> {
        let nu = nu_from_kappa(self.kappa)?;
        let f = radial_profile(self.kind, nu, Complex64::new(self.lambda, 0.0), r)?;
        let d = f.derivative + (1.0 + self.kappa) / r * f.value;
        Ok(Complex64::new(0.0, -1.0) * d / (self.mu + self.energy()))
    }

    /// `int_eps^1 |g|^2 r^2 dr`, Gauss-Legendre in `ln r`.
    pub fn lower_norm_from(&self, eps: f64) -> Result<f64> {
        let mut err = None;
        let t0 = eps.ln();
        let panels = ((-t0).ceil() as usize).max(1) * 2;
        let v = quadrature::integrate(
            |t| {
                let r = t.exp();
                match self.lower(r) {
                    Ok(g) => g.norm_sqr() * r * r * r,
                    Err(e) => {
                        err.get_or_insert(e);
                        0.0
                    }
                }
            },
            t0,
            0.0,
            panels,
            16,
        );
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }
}

/// Numerical confirmation of a normalizability verdict.
#[derive(Clone, Debug)]
pub struct QuadratureTrend {
    /// `(eps, int_eps^1 |g|^2 r^2 dr)` for eps = 1e-4, 1e-5, 1e-6.
    pub partials: Vec<(f64, f64)>,
    /// Observed `I(eps) / I(10 eps)` at the smallest eps.
    pub observed_ratio: f64,
    /// `10^{-(2 exponent + 3)}` when divergent, 1 when convergent.
    pub predicted_ratio: f64,
    pub consistent: bool,
}

/// Compares partial integrals over `[eps, 1]` and `[10 eps, 1]` with the
/// growth rate implied by the leading exponent (10% tolerance).
pub fn quadrature_trend(kappa: f64, kind: SolutionKind) -> Result<QuadratureTrend> {
    let le = lower_exponent(kappa, kind)?;
    let sol = DiracRadialSolution::new(kappa, kind, 1.0, 1.0)?;
    let mut partials = Vec::new();
    for eps in [1e-4, 1e-5, 1e-6] {
        partials.push((eps, sol.lower_norm_from(eps)?));
    }
    let observed_ratio = partials[2].1 / partials[1].1;
    let p = 2.0 * le.exponent + 3.0;
    let predicted_ratio = if p < 0.0 { 10f64.powf(-p) } else { 1.0 };
    let consistent = ((observed_ratio - predicted_ratio) / predicted_ratio).abs() <= 0.1;
    Ok(QuadratureTrend {
        partials,
        observed_ratio,
        predicted_ratio,
        consistent,
    })
}

/// Relativistic and nonrelativistic momenta at kinetic energy `E'`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaComparison {
    pub lambda_rel: f64,
    pub lambda_nr: f64,
    pub rel_diff: f64,
}

/// `lambda_rel = sqrt(2 mu E' + E'^2)` against `lambda_nr = sqrt(2 mu E')`.
pub fn relativistic_lambda(e_prime: f64, mu: f64) -> Result<LambdaComparison> {
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("mu must be > 0, got {mu}")));
    }
    let rel2 = 2.0 * mu * e_prime + e_prime * e_prime;
    let nr2 = 2.0 * mu * e_prime;
    if rel2 < 0.0 || nr2 < 0.0 {
        return Err(Error::Domain(format!(
            "E' = {e_prime} gives an imaginary momentum"
        )));
    }
    let (lambda_rel, lambda_nr) = (rel2.sqrt(), nr2.sqrt());
    let rel_diff = if lambda_nr > 0.0 {
        (lambda_rel - lambda_nr).abs() / lambda_nr
    } else {
        0.0
    };
    Ok(LambdaComparison {
        lambda_rel,
        lambda_nr,
        rel_diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    const S: SolutionKind = SolutionKind::Singular;
    const N: SolutionKind = SolutionKind::Nonsingular;

    #[test]
    fn j0_singular_solution_cancels() {
        let le = lower_exponent(0.0, S).unwrap();
        assert_eq!(le.coefficient, 0.0);
        assert!(le.promoted);
        assert!(le.exponent.abs() < 1e-12);
        assert!(dirac_normalizable(0.0, S).unwrap());
    }

    #[test]
    fn j1_singular_solution_is_not_normalizable() {
        let le = lower_exponent(-SQRT_2, S).unwrap();
        assert!((le.coefficient - (1.0 - 2.0 * SQRT_2)).abs() < 1e-12);
        assert!((le.exponent - (-1.5 - (SQRT_2 - 0.5))).abs() < 1e-12);
        assert!(!dirac_normalizable(-SQRT_2, S).unwrap());
    }

    #[test]
    fn nonsingular_kinds_are_normalizable() {
        for kappa in [0.0, -SQRT_2, SQRT_2] {
            assert!(dirac_normalizable(kappa, N).unwrap(), "kappa {kappa}");
        }
        // kappa = -sqrt 2 cancels the leading N term
        let le = lower_exponent(-SQRT_2, N).unwrap();
        assert!(le.promoted);
        assert!((le.exponent - (-1.5 + SQRT_2 - 0.5 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn quadrature_confirms_verdicts() {
        for (kappa, kind) in [(0.0, S), (-SQRT_2, S), (0.0, N), (-SQRT_2, N)] {
            let t = quadrature_trend(kappa, kind).unwrap();
            assert!(t.consistent, "kappa {kappa} {kind:?}: {t:?}");
        }
    }

    #[test]
    fn lower_component_matches_power_law() {
        let sol = DiracRadialSolution::new(-SQRT_2, S, 1.0, 1.0).unwrap();
        let le = lower_exponent(-SQRT_2, S).unwrap();
        let (r1, r2) = (1e-5, 1e-6);
        let slope = (sol.lower(r2).unwrap().norm() / sol.lower(r1).unwrap().norm()).ln() / (r2 / r1).ln();
        assert!((slope - le.exponent).abs() < 1e-3, "{slope}");
    }

    #[test]
    fn lambda_identification() {
        let a = relativistic_lambda(0.01, 1.0).unwrap();
        assert!((a.rel_diff / 2.5e-3 - 1.0).abs() < 0.05);
        let b = relativistic_lambda(0.0, 1.0).unwrap();
        assert_eq!((b.lambda_rel, b.lambda_nr, b.rel_diff), (0.0, 0.0, 0.0));
        let c = relativistic_lambda(1.0, 1.0).unwrap();
        assert!((c.lambda_rel - 3f64.sqrt()).abs() < 1e-15);
        assert!((c.lambda_nr - SQRT_2).abs() < 1e-15);
        assert!(relativistic_lambda(-0.5, 1.0).is_err());
    }

    #[test]
    fn rel_diff_decreases_monotonically() {
        let d: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&e| relativistic_lambda(e, 1.0).unwrap().rel_diff)
            .collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]));
    }
}
