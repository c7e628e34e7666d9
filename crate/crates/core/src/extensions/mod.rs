//! Self-adjoint extensions over the singular channels.
//!
//! An extension is fixed by a unitary `U` over the singular channels; its
//! domain adds the vectors `phi^i = phi+^i + sum_j U_ij phi-^j` to the
//! closure of the minimal operator.

mod bound;
mod deficiency;
mod hermiticity;
mod scattering;

pub use bound::{
    accept_energy, bound_state_energy_theta, bound_state_energy_u, bound_states, reparameterize_theta, BoundState,
};
pub use deficiency::{DeficiencySign, DeficiencyVector, Normalization};
pub use hermiticity::{hermiticity_defect, hermiticity_defect_limit, ChannelFunction, DomainVector, Superposition};
pub use scattering::{
    domain_vector_smallr, mixing_matrix, scattering_eigenstate, MixingMatrix, MixingSolution,
};

use num_complex::Complex64;

use crate::channels::{singular_channels, ChannelSpec, Model, ModelParams};
use crate::dirac::dirac_normalizable;
use crate::error::{Error, Result};
use crate::linalg::{offdiag_max, unitarity_defect, CMatrix};
use crate::specfun::{small_arg_coeffs, SolutionKind};

pub const DEFAULT_UNITARITY_TOL: f64 = 1e-10;

/// Outcome of a unitarity check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitarityReport {
    pub defect: f64,
    pub pass: bool,
}

/// `max |(U^dagger U - I)_ij|` against `tol`; `n` is the channel count.
pub fn validate_unitary(u: &CMatrix, n: usize, tol: f64) -> Result<UnitarityReport> {
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if u.nrows() != n { u.nrows() } else { u.ncols() },
        });
    }
    let defect = unitarity_defect(u);
    Ok(UnitarityReport {
        defect,
        pass: defect <= tol,
    })
}

/// A validated unitary over the singular channels of a model.
#[derive(Clone, Debug)]
pub struct ExtensionMatrix {
    params: ModelParams,
    channels: Vec<ChannelSpec>,
    entries: CMatrix,
}

impl ExtensionMatrix {
    pub fn new(params: ModelParams, entries: CMatrix, tol: f64) -> Result<Self> {
        let channels = extension_channels(&params)?;
        let report = validate_unitary(&entries, channels.len(), tol)?;
        if !report.pass {
            return Err(Error::NotUnitary {
                defect: report.defect,
                tol,
            });
        }
        Ok(ExtensionMatrix {
            params,
            channels,
            entries,
        })
    }

    pub fn identity(params: ModelParams) -> Result<Self> {
        let n = extension_channels(&params)?.len();
        Self::new(params, CMatrix::identity(n, n), DEFAULT_UNITARITY_TOL)
    }

    /// `diag(e^{i theta_0}, ...)`.
    pub fn diagonal(params: ModelParams, thetas: &[f64]) -> Result<Self> {
        let n = thetas.len();
        let u = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::from_polar(1.0, thetas[i])
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self::new(params, u, DEFAULT_UNITARITY_TOL)
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn channels(&self) -> &[ChannelSpec] {
        &self.channels
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.channels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    /// Whether row and column `i` vanish off the diagonal.
    pub fn is_decoupled(&self, i: usize, tol: f64) -> bool {
        (0..self.dim()).all(|k| k == i || (self.get(i, k).norm() <= tol && self.get(k, i).norm() <= tol))
    }
}

/// Channel set an extension lives on. The monopole machinery is wired only
/// for `eg = 1/2`.
pub fn extension_channels(params: &ModelParams) -> Result<Vec<ChannelSpec>> {
    params.validate()?;
    if params.model == Model::Monopole && (params.eg - 0.5).abs() > 1e-12 {
        return Err(Error::Unsupported(format!(
            "extensions are implemented for eg = 1/2 only, got {}",
            params.eg
        )));
    }
    let cutoff = match params.model {
        Model::Monopole => 1.0,
        Model::InverseSquare => crate::channels::l_crit(params.c).ceil(),
    };
    singular_channels(params, cutoff)
}

/// True iff every off-diagonal entry has modulus `<= tol`.
pub fn is_angular_momentum_conserving(u: &ExtensionMatrix, tol: f64) -> bool {
    offdiag_max(u.entries()) <= tol
}

/// Diagonal entry `U_d` with `c-(phi+) + U_d c-(phi-) = 0`, which removes
/// the singular solution from the channel's eigenstates. Equals
/// `-e^{i pi nu/2}`.
pub fn dirac_consistent_value(nu: f64) -> Result<Complex64> {
    let plus = small_arg_coeffs(SolutionKind::DeficiencyPlus, nu, Complex64::new(1.0, -1.0))?;
    let minus = small_arg_coeffs(SolutionKind::DeficiencyMinus, nu, Complex64::new(1.0, 1.0))?;
    Ok(-plus.c_minus / minus.c_minus)
}

/// True iff every channel whose singular Dirac lift is not normalizable is
/// decoupled and carries `dirac_consistent_value` on the diagonal.
pub fn is_dirac_consistent(u: &ExtensionMatrix, tol: f64) -> Result<bool> {
    if u.params().model != Model::Monopole {
        return Err(Error::Unsupported("Dirac consistency needs the monopole model".into()));
    }
    for (i, ch) in u.channels().iter().enumerate() {
        let kappa = ch.kappa.expect("monopole channels carry kappa");
        if dirac_normalizable(kappa, SolutionKind::Singular)? {
            continue;
        }
        if !u.is_decoupled(i, tol) {
            return Ok(false);
        }
        if (u.get(i, i) - dirac_consistent_value(ch.nu)?).norm() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    pub fn monopole() -> ModelParams {
        ModelParams::monopole(0.5)
    }

    /// Swap of channels 0 and 1, with `tail` on channels 2 and 3.
    pub fn swap01(tail: Complex64) -> ExtensionMatrix {
        let mut u = CMatrix::zeros(4, 4);
        u[(0, 1)] = Complex64::new(1.0, 0.0);
        u[(1, 0)] = Complex64::new(1.0, 0.0);
        u[(2, 2)] = tail;
        u[(3, 3)] = tail;
        ExtensionMatrix::new(monopole(), u, DEFAULT_UNITARITY_TOL).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use crate::linalg::{householder, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn unitarity_examples() {
        let id = CMatrix::identity(4, 4);
        let r = validate_unitary(&id, 4, 1e-10).unwrap();
        assert!(r.pass && r.defect == 0.0);
        let two = id * Complex64::new(2.0, 0.0);
        let r = validate_unitary(&two, 4, 1e-10).unwrap();
        assert!(!r.pass && (r.defect - 3.0).abs() < 1e-15);
        let h = householder(&[
            Complex64::new(0.1, 0.2),
            Complex64::new(-0.7, 0.0),
            Complex64::new(0.3, -0.4),
            Complex64::new(0.0, 0.5),
        ]);
        assert!(validate_unitary(&h, 4, 1e-14).unwrap().pass);
        assert!(matches!(
            validate_unitary(&CMatrix::identity(3, 3), 4, 1e-10),
            Err(Error::DimensionMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn constructor_rejects_non_unitary_and_other_eg() {
        let two = CMatrix::identity(4, 4) * Complex64::new(2.0, 0.0);
        assert!(matches!(
            ExtensionMatrix::new(monopole(), two, 1e-10),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            ExtensionMatrix::identity(ModelParams::monopole(1.0)),
            Err(Error::Unsupported(_))
        ));
        let one = ExtensionMatrix::identity(ModelParams::inverse_square(0.0)).unwrap();
        assert_eq!(one.dim(), 1);
    }

    #[test]
    fn conservation_diagnosis() {
        assert!(is_angular_momentum_conserving(&ExtensionMatrix::identity(monopole()).unwrap(), 1e-12));
        assert!(!is_angular_momentum_conserving(&swap01(Complex64::new(1.0, 0.0)), 1e-12));
        let d = ExtensionMatrix::diagonal(monopole(), &[0.3, -2.0, 1.1, 3.0]).unwrap();
        assert!(is_angular_momentum_conserving(&d, 1e-12));
    }

    #[test]
    fn dirac_value_is_the_rotated_unit() {
        for nu in [0.5, SQRT_2 - 0.5] {
            let ud = dirac_consistent_value(nu).unwrap();
            let want = -Complex64::from_polar(1.0, PI * nu / 2.0);
            assert!((ud - want).norm() < 1e-12);
            assert!((ud.norm() - 1.0).abs() < 1e-12);
            let plus = small_arg_coeffs(SolutionKind::DeficiencyPlus, nu, Complex64::new(1.0, -1.0)).unwrap();
            let minus = small_arg_coeffs(SolutionKind::DeficiencyMinus, nu, Complex64::new(1.0, 1.0)).unwrap();
            assert!((plus.c_minus + ud * minus.c_minus).norm() <= 1e-12 * plus.c_minus.norm());
        }
    }

    #[test]
    fn dirac_family_has_one_free_phase() {
        let u1 = dirac_consistent_value(SQRT_2 - 0.5).unwrap();
        for k in 0..10 {
            let alpha = -PI + 2.0 * PI * k as f64 / 10.0;
            let mut u = CMatrix::identity(4, 4) * u1;
            u[(0, 0)] = Complex64::from_polar(1.0, alpha);
            let ext = ExtensionMatrix::new(monopole(), u, 1e-10).unwrap();
            assert!(is_dirac_consistent(&ext, 1e-10).unwrap());
        }
        assert!(!is_dirac_consistent(&ExtensionMatrix::identity(monopole()).unwrap(), 1e-10).unwrap());
        assert!(!is_dirac_consistent(&swap01(u1), 1e-10).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = ExtensionMatrix::new(monopole(), random_unitary(4, &mut rng), 1e-10).unwrap();
        assert!(!is_dirac_consistent(&r, 1e-10).unwrap());
    }
}
