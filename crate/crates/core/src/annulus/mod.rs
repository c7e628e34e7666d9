//! Boundary conditions on a small sphere `r = r0` and the finite-difference
//! oracle on the annulus `[r0, R]`.
//!
//! Cutting out the ball `r < r0` replaces the extension `U` by a Hermitian
//! matrix `g` in `psi'(r0) = g psi(r0)`. The link is `g = a^{-1} a'` with
//! `a_ij(r) = conj(phi+^i(r) delta_ij + U_ij phi-^j(r))`.

mod band;
mod grid;
mod reference;

pub use band::{count_below, lowest_eigenpairs, BandMatrix, Eigenpair};
pub use grid::{
    assemble_radial_hamiltonian, assemble_radial_hamiltonian_unchecked, oracle_spectrum, AnnulusGrid, InnerBoundary,
    OracleLevel, ResolutionReport,
};
pub use reference::{annulus_bound_energy, restrict};

use num_complex::Complex64;

use crate::channels::ChannelSpec;
use crate::error::{Error, Result};
use crate::extensions::{DeficiencySign, DeficiencyVector, ExtensionMatrix, Normalization};
use crate::linalg::{hermiticity_defect, inverse_with_condition, CMatrix};

/// Hermiticity tolerance of the link map's output.
pub const G_HERMITICITY_TOL: f64 = 1e-9;
/// Beyond this defect the link map is reported as broken down.
pub const G_BREAKDOWN_TOL: f64 = 1e-6;
const MAX_CONDITION: f64 = 1e12;

/// Hermitian `g` relating `psi'` to `psi` on `r = r0`.
#[derive(Clone, Debug)]
pub struct BoundaryConditionMatrix {
    pub r0: f64,
    pub channels: Vec<ChannelSpec>,
    pub entries: CMatrix,
    /// `max |g - g^dagger|` before symmetrisation.
    pub hermiticity_defect: f64,
}

impl BoundaryConditionMatrix {
    /// Validates Hermiticity (within 1e-9) and stores the Hermitian part.
    pub fn new(r0: f64, channels: Vec<ChannelSpec>, entries: CMatrix) -> Result<Self> {
        if !(r0 > 0.0) {
            return Err(Error::Domain(format!("r0 must be > 0, got {r0}")));
        }
        if entries.nrows() != channels.len() || entries.ncols() != channels.len() {
            return Err(Error::DimensionMismatch {
                expected: channels.len(),
                got: entries.nrows(),
            });
        }
        let defect = hermiticity_defect(&entries);
        if defect > G_HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                defect,
                tol: G_HERMITICITY_TOL,
            });
        }
        let sym = (&entries + entries.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(BoundaryConditionMatrix {
            r0,
            channels,
            entries: sym,
            hermiticity_defect: defect,
        })
    }

    /// Real diagonal `g` (no channel coupling).
    pub fn diagonal(r0: f64, channels: Vec<ChannelSpec>, values: &[f64]) -> Result<Self> {
        let n = values.len();
        let m = CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(if i == j { values[i] } else { 0.0 }, 0.0)
        });
        Self::new(r0, channels, m)
    }

    pub fn dim(&self) -> usize {
        self.channels.len()
    }

    pub fn max_abs(&self) -> f64 {
        crate::linalg::max_abs(&self.entries)
    }

    /// Frobenius norm of the off-diagonal part.
    pub fn offdiag_norm(&self) -> f64 {
        offdiag_frobenius(&self.entries)
    }
}

fn offdiag_frobenius(m: &CMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// `a(r)` with its analytic `r`-derivative.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub r: f64,
    pub entries: CMatrix,
    pub derivative: CMatrix,
    /// 1-norm condition number of `entries`.
    pub condition: f64,
}

/// `a_ij(r) = conj(phi+^i(r) delta_ij + U_ij phi-^j(r))`, deficiency vectors
/// normalised per `normalization`.
pub fn a_matrix(u: &ExtensionMatrix, r: f64, normalization: Normalization) -> Result<TransferMatrix> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r must be > 0, got {r}")));
    }
    let p = u.params();
    let n = u.dim();
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for ch in u.channels() {
        plus.push(DeficiencyVector::with_normalization(*ch, DeficiencySign::Plus, p, normalization)?.profile(r)?);
        minus.push(DeficiencyVector::with_normalization(*ch, DeficiencySign::Minus, p, normalization)?.profile(r)?);
    }
    let mut a = CMatrix::zeros(n, n);
    let mut da = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let uij = u.get(i, j);
            let mut v = uij * minus[j].value;
            let mut d = uij * minus[j].derivative;
            if i == j {
                v += plus[i].value;
                d += plus[i].derivative;
            }
            a[(i, j)] = v.conj();
            da[(i, j)] = d.conj();
        }
    }
    let (_, condition) = inverse_with_condition(&a)?;
    if condition > MAX_CONDITION {
        return Err(Error::Singular { cond: condition });
    }
    Ok(TransferMatrix {
        r,
        entries: a,
        derivative: da,
        condition,
    })
}

/// `a^{-1} a'` at `r0` without the Hermiticity postcondition.
pub fn link_map(u: &ExtensionMatrix, r0: f64, normalization: Normalization) -> Result<CMatrix> {
    let t = a_matrix(u, r0, normalization)?;
    let (inv, _) = inverse_with_condition(&t.entries)?;
    Ok(inv * t.derivative)
}

/// The boundary matrix of `U` at `r0`.
///
/// Deficiency vectors are normalised on `[r0, inf)`, which makes `g`
/// Hermitian for every unitary `U`. A defect above 1e-6 means the
/// evaluation has lost precision and is an error.
pub fn g_from_u(u: &ExtensionMatrix, r0: f64) -> Result<BoundaryConditionMatrix> {
    let g = link_map(u, r0, Normalization::Annulus { r0 })?;
    let defect = hermiticity_defect(&g);
    if defect > G_BREAKDOWN_TOL {
        return Err(Error::NotHermitian {
            defect,
            tol: G_BREAKDOWN_TOL,
        });
    }
    if defect > G_HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            defect,
            tol: G_HERMITICITY_TOL,
        });
    }
    let sym = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(BoundaryConditionMatrix {
        r0,
        channels: u.channels().to_vec(),
        entries: sym,
        hermiticity_defect: defect,
    })
}

/// `J_ch = conj(psi_ch) (g psi)_ch` on the boundary sphere.
#[derive(Clone, Debug)]
pub struct FluxReport {
    pub per_channel: Vec<Complex64>,
    pub total: Complex64,
    /// `|Im total| / ||psi||^2`.
    pub imaginary_part: f64,
}

pub fn boundary_flux(g: &BoundaryConditionMatrix, psi: &[Complex64]) -> Result<FluxReport> {
    let n = g.dim();
    if psi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: psi.len(),
        });
    }
    let mut per_channel = Vec::with_capacity(n);
    for i in 0..n {
        let dpsi: Complex64 = (0..n).map(|j| g.entries[(i, j)] * psi[j]).sum();
        per_channel.push(psi[i].conj() * dpsi);
    }
    let total: Complex64 = per_channel.iter().sum();
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    Ok(FluxReport {
        per_channel,
        total,
        imaginary_part: if norm2 > 0.0 { total.im.abs() / norm2 } else { 0.0 },
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub r0: f64,
    pub g_max: f64,
    pub offdiag_norm: f64,
    pub hermiticity_defect: f64,
    /// Set once the link map no longer returns a Hermitian `g` at working
    /// precision; the numeric columns are then NaN.
    pub breakdown: bool,
}

/// `g(r0)` diagnostics along a decreasing sequence of radii.
pub fn r0_limit_scan(u: &ExtensionMatrix, r0s: &[f64]) -> Result<Vec<ScanRow>> {
    if r0s.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::Domain("all r0 must be > 0".into()));
    }
    let mut rows = Vec::with_capacity(r0s.len());
    for &r0 in r0s {
        match g_from_u(u, r0) {
            Ok(g) => rows.push(ScanRow {
                r0,
                g_max: g.max_abs(),
                offdiag_norm: g.offdiag_norm(),
                hermiticity_defect: g.hermiticity_defect,
                breakdown: false,
            }),
            Err(Error::NotHermitian { defect, .. }) => rows.push(ScanRow {
                r0,
                g_max: f64::NAN,
                offdiag_norm: f64::NAN,
                hermiticity_defect: defect,
                breakdown: true,
            }),
            Err(Error::Singular { .. }) => rows.push(ScanRow {
                r0,
                g_max: f64::NAN,
                offdiag_norm: f64::NAN,
                hermiticity_defect: f64::NAN,
                breakdown: true,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::ModelParams;
    use crate::extensions::DEFAULT_UNITARITY_TOL;
    use crate::linalg::{offdiag_max, random_hermitian, random_unitary};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn monopole() -> ModelParams {
        ModelParams::monopole(0.5)
    }

    fn swap01() -> ExtensionMatrix {
        let mut u = CMatrix::identity(4, 4);
        u[(0, 0)] = Complex64::new(0.0, 0.0);
        u[(1, 1)] = Complex64::new(0.0, 0.0);
        u[(0, 1)] = Complex64::new(1.0, 0.0);
        u[(1, 0)] = Complex64::new(1.0, 0.0);
        ExtensionMatrix::new(monopole(), u, DEFAULT_UNITARITY_TOL).unwrap()
    }

    #[test]
    fn identity_gives_diagonal_a() {
        let id = ExtensionMatrix::identity(monopole()).unwrap();
        let t = a_matrix(&id, 0.3, Normalization::FullSpace).unwrap();
        assert!(offdiag_max(&t.entries) == 0.0);
        let p = id.params();
        for (i, ch) in id.channels().iter().enumerate() {
            let fp = DeficiencyVector::new(*ch, DeficiencySign::Plus, p).unwrap().profile(0.3).unwrap();
            let fm = DeficiencyVector::new(*ch, DeficiencySign::Minus, p).unwrap().profile(0.3).unwrap();
            assert!((t.entries[(i, i)] - (fp.value + fm.value).conj()).norm() < 1e-15);
        }
    }

    #[test]
    fn swap_entries_match_elementwise_evaluation() {
        let u = swap01();
        let p = *u.params();
        for r in [1.0, 2.0] {
            let t = a_matrix(&u, r, Normalization::FullSpace).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let ch_i = u.channels()[i];
                    let ch_j = u.channels()[j];
                    let mut want = u.get(i, j)
                        * DeficiencyVector::new(ch_j, DeficiencySign::Minus, &p).unwrap().profile(r).unwrap().value;
                    if i == j {
                        want += DeficiencyVector::new(ch_i, DeficiencySign::Plus, &p).unwrap().profile(r).unwrap().value;
                    }
                    assert!((t.entries[(i, j)] - want.conj()).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn derivative_is_consistent_with_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = ExtensionMatrix::new(monopole(), random_unitary(4, &mut rng), 1e-10).unwrap();
        let (r, h) = (0.4, 1e-5);
        let t = a_matrix(&u, r, Normalization::FullSpace).unwrap();
        let fd = (a_matrix(&u, r + h, Normalization::FullSpace).unwrap().entries
            - a_matrix(&u, r - h, Normalization::FullSpace).unwrap().entries)
            / Complex64::new(2.0 * h, 0.0);
        assert!(crate::linalg::max_abs(&(fd - &t.derivative)) < 1e-6 * crate::linalg::max_abs(&t.derivative));
    }

    #[test]
    fn diagonal_u_gives_diagonal_real_g() {
        let d = ExtensionMatrix::diagonal(monopole(), &[0.2, -1.0, 0.5, 2.5]).unwrap();
        let g = g_from_u(&d, 0.1).unwrap();
        assert!(offdiag_max(&g.entries) == 0.0);
        assert!(g.entries.diagonal().iter().all(|z| z.im.abs() < 1e-9 * z.norm()));
    }

    #[test]
    fn link_map_is_hermitian_for_random_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let u = ExtensionMatrix::new(monopole(), random_unitary(4, &mut rng), 1e-10).unwrap();
            for r0 in [0.05, 0.1, 0.5] {
                let g = g_from_u(&u, r0).unwrap();
                assert!(g.hermiticity_defect <= 1e-9, "{}", g.hermiticity_defect);
            }
        }
    }

    #[test]
    fn full_space_normalisation_breaks_hermiticity_off_the_limit() {
        // with (0, inf) normalisation the channel Wronskians differ at finite
        // r0, so a coupling U gives a non-Hermitian a^{-1} a'
        let g = link_map(&swap01(), 0.1, Normalization::FullSpace).unwrap();
        assert!(hermiticity_defect(&g) > 1e-3);
    }

    #[test]
    fn identity_entries_grow_as_r0_shrinks() {
        let id = ExtensionMatrix::identity(monopole()).unwrap();
        let rows = r0_limit_scan(&id, &[1e-1, 1e-2, 1e-3]).unwrap();
        assert!(rows.windows(2).all(|w| w[1].g_max > w[0].g_max));
        assert!(rows.iter().all(|r| r.offdiag_norm == 0.0 && !r.breakdown));
        // the U dependence of g sits below the universal -(1/2 + nu)/r0, so
        // the coupling is present at every r0 but fades relative to it
        let rows = r0_limit_scan(&swap01(), &[1e-1, 1e-2, 1e-3]).unwrap();
        assert!(rows.iter().all(|r| r.offdiag_norm > 1e-3));
        assert!(rows.windows(2).all(|w| w[1].offdiag_norm / w[1].g_max < w[0].offdiag_norm / w[0].g_max));
    }

    #[test]
    fn flux_examples() {
        let ch = crate::extensions::extension_channels(&monopole()).unwrap();
        let g = BoundaryConditionMatrix::diagonal(0.1, ch.clone(), &[2.0, -1.0, 0.5, 3.0]).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let f = boundary_flux(&g, &[one, zero, zero, zero]).unwrap();
        assert_eq!(f.per_channel[0], Complex64::new(2.0, 0.0));
        assert!(f.per_channel[1..].iter().all(|z| *z == zero));

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = random_hermitian(4, &mut rng);
        let gm = BoundaryConditionMatrix::new(0.1, ch, h).unwrap();
        for _ in 0..100 {
            let psi: Vec<Complex64> = (0..4)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let f = boundary_flux(&gm, &psi).unwrap();
            assert!(f.imaginary_part <= 1e-12 * gm.max_abs() * 4.0);
        }
        let real: Vec<Complex64> = [0.3, -1.2, 0.8, 0.5].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let f = boundary_flux(&gm, &real).unwrap();
        assert!(f.per_channel.iter().any(|z| z.im.abs() > 1e-6));
        assert!(f.imaginary_part < 1e-14);
    }

    #[test]
    fn non_hermitian_matrix_is_rejected() {
        let ch = crate::extensions::extension_channels(&monopole()).unwrap();
        let mut m = CMatrix::identity(4, 4);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            BoundaryConditionMatrix::new(0.1, ch, m),
            Err(Error::NotHermitian { .. })
        ));
    }
}
