use num_complex::Complex64;

use super::band::{lowest_eigenpairs, BandMatrix};
use super::BoundaryConditionMatrix;
use crate::channels::{ChannelSpec, ModelParams};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Uniform grid `r_i = r0 + i h`, `h = (R - r0) / (n + 1)`, with the wall
/// `u(R) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusGrid {
    pub r0: f64,
    pub r_outer: f64,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolutionReport {
    pub h: f64,
    /// `h <= 0.01 / lambda_max`, enforced.
    pub resolves_wavelength: bool,
    /// `h <= r0 / 10`, reported only.
    pub resolves_inner_scale: bool,
}

impl AnnulusGrid {
    pub fn new(r0: f64, r_outer: f64, n: usize) -> Result<Self> {
        if !(r0 > 0.0) || !(r_outer > r0) {
            return Err(Error::Domain(format!("need 0 < r0 < R, got r0 = {r0}, R = {r_outer}")));
        }
        if n < 100 {
            return Err(Error::Resolution(format!("n = {n} is below the minimum of 100")));
        }
        Ok(AnnulusGrid { r0, r_outer, n })
    }

    pub fn h(&self) -> f64 {
        (self.r_outer - self.r0) / (self.n as f64 + 1.0)
    }

    pub fn node(&self, i: usize) -> f64 {
        self.r0 + i as f64 * self.h()
    }

    /// Checks the spacing against the largest momentum of interest.
    pub fn check_resolution(&self, lambda_max: f64) -> Result<ResolutionReport> {
        let h = self.h();
        let report = ResolutionReport {
            h,
            resolves_wavelength: h <= 0.01 / lambda_max,
            resolves_inner_scale: h <= self.r0 / 10.0,
        };
        if !report.resolves_wavelength {
            return Err(Error::Resolution(format!(
                "h = {h:e} exceeds 0.01 / lambda = {:e}",
                0.01 / lambda_max
            )));
        }
        Ok(report)
    }
}

/// Condition imposed at `r0`.
#[derive(Clone, Copy, Debug)]
pub enum InnerBoundary<'a> {
    /// `psi'(r0) = g psi(r0)`.
    Robin(&'a BoundaryConditionMatrix),
    /// `psi(r0) = 0`.
    Dirichlet,
}

/// Three-point discretisation of `-(1/2mu) u'' + (nu^2 - 1/4)/(2 mu r^2) u`
/// for `u = r psi`, unknowns ordered node-major.
///
/// At `r0` the condition on `psi` becomes `u' = (1/r0 + g) u`, imposed with
/// a ghost node `u_{-1} = u_1 - 2h (1/r0 + g) u_0`. Scaling node 0 by
/// `sqrt 2` (a half cell of mass) makes the stencil Hermitian whenever `g`
/// is.
pub fn assemble_radial_hamiltonian(
    params: &ModelParams,
    grid: &AnnulusGrid,
    inner: InnerBoundary<'_>,
    channels: &[ChannelSpec],
) -> Result<BandMatrix> {
    params.validate()?;
    match inner {
        InnerBoundary::Robin(g) => {
            if g.channels.as_slice() != channels {
                return Err(Error::DimensionMismatch {
                    expected: channels.len(),
                    got: g.dim(),
                });
            }
            if (g.r0 - grid.r0).abs() > 1e-12 * grid.r0 {
                return Err(Error::Domain(format!(
                    "g was built at r0 = {}, grid starts at {}",
                    g.r0, grid.r0
                )));
            }
            let defect = crate::linalg::hermiticity_defect(&g.entries);
            if defect > 0.0 {
                return Err(Error::NotHermitian { defect, tol: 0.0 });
            }
            Ok(build(params, grid, Some(&g.entries), channels))
        }
        InnerBoundary::Dirichlet => Ok(build(params, grid, None, channels)),
    }
}

/// Robin assembly from a raw matrix with no Hermiticity check.
#[doc(hidden)]
pub fn assemble_radial_hamiltonian_unchecked(
    params: &ModelParams,
    grid: &AnnulusGrid,
    g: &CMatrix,
    channels: &[ChannelSpec],
) -> BandMatrix {
    build(params, grid, Some(g), channels)
}

fn build(params: &ModelParams, grid: &AnnulusGrid, g: Option<&CMatrix>, channels: &[ChannelSpec]) -> BandMatrix {
    let m = channels.len();
    let h = grid.h();
    let t = 1.0 / (2.0 * params.mu * h * h);
    let potential = |r: f64, a: usize| channels[a].centrifugal() / (2.0 * params.mu * r * r);
    let c = |x: f64| Complex64::new(x, 0.0);

    match g {
        Some(g) => {
            let nodes = grid.n + 1;
            let mut hm = BandMatrix::zeros(nodes * m, m);
            let r0 = grid.r0;
            for a in 0..m {
                for b in 0..m {
                    let mut v = 2.0 * t * h * g[(a, b)];
                    if a == b {
                        v += c(2.0 * t * (1.0 + h / r0) + potential(r0, a));
                    }
                    hm.set(a, b, v);
                }
                let off = c(-std::f64::consts::SQRT_2 * t);
                hm.set(a, m + a, off);
                hm.set(m + a, a, off);
            }
            for i in 1..nodes {
                let r = grid.node(i);
                for a in 0..m {
                    let k = i * m + a;
                    hm.set(k, k, c(2.0 * t + potential(r, a)));
                    if i + 1 < nodes {
                        hm.set(k, k + m, c(-t));
                        hm.set(k + m, k, c(-t));
                    }
                }
            }
            hm
        }
        None => {
            let nodes = grid.n;
            let mut hm = BandMatrix::zeros(nodes * m, m);
            for i in 0..nodes {
                let r = grid.node(i + 1);
                for a in 0..m {
                    let k = i * m + a;
                    hm.set(k, k, c(2.0 * t + potential(r, a)));
                    if i + 1 < nodes {
                        hm.set(k, k + m, c(-t));
                        hm.set(k + m, k, c(-t));
                    }
                }
            }
            hm
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleLevel {
    pub energy: f64,
    /// `||H v - E v|| / ||H||`.
    pub residual: f64,
}

/// The `k` lowest eigenvalues of an assembled Hamiltonian, each with its
/// eigenvector residual checked against `1e-8 ||H||`.
pub fn oracle_spectrum(h: &BandMatrix, k: usize) -> Result<Vec<OracleLevel>> {
    Ok(lowest_eigenpairs(h, k)?
        .into_iter()
        .map(|p| OracleLevel {
            energy: p.value,
            residual: p.residual,
        })
        .collect())
}
