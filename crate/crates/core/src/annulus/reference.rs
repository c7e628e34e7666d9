use num_complex::Complex64;

use super::BoundaryConditionMatrix;
use crate::channels::ChannelSpec;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::specfun::{radial_profile, SolutionKind};

/// The sub-block of `g` on the listed channels.
pub fn restrict(g: &BoundaryConditionMatrix, indices: &[usize]) -> Result<BoundaryConditionMatrix> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= g.dim()) {
        return Err(Error::Domain(format!("channel index {bad} out of range")));
    }
    let n = indices.len();
    let entries = CMatrix::from_fn(n, n, |a, b| g.entries[(indices[a], indices[b])]);
    Ok(BoundaryConditionMatrix {
        r0: g.r0,
        channels: indices.iter().map(|&i| g.channels[i]).collect(),
        entries,
        hermiticity_defect: g.hermiticity_defect,
    })
}

/// Bound-state energy of one decoupled channel on `[r0, inf)` with
/// `psi'(r0) = g psi(r0)`: the root in `lambda` of
/// `(psi'/psi)(r0) = g` for `psi = r^{-1/2} K_nu(lambda r)`, returned as
/// `-lambda^2 / (2 mu)`.
///
/// The log-derivative falls monotonically with `lambda`, so the root is
/// bracketed by scanning outward from `lambda_guess` and then bisected.
pub fn annulus_bound_energy(channel: &ChannelSpec, mu: f64, r0: f64, g: f64, lambda_guess: f64) -> Result<f64> {
    let f = |lam: f64| -> Result<f64> {
        let p = radial_profile(SolutionKind::Bound, channel.nu, Complex64::new(lam, 0.0), r0)?;
        Ok((p.derivative / p.value).re - g)
    };
    let (mut lo, mut hi) = (lambda_guess, lambda_guess);
    let mut flo = f(lo)?;
    let mut fhi = flo;
    let mut steps = 0;
    while flo < 0.0 {
        lo *= 0.5;
        flo = f(lo)?;
        steps += 1;
        if steps > 200 {
            return Err(Error::NoConvergence("no bound state: log-derivative stays below g".into()));
        }
    }
    while fhi > 0.0 {
        hi *= 2.0;
        fhi = f(hi)?;
        steps += 1;
        if steps > 200 {
            return Err(Error::NoConvergence("could not bracket the annulus bound state".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lam = 0.5 * (lo + hi);
    Ok(-lam * lam / (2.0 * mu))
}
