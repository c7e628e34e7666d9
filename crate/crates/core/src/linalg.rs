//! Small dense complex-matrix helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |(U^dagger U - I)_ij|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.ncols();
    let prod = u.adjoint() * u;
    max_abs(&(prod - CMatrix::identity(n, n)))
}

/// `max |(G - G^dagger)_ij|`.
pub fn hermiticity_defect(g: &CMatrix) -> f64 {
    max_abs(&(g - g.adjoint()))
}

/// Largest off-diagonal modulus.
pub fn offdiag_max(m: &CMatrix) -> f64 {
    let mut out = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j {
                out = out.max(m[(i, j)].norm());
            }
        }
    }
    out
}

fn norm_one(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Inverse together with the 1-norm condition number.
pub fn inverse_with_condition(m: &CMatrix) -> Result<(CMatrix, f64)> {
    let inv = m
        .clone()
        .try_inverse()
        .ok_or(Error::Singular { cond: f64::INFINITY })?;
    let cond = norm_one(m) * norm_one(&inv);
    if !cond.is_finite() {
        return Err(Error::Singular { cond });
    }
    Ok((inv, cond))
}

/// Haar-distributed unitary from the QR factorisation of a complex Ginibre
/// matrix, with the phases of `diag(R)` divided out.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) / std::f64::consts::SQRT_2
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Householder reflection `I - 2 v v^dagger / (v^dagger v)`.
pub fn householder(v: &[Complex64]) -> CMatrix {
    let n = v.len();
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    CMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        c(delta, 0.0) - 2.0 * v[i] * v[j].conj() / vv
    })
}

/// Random Hermitian matrix with standard normal entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im)
    });
    (a.clone() + a.adjoint()) * c(0.5, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..6 {
            let u = random_unitary(n, &mut rng);
            assert!(unitarity_defect(&u) < 1e-13);
        }
    }

    #[test]
    fn householder_is_unitary_and_hermitian() {
        let h = householder(&[c(0.3, -1.0), c(2.0, 0.5), c(0.0, 0.7)]);
        assert!(unitarity_defect(&h) < 1e-14);
        assert!(hermiticity_defect(&h) < 1e-15);
    }

    #[test]
    fn singular_matrix_is_an_error() {
        let m = CMatrix::from_element(2, 2, c(1.0, 0.0));
        assert!(matches!(inverse_with_condition(&m), Err(Error::Singular { .. })));
    }
}
