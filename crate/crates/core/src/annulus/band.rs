//! Banded complex matrices and a Hermitian eigensolver for their lowest
//! eigenvalues: Sylvester inertia counts from a banded `L D L^H`
//! factorisation drive bisection, inverse iteration supplies the vectors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square matrix with entries only for `|i - j| <= bw`, stored row by row.
#[derive(Clone, Debug, PartialEq)]
pub struct BandMatrix {
    dim: usize,
    bw: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn zeros(dim: usize, bw: usize) -> Self {
        BandMatrix {
            dim,
            bw,
            data: vec![ZERO; dim * (2 * bw + 1)],
        }
    }

    pub fn from_dense(m: &CMatrix) -> Self {
        let n = m.nrows();
        let mut bw = 0;
        for i in 0..n {
            for j in 0..n {
                if m[(i, j)] != ZERO {
                    bw = bw.max(i.abs_diff(j));
                }
            }
        }
        let mut b = Self::zeros(n, bw);
        for i in 0..n {
            for j in i.saturating_sub(bw)..(i + bw + 1).min(n) {
                b.set(i, j, m[(i, j)]);
            }
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    fn idx(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.dim || j >= self.dim || i.abs_diff(j) > self.bw {
            return None;
        }
        Some(i * (2 * self.bw + 1) + j + self.bw - i)
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.idx(i, j).map_or(ZERO, |k| self.data[k])
    }

    /// Panics outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let k = self.idx(i, j).expect("entry outside the band");
        self.data[k] = v;
    }

    pub fn to_dense(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }

    /// `max |H_ij - conj(H_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.dim {
            for j in i..(i + self.bw + 1).min(self.dim) {
                d = d.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        d
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| {
                (i.saturating_sub(self.bw)..(i + self.bw + 1).min(self.dim))
                    .map(|j| self.get(i, j).norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| {
                (i.saturating_sub(self.bw)..(i + self.bw + 1).min(self.dim))
                    .map(|j| self.get(i, j) * x[j])
                    .sum()
            })
            .collect()
    }

    /// Gershgorin interval of a Hermitian band matrix.
    fn spectral_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.dim {
            let c = self.get(i, i).re;
            let r: f64 = (i.saturating_sub(self.bw)..(i + self.bw + 1).min(self.dim))
                .filter(|&j| j != i)
                .map(|j| self.get(i, j).norm())
                .sum();
            lo = lo.min(c - r);
            hi = hi.max(c + r);
        }
        (lo, hi)
    }
}

/// `L D L^H` of `H - sigma I` without pivoting; `l[i * bw + (i - j - 1)]`
/// holds `L_ij` for `i - bw <= j < i`.
struct Ldl {
    bw: usize,
    l: Vec<Complex64>,
    d: Vec<f64>,
}

impl Ldl {
    fn factor(h: &BandMatrix, sigma: f64, tiny: f64) -> Self {
        let (n, bw) = (h.dim, h.bw);
        let mut l = vec![ZERO; n * bw.max(1)];
        let mut d = vec![0.0; n];
        let at = |i: usize, j: usize| i * bw + (i - j - 1);
        for i in 0..n {
            let lo = i.saturating_sub(bw);
            for j in lo..i {
                let mut s = h.get(i, j);
                for k in lo.max(j.saturating_sub(bw))..j {
                    s -= l[at(i, k)] * l[at(j, k)].conj() * d[k];
                }
                l[at(i, j)] = s / d[j];
            }
            let mut di = h.get(i, i).re - sigma;
            for k in lo..i {
                di -= l[at(i, k)].norm_sqr() * d[k];
            }
            if di.abs() < tiny {
                di = -tiny;
            }
            d[i] = di;
        }
        Ldl { bw, l, d }
    }

    fn negatives(&self) -> usize {
        self.d.iter().filter(|&&x| x < 0.0).count()
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let (n, bw) = (self.d.len(), self.bw);
        let at = |i: usize, j: usize| i * bw + (i - j - 1);
        let mut y = b.to_vec();
        for i in 0..n {
            for j in i.saturating_sub(bw)..i {
                let t = self.l[at(i, j)] * y[j];
                y[i] -= t;
            }
        }
        for i in 0..n {
            y[i] /= self.d[i];
        }
        for i in (0..n).rev() {
            for k in (i + 1)..(i + bw + 1).min(n) {
                let t = self.l[at(k, i)].conj() * y[k];
                y[i] -= t;
            }
        }
        y
    }
}

/// Number of eigenvalues of the Hermitian `h` below `sigma`.
pub fn count_below(h: &BandMatrix, sigma: f64) -> usize {
    let tiny = f64::EPSILON * h.norm_inf().max(1.0) * 1e-3;
    Ldl::factor(h, sigma, tiny).negatives()
}

#[derive(Clone, Debug)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<Complex64>,
    /// `||H v - lambda v|| / ||H||` for unit `v`.
    pub residual: f64,
}

fn normalize(v: &mut [Complex64]) {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}

/// The `k` lowest eigenpairs of a Hermitian band matrix.
pub fn lowest_eigenpairs(h: &BandMatrix, k: usize) -> Result<Vec<Eigenpair>> {
    let defect = h.hermiticity_defect();
    if defect > 0.0 {
        return Err(Error::NotHermitian { defect, tol: 0.0 });
    }
    let n = h.dim();
    let k = k.min(n);
    let norm = h.norm_inf().max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * norm * 1e-3;
    let (glo, ghi) = h.spectral_bounds();
    let tol = 4.0 * f64::EPSILON * norm;

    let mut values = Vec::with_capacity(k);
    for idx in 0..k {
        let (mut lo, mut hi) = (glo - tol, ghi + tol);
        let mut iters = 0;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if Ldl::factor(h, mid, tiny).negatives() > idx {
                hi = mid;
            } else {
                lo = mid;
            }
            iters += 1;
            if iters > 400 {
                return Err(Error::NoConvergence(format!("bisection for eigenvalue {idx}")));
            }
        }
        values.push(0.5 * (lo + hi));
    }

    let mut pairs: Vec<Eigenpair> = Vec::with_capacity(k);
    let cluster = 1e-8 * norm;
    for (idx, &lambda) in values.iter().enumerate() {
        // shift slightly off the eigenvalue so the factorisation stays finite
        let shift = lambda - 1e3 * tol;
        let f = Ldl::factor(h, shift, tiny);
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(1.0 + ((i * 7919 + idx * 104729) % 1000) as f64 * 1e-3, 0.0))
            .collect();
        normalize(&mut v);
        let peers: Vec<&Eigenpair> = pairs.iter().filter(|p| (p.value - lambda).abs() < cluster).collect();
        for _ in 0..4 {
            v = f.solve(&v);
            for p in &peers {
                let ov: Complex64 = p.vector.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(&p.vector) {
                    *x -= ov * y;
                }
            }
            normalize(&mut v);
        }
        let hv = h.mul_vec(&v);
        let res = hv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - lambda * b).norm_sqr())
            .sum::<f64>()
            .sqrt()
            / norm;
        if !(res <= 1e-8) {
            return Err(Error::NoConvergence(format!(
                "eigenvector {idx} residual {res:e} exceeds 1e-8 ||H||"
            )));
        }
        pairs.push(Eigenpair {
            value: lambda,
            vector: v,
            residual: res,
        });
    }
    Ok(pairs)
}
