use num_complex::Complex64;

use super::deficiency::{DeficiencySign, DeficiencyVector};
use super::ExtensionMatrix;
use crate::channels::ChannelSpec;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::specfun::{small_arg_coeffs, SmallRBehavior, SolutionKind};

/// Small-`r` coefficients of `phi^source` in every channel:
/// `phi+` in the source channel plus `U[source, ch] phi-` in each channel.
pub fn domain_vector_smallr(u: &ExtensionMatrix, source: usize) -> Result<Vec<SmallRBehavior>> {
    check_source(u, source)?;
    let p = u.params();
    u.channels()
        .iter()
        .enumerate()
        .map(|(ch, chan)| {
            let minus = DeficiencyVector::new(*chan, DeficiencySign::Minus, p)?.small_r()?;
            let mut b = minus.scaled(u.get(source, ch));
            if ch == source {
                b = b.add(&DeficiencyVector::new(*chan, DeficiencySign::Plus, p)?.small_r()?);
            }
            Ok(b)
        })
        .collect()
}

fn check_source(u: &ExtensionMatrix, source: usize) -> Result<()> {
    if source >= u.dim() {
        return Err(Error::Domain(format!(
            "source channel {source} out of range 0..{}",
            u.dim()
        )));
    }
    Ok(())
}

/// The energy eigenstate `sum_ch (A_N Psi_N + A_S Psi_S)` whose small-`r`
/// behaviour matches `phi^source`.
#[derive(Clone, Debug)]
pub struct MixingSolution {
    pub energy: f64,
    /// `sqrt(2 mu E)`.
    pub lambda: f64,
    pub source: usize,
    pub channels: Vec<ChannelSpec>,
    /// `(A_N, A_S)` per channel.
    pub amplitudes: Vec<(Complex64, Complex64)>,
    /// Largest 2-norm condition number of the per-channel matching systems.
    pub condition: f64,
}

impl MixingSolution {
    pub fn source_channel(&self) -> ChannelSpec {
        self.channels[self.source]
    }
}

/// 2-norm condition number of a real 2x2 matrix.
fn condition_2x2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let f = a * a + b * b + c * c + d * d;
    let det = (a * d - b * c).abs();
    if det == 0.0 {
        return f64::INFINITY;
    }
    let s1 = (0.5 * (f + (f * f - 4.0 * det * det).max(0.0).sqrt())).sqrt();
    s1 * s1 / det
}

/// Matches `phi^source` channel by channel:
/// `A_S c-(S) = c-(phi)` and `A_N c+(N) + A_S c+(S) = c+(phi)`.
pub fn scattering_eigenstate(u: &ExtensionMatrix, energy: f64, source: usize) -> Result<MixingSolution> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::Domain(format!("scattering energy must be > 0, got {energy}")));
    }
    let phi = domain_vector_smallr(u, source)?;
    let lambda = (2.0 * u.params().mu * energy).sqrt();
    let scale = Complex64::new(lambda, 0.0);
    let mut amplitudes = Vec::with_capacity(u.dim());
    let mut condition = 0.0f64;
    for (chan, target) in u.channels().iter().zip(&phi) {
        let n = small_arg_coeffs(SolutionKind::Nonsingular, chan.nu, scale)?;
        let s = small_arg_coeffs(SolutionKind::Singular, chan.nu, scale)?;
        let (sm, sp, np) = (s.c_minus.re, s.c_plus.re, n.c_plus.re);
        let cond = condition_2x2(sm, 0.0, sp, np);
        if !cond.is_finite() || cond > 1e12 {
            return Err(Error::Singular { cond });
        }
        condition = condition.max(cond);
        let a_s = target.c_minus / sm;
        let a_n = (target.c_plus - a_s * sp) / np;
        amplitudes.push((a_n, a_s));
    }
    Ok(MixingSolution {
        energy,
        lambda,
        source,
        channels: u.channels().to_vec(),
        amplitudes,
        condition,
    })
}

/// `A_N[ch, source]` and `A_S[ch, source]` for every source.
#[derive(Clone, Debug)]
pub struct MixingMatrix {
    pub energy: f64,
    pub a_n: CMatrix,
    pub a_s: CMatrix,
    pub condition: f64,
}

pub fn mixing_matrix(u: &ExtensionMatrix, energy: f64) -> Result<MixingMatrix> {
    let n = u.dim();
    let mut a_n = CMatrix::zeros(n, n);
    let mut a_s = CMatrix::zeros(n, n);
    let mut condition = 0.0f64;
    for source in 0..n {
        let sol = scattering_eigenstate(u, energy, source)?;
        condition = condition.max(sol.condition);
        for (ch, (an, as_)) in sol.amplitudes.iter().enumerate() {
            a_n[(ch, source)] = *an;
            a_s[(ch, source)] = *as_;
        }
    }
    Ok(MixingMatrix {
        energy,
        a_n,
        a_s,
        condition,
    })
}
