use num_complex::Complex64;

use super::deficiency::{DeficiencySign, DeficiencyVector, Normalization};
use super::scattering::MixingSolution;
use super::ExtensionMatrix;
use crate::error::{Error, Result};
use crate::specfun::{radial_profile, small_arg_coeffs, RadialValue, SmallRBehavior, SolutionKind};

/// A multi-channel radial function with analytic derivatives.
pub trait ChannelFunction {
    fn n_channels(&self) -> usize;
    /// Value and `r`-derivative in every channel.
    fn channel_values(&self, r: f64) -> Result<Vec<RadialValue>>;
    /// Two-term small-`r` expansion in every channel.
    fn small_r(&self) -> Result<Vec<SmallRBehavior>>;
}

/// `phi^source = phi+^source + sum_j U[source, j] phi-^j`.
#[derive(Clone, Debug)]
pub struct DomainVector {
    pub source: usize,
    coeff: Vec<Complex64>,
    plus: DeficiencyVector,
    minus: Vec<DeficiencyVector>,
}

impl DomainVector {
    pub fn new(u: &ExtensionMatrix, source: usize, normalization: Normalization) -> Result<Self> {
        if source >= u.dim() {
            return Err(Error::Domain(format!("source channel {source} out of range")));
        }
        let p = u.params();
        let chans = u.channels();
        let plus = DeficiencyVector::with_normalization(chans[source], DeficiencySign::Plus, p, normalization)?;
        let minus = chans
            .iter()
            .map(|ch| DeficiencyVector::with_normalization(*ch, DeficiencySign::Minus, p, normalization))
            .collect::<Result<Vec<_>>>()?;
        let coeff = (0..u.dim()).map(|j| u.get(source, j)).collect();
        Ok(DomainVector {
            source,
            coeff,
            plus,
            minus,
        })
    }
}

impl ChannelFunction for DomainVector {
    fn n_channels(&self) -> usize {
        self.minus.len()
    }

    fn channel_values(&self, r: f64) -> Result<Vec<RadialValue>> {
        let mut out = Vec::with_capacity(self.minus.len());
        for (j, m) in self.minus.iter().enumerate() {
            let pm = m.profile(r)?;
            let mut v = RadialValue {
                value: self.coeff[j] * pm.value,
                derivative: self.coeff[j] * pm.derivative,
            };
            if j == self.source {
                let pp = self.plus.profile(r)?;
                v.value += pp.value;
                v.derivative += pp.derivative;
            }
            out.push(v);
        }
        Ok(out)
    }

    fn small_r(&self) -> Result<Vec<SmallRBehavior>> {
        let mut out = Vec::with_capacity(self.minus.len());
        for (j, m) in self.minus.iter().enumerate() {
            let mut b = m.small_r()?.scaled(self.coeff[j]);
            if j == self.source {
                b = b.add(&self.plus.small_r()?);
            }
            out.push(b);
        }
        Ok(out)
    }
}

/// One term `amplitude r^{-1/2} Z_nu(scale r)` placed in a channel.
#[derive(Clone, Copy, Debug)]
pub struct Term {
    pub channel: usize,
    pub kind: SolutionKind,
    pub nu: f64,
    pub scale: Complex64,
    pub amplitude: Complex64,
}

/// A finite sum of radial solutions over `n` channels.
#[derive(Clone, Debug)]
pub struct Superposition {
    pub n: usize,
    pub terms: Vec<Term>,
}

impl Superposition {
    /// A single solution in one channel.
    pub fn single(n: usize, channel: usize, kind: SolutionKind, nu: f64, scale: Complex64) -> Self {
        Superposition {
            n,
            terms: vec![Term {
                channel,
                kind,
                nu,
                scale,
                amplitude: Complex64::new(1.0, 0.0),
            }],
        }
    }
}

impl ChannelFunction for Superposition {
    fn n_channels(&self) -> usize {
        self.n
    }

    fn channel_values(&self, r: f64) -> Result<Vec<RadialValue>> {
        let zero = Complex64::new(0.0, 0.0);
        let mut out = vec![
            RadialValue {
                value: zero,
                derivative: zero
            };
            self.n
        ];
        for t in &self.terms {
            let p = radial_profile(t.kind, t.nu, t.scale, r)?;
            out[t.channel].value += t.amplitude * p.value;
            out[t.channel].derivative += t.amplitude * p.derivative;
        }
        Ok(out)
    }

    fn small_r(&self) -> Result<Vec<SmallRBehavior>> {
        let mut out: Vec<Option<SmallRBehavior>> = vec![None; self.n];
        for t in &self.terms {
            let b = small_arg_coeffs(t.kind, t.nu, t.scale)?.scaled(t.amplitude);
            let slot = &mut out[t.channel];
            *slot = Some(match slot {
                Some(prev) => prev.add(&b),
                None => b,
            });
        }
        // channels without terms contribute nothing; any order will do
        Ok(out.into_iter().map(|b| b.unwrap_or(SmallRBehavior::zero(0.5))).collect())
    }
}

impl MixingSolution {
    pub fn as_superposition(&self) -> Superposition {
        let scale = Complex64::new(self.lambda, 0.0);
        let mut terms = Vec::new();
        for (ch, (chan, (an, as_))) in self.channels.iter().zip(&self.amplitudes).enumerate() {
            terms.push(Term {
                channel: ch,
                kind: SolutionKind::Nonsingular,
                nu: chan.nu,
                scale,
                amplitude: *an,
            });
            terms.push(Term {
                channel: ch,
                kind: SolutionKind::Singular,
                nu: chan.nu,
                scale,
                amplitude: *as_,
            });
        }
        Superposition {
            n: self.channels.len(),
            terms,
        }
    }
}

/// `(1/2mu) sum_ch r^2 (conj(psiA)' psiB - conj(psiA) psiB')` at `r`.
pub fn hermiticity_defect(a: &dyn ChannelFunction, b: &dyn ChannelFunction, r: f64, mu: f64) -> Result<Complex64> {
    if a.n_channels() != b.n_channels() {
        return Err(Error::DimensionMismatch {
            expected: a.n_channels(),
            got: b.n_channels(),
        });
    }
    let va = a.channel_values(r)?;
    let vb = b.channel_values(r)?;
    let mut s = Complex64::new(0.0, 0.0);
    for (x, y) in va.iter().zip(&vb) {
        s += x.derivative.conj() * y.value - x.value.conj() * y.derivative;
    }
    Ok(s * r * r / (2.0 * mu))
}

/// The `r -> 0` limit of [`hermiticity_defect`] from the small-`r`
/// coefficients.
pub fn hermiticity_defect_limit(a: &dyn ChannelFunction, b: &dyn ChannelFunction, mu: f64) -> Result<Complex64> {
    if a.n_channels() != b.n_channels() {
        return Err(Error::DimensionMismatch {
            expected: a.n_channels(),
            got: b.n_channels(),
        });
    }
    let sa = a.small_r()?;
    let sb = b.small_r()?;
    let mut s = Complex64::new(0.0, 0.0);
    for (x, y) in sa.iter().zip(&sb) {
        if x.nu == y.nu {
            s += x.boundary_form(y);
        }
    }
    Ok(s / (2.0 * mu))
}

/// Largest gap between a domain vector's small-`r` coefficients and
/// [`domain_vector_smallr`].
#[cfg(test)]
fn domain_vector_matches(u: &ExtensionMatrix, source: usize) -> Result<f64> {
    let dv = DomainVector::new(u, source, Normalization::FullSpace)?;
    let a = dv.small_r()?;
    let b = super::scattering::domain_vector_smallr(u, source)?;
    Ok(a.iter()
        .zip(&b)
        .map(|(x, y)| (x.c_minus - y.c_minus).norm().max((x.c_plus - y.c_plus).norm()))
        .fold(0.0, f64::max))
}
