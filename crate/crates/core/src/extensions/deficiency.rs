use std::f64::consts::PI;

use num_complex::Complex64;

use crate::channels::{ChannelSpec, ModelParams};
use crate::error::{Error, Result};
use crate::quadrature;
use crate::specfun::{radial_profile, small_arg_coeffs, RadialValue, SmallRBehavior, SolutionKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeficiencySign {
    Plus,
    Minus,
}

/// Interval over which deficiency vectors are normalised.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Normalization {
    /// `(0, inf)`, the normalisation of the extension construction.
    FullSpace,
    /// `[r0, inf)`. With it the boundary matrix built from `U` is Hermitian
    /// at every `r0`, not only in the limit.
    Annulus { r0: f64 },
}

/// `phi+/- = N r^{-1/2} K_nu((1 -/+ i) q r)`, solving `H phi = +/- i s phi`
/// with `q = sqrt(mu s)` and `s` the deficiency scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeficiencyVector {
    pub channel: ChannelSpec,
    pub sign: DeficiencySign,
    pub mu: f64,
    pub scale: f64,
    pub norm: f64,
}

impl DeficiencyVector {
    /// Full-space normalised vector, `N^2 = 8 q^2 cos(nu pi/2) / pi`.
    pub fn new(channel: ChannelSpec, sign: DeficiencySign, params: &ModelParams) -> Result<Self> {
        params.validate()?;
        if !(channel.nu > 0.0 && channel.nu < 1.0) {
            return Err(Error::Domain(format!(
                "deficiency vectors need 0 < nu < 1, got {}",
                channel.nu
            )));
        }
        let q2 = params.mu * params.deficiency_scale;
        let norm = (8.0 * q2 * (0.5 * PI * channel.nu).cos() / PI).sqrt();
        Ok(DeficiencyVector {
            channel,
            sign,
            mu: params.mu,
            scale: params.deficiency_scale,
            norm,
        })
    }

    pub fn with_normalization(channel: ChannelSpec, sign: DeficiencySign, params: &ModelParams, n: Normalization) -> Result<Self> {
        let mut v = Self::new(channel, sign, params)?;
        if let Normalization::Annulus { r0 } = n {
            v.norm = 1.0;
            let raw = v.norm_from(r0)?;
            v.norm = 1.0 / raw.sqrt();
        }
        Ok(v)
    }

    pub fn q(&self) -> f64 {
        (self.mu * self.scale).sqrt()
    }

    /// The complex Bessel argument per unit radius.
    pub fn argument_scale(&self) -> Complex64 {
        let q = self.q();
        match self.sign {
            DeficiencySign::Plus => Complex64::new(q, -q),
            DeficiencySign::Minus => Complex64::new(q, q),
        }
    }

    fn kind(&self) -> SolutionKind {
        match self.sign {
            DeficiencySign::Plus => SolutionKind::DeficiencyPlus,
            DeficiencySign::Minus => SolutionKind::DeficiencyMinus,
        }
    }

    /// Normalised value and derivative at `r`.
    pub fn profile(&self, r: f64) -> Result<RadialValue> {
        let v = radial_profile(self.kind(), self.channel.nu, self.argument_scale(), r)?;
        Ok(RadialValue {
            value: self.norm * v.value,
            derivative: self.norm * v.derivative,
        })
    }

    /// Normalised small-`r` coefficients.
    pub fn small_r(&self) -> Result<SmallRBehavior> {
        Ok(small_arg_coeffs(self.kind(), self.channel.nu, self.argument_scale())?
            .scaled(Complex64::new(self.norm, 0.0)))
    }

    /// `int_{r0}^inf |phi|^2 r^2 dr` in closed form.
    ///
    /// For `u = r phi`, `(conj(u) u' - conj(u)' u)' = -/+ 4 i mu s |u|^2`, and
    /// the boundary term vanishes at infinity, so the tail integral is
    /// `+/- r0^2 Im(conj(phi) phi')(r0) / (2 mu s)`.
    pub fn norm_from(&self, r0: f64) -> Result<f64> {
        let p = self.profile(r0)?;
        let w = r0 * r0 * (p.value.conj() * p.derivative).im / (2.0 * self.mu * self.scale);
        Ok(match self.sign {
            DeficiencySign::Plus => w,
            DeficiencySign::Minus => -w,
        })
    }

    /// `int_0^{r_max} |phi|^2 r^2 dr` by Gauss-Legendre in `ln r` above
    /// `1e-6 / q`, with the two-term small-`r` expansion integrated exactly
    /// below.
    pub fn norm_quadrature(&self, r_max: f64) -> Result<f64> {
        let r_min = 1e-6 / self.q();
        let b = self.small_r()?;
        let nu = self.channel.nu;
        let (am, ap) = (b.c_minus, b.c_plus);
        let tail = am.norm_sqr() * r_min.powf(2.0 - 2.0 * nu) / (2.0 - 2.0 * nu)
            + 2.0 * (am.conj() * ap).re * r_min * r_min / 2.0
            + ap.norm_sqr() * r_min.powf(2.0 + 2.0 * nu) / (2.0 + 2.0 * nu);
        let (t0, t1) = (r_min.ln(), r_max.ln());
        let mut err = None;
        let body = quadrature::integrate(
            |t| {
                let r = t.exp();
                match self.profile(r) {
                    Ok(p) => p.value.norm_sqr() * r * r * r,
                    Err(e) => {
                        err.get_or_insert(e);
                        0.0
                    }
                }
            },
            t0,
            t1,
            ((t1 - t0) * 4.0).ceil() as usize,
            20,
        );
        match err {
            Some(e) => Err(e),
            None => Ok(tail + body),
        }
    }
}
