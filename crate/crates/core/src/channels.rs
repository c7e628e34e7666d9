//! Angular channels, their radial orders and the singular set.
//!
//! A channel is one angular sector; the radial problem in it is
//! `-(1/2mu) (1/r) d^2/dr^2 r + coeff / (2 mu r^2)` with `coeff = kappa(kappa+1)`
//! for the monopole and `l(l+1) - c` for the inverse-square model. The radial
//! order is `nu = sqrt(coeff + 1/4)` and a channel is singular when `nu < 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::is_integer_order;

const ALGEBRA_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Monopole,
    InverseSquare,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub model: Model,
    /// Charge-monopole product `e g`; quantised in steps of 1/2.
    pub eg: f64,
    /// Inverse-square strength (attractive for `c > 0`).
    pub c: f64,
    pub mu: f64,
    /// The positive constant `s` in `H phi = +/- i s phi`.
    pub deficiency_scale: f64,
}

impl ModelParams {
    pub fn monopole(eg: f64) -> Self {
        ModelParams {
            model: Model::Monopole,
            eg,
            c: 0.0,
            mu: 1.0,
            deficiency_scale: 1.0,
        }
    }

    pub fn inverse_square(c: f64) -> Self {
        ModelParams {
            model: Model::InverseSquare,
            eg: 0.5,
            c,
            mu: 1.0,
            deficiency_scale: 1.0,
        }
    }

    /// Sets `mu` and resets the deficiency scale to it.
    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self.deficiency_scale = mu;
        self
    }

    pub fn with_deficiency_scale(mut self, s: f64) -> Self {
        self.deficiency_scale = s;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) || !self.mu.is_finite() {
            return Err(Error::Domain(format!("mu must be > 0, got {}", self.mu)));
        }
        if !(self.deficiency_scale > 0.0) || !self.deficiency_scale.is_finite() {
            return Err(Error::Domain(format!(
                "deficiency_scale must be > 0, got {}",
                self.deficiency_scale
            )));
        }
        if self.model == Model::Monopole {
            let two_eg = 2.0 * self.eg;
            if !(two_eg >= 1.0) || (two_eg - two_eg.round()).abs() > ALGEBRA_TOL {
                return Err(Error::Domain(format!(
                    "2 eg must be a positive integer, got eg = {}",
                    self.eg
                )));
            }
        }
        if !self.c.is_finite() {
            return Err(Error::Domain("c must be finite".into()));
        }
        Ok(())
    }
}

/// Angular quantum numbers. Half-integers are stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AngularLabel {
    Total { two_j: u32, two_m: i32 },
    Orbital { l: u32, m: i32 },
}

impl AngularLabel {
    /// `j` for monopole channels, `l` for orbital ones.
    pub fn j(&self) -> f64 {
        match *self {
            AngularLabel::Total { two_j, .. } => 0.5 * two_j as f64,
            AngularLabel::Orbital { l, .. } => l as f64,
        }
    }

    pub fn m(&self) -> f64 {
        match *self {
            AngularLabel::Total { two_m, .. } => 0.5 * two_m as f64,
            AngularLabel::Orbital { m, .. } => m as f64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    pub label: AngularLabel,
    /// Eigenvalue of `K` (monopole channels only).
    pub kappa: Option<f64>,
    pub nu: f64,
}

impl ChannelSpec {
    pub fn is_singular(&self) -> bool {
        self.nu < 1.0
    }

    /// Coefficient of `1/(2 mu r^2)` in the radial Hamiltonian, `nu^2 - 1/4`.
    pub fn centrifugal(&self) -> f64 {
        match self.kappa {
            Some(k) => k * (k + 1.0),
            None => self.nu * self.nu - 0.25,
        }
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.label, self.kappa) {
            (AngularLabel::Total { .. }, Some(k)) => {
                write!(f, "j={} kappa={:.6} m={}", self.label.j(), k, self.label.m())
            }
            _ => write!(f, "l={} m={}", self.label.j(), self.label.m()),
        }
    }
}

/// Roots of `kappa^2 = (j + 1/2)^2 - (eg)^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KappaRoots {
    /// Bottom multiplet `j = eg - 1/2`: a single channel with `kappa = 0`.
    Single(f64),
    /// `(-|kappa|, +|kappa|)`.
    Pair(f64, f64),
}

impl KappaRoots {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            KappaRoots::Single(k) => vec![k],
            KappaRoots::Pair(a, b) => vec![a, b],
        }
    }
}

pub fn kappa_of(j: f64, eg: f64) -> Result<KappaRoots> {
    let steps = j - (eg - 0.5);
    if steps < -ALGEBRA_TOL || (steps - steps.round()).abs() > ALGEBRA_TOL {
        return Err(Error::Domain(format!(
            "j = {j} is not in eg - 1/2, eg + 1/2, ... for eg = {eg}"
        )));
    }
    let sq = (j + 0.5).powi(2) - eg * eg;
    if sq < -ALGEBRA_TOL {
        return Err(Error::Domain(format!("(j + 1/2)^2 < (eg)^2 for j = {j}, eg = {eg}")));
    }
    if steps.round() == 0.0 {
        return Ok(KappaRoots::Single(0.0));
    }
    let k = sq.max(0.0).sqrt();
    Ok(KappaRoots::Pair(-k, k))
}

/// Radial order of a monopole channel, `|kappa + 1/2|`.
pub fn nu_from_kappa(kappa: f64) -> Result<f64> {
    let nu = (kappa + 0.5).abs();
    if is_integer_order(nu) {
        return Err(Error::IntegerOrder(nu));
    }
    Ok(nu)
}

/// Radial order of an inverse-square channel, `sqrt(1/4 + l(l+1) - c)`.
pub fn nu_from_l(l: u32, c: f64) -> Result<f64> {
    let nu2 = raw_nu_squared(l, c);
    if nu2 <= 0.0 {
        return Err(Error::Unsupported(format!(
            "l = {l} at c = {c} has nu^2 = {nu2} <= 0 (fall to the centre)"
        )));
    }
    let nu = nu2.sqrt();
    if is_integer_order(nu) {
        return Err(Error::IntegerOrder(nu));
    }
    Ok(nu)
}

fn raw_nu_squared(l: u32, c: f64) -> f64 {
    let l = l as f64;
    0.25 + l * (l + 1.0) - c
}

/// Threshold with `l_crit (l_crit + 1) - c = 3/4`; channels with `l < l_crit`
/// are singular. Strongly repulsive `c < -1` gives 0.
pub fn l_crit(c: f64) -> f64 {
    if 1.0 + c < 0.0 {
        return 0.0;
    }
    (-0.5 + (1.0 + c).sqrt()).max(0.0)
}

/// All channels up to `cutoff` (`j_max` or `l_max`) in canonical order:
/// ascending `j`, then `kappa`, then `m` (monopole); ascending `l`, then `m`.
///
/// Regular channels whose order happens to be an integer are still listed.
pub fn enumerate_channels(params: &ModelParams, cutoff: f64) -> Result<Vec<ChannelSpec>> {
    params.validate()?;
    let mut out = Vec::new();
    match params.model {
        Model::Monopole => {
            let mut two_j = (2.0 * params.eg - 1.0).round() as u32;
            while 0.5 * two_j as f64 <= cutoff + ALGEBRA_TOL {
                let j = 0.5 * two_j as f64;
                for kappa in kappa_of(j, params.eg)?.values() {
                    let nu = (kappa + 0.5).abs();
                    for two_m in (-(two_j as i32)..=two_j as i32).step_by(2) {
                        out.push(ChannelSpec {
                            label: AngularLabel::Total { two_j, two_m },
                            kappa: Some(kappa),
                            nu,
                        });
                    }
                }
                two_j += 2;
            }
        }
        Model::InverseSquare => {
            let mut l = 0u32;
            while l as f64 <= cutoff + ALGEBRA_TOL {
                let nu2 = raw_nu_squared(l, params.c);
                if nu2 <= 0.0 {
                    return Err(Error::Unsupported(format!(
                        "l = {l} at c = {} has nu^2 = {nu2} <= 0 (fall to the centre)",
                        params.c
                    )));
                }
                for m in -(l as i32)..=l as i32 {
                    out.push(ChannelSpec {
                        label: AngularLabel::Orbital { l, m },
                        kappa: None,
                        nu: nu2.sqrt(),
                    });
                }
                l += 1;
            }
        }
    }
    Ok(out)
}

/// Largest `j` (or `l`) that can carry a singular channel.
fn singular_reach(params: &ModelParams) -> f64 {
    match params.model {
        // nu < 1 <=> -3/2 < kappa < 1/2, so (j + 1/2)^2 < 9/4 + (eg)^2
        Model::Monopole => (2.25 + params.eg * params.eg).sqrt() - 0.5,
        Model::InverseSquare => l_crit(params.c),
    }
}

/// The channels with `nu < 1` (equivalently a `1/r^2` coefficient below 3/4).
///
/// Errors if `cutoff` is too small to contain them all, or if a singular
/// channel has integer `nu`.
pub fn singular_channels(params: &ModelParams, cutoff: f64) -> Result<Vec<ChannelSpec>> {
    let reach = singular_reach(params);
    let needed = match params.model {
        Model::Monopole => {
            let base = params.eg - 0.5;
            let steps = ((reach - base) - 1e-12).ceil().max(0.0) - 1.0;
            base + steps.max(0.0)
        }
        Model::InverseSquare => (reach - 1e-12).ceil() - 1.0,
    };
    if needed >= 0.0 && cutoff + ALGEBRA_TOL < needed {
        return Err(Error::Domain(format!(
            "cutoff {cutoff} is below {needed}, the largest label with a singular channel"
        )));
    }
    let all = enumerate_channels(params, cutoff.max(needed.max(0.0)))?;
    let singular: Vec<ChannelSpec> = all.into_iter().filter(ChannelSpec::is_singular).collect();
    for ch in &singular {
        if is_integer_order(ch.nu) {
            return Err(Error::IntegerOrder(ch.nu));
        }
    }
    Ok(singular)
}
