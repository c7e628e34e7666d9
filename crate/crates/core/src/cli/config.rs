//! JSON run configuration.
//!
//! Parsing resolves every default, so `emit` always writes the complete
//! canonical form and `emit(parse(emit(c))) == emit(c)` byte for byte.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::table::CanonicalFormatter;
use crate::channels::ModelParams;
use crate::error::{Error, Result};
use crate::extensions::{extension_channels, ExtensionMatrix, DEFAULT_UNITARITY_TOL};
use crate::linalg::{random_unitary, CMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Monopole,
    InverseSquare,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(rename = "type")]
    pub kind: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deficiency_scale: Option<f64>,
}

/// Exactly one of `matrix`, `diagonal_thetas`, `random_seed`; none at all
/// means the identity.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<String>,
    /// Rows of `[re, im]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal_thetas: Option<Vec<f64>>,
    /// Haar-random unitary drawn from this seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    #[serde(default = "default_r0")]
    pub r0: f64,
    /// Outer wall; `None` places it at `40 / lambda` of the shallowest bound
    /// state.
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r_outer: Option<f64>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_k")]
    pub k: usize,
}

fn default_r0() -> f64 {
    1e-3
}
fn default_n() -> usize {
    8000
}
fn default_k() -> usize {
    4
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            r0: default_r0(),
            r_outer: None,
            n: default_n(),
            k: default_k(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_unitarity")]
    pub unitarity: f64,
    #[serde(rename = "match", default = "default_match")]
    pub matching: f64,
    #[serde(default = "default_hermiticity")]
    pub hermiticity: f64,
}

fn default_unitarity() -> f64 {
    DEFAULT_UNITARITY_TOL
}
fn default_match() -> f64 {
    1e-10
}
fn default_hermiticity() -> f64 {
    crate::annulus::G_HERMITICITY_TOL
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity: default_unitarity(),
            matching: default_match(),
            hermiticity: default_hermiticity(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    #[serde(default)]
    pub extension: ExtensionConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputConfig,
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    RunConfig::parse(text)
}

impl RunConfig {
    /// Parses, fills defaults and validates the extension matrix.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.resolve()?;
        cfg.extension_matrix()?;
        Ok(cfg)
    }

    fn resolve(&mut self) -> Result<()> {
        let m = &mut self.model;
        match m.kind {
            ModelKind::Monopole => {
                if m.c.is_some() {
                    return Err(Error::Config("`c` belongs to the inverse_square model".into()));
                }
                m.eg.get_or_insert(0.5);
            }
            ModelKind::InverseSquare => {
                if m.eg.is_some() {
                    return Err(Error::Config("`eg` belongs to the monopole model".into()));
                }
                m.c.get_or_insert(0.0);
            }
        }
        let mu = *m.mu.get_or_insert(1.0);
        m.deficiency_scale.get_or_insert(mu);
        let params = self.params();
        params.validate().map_err(|e| Error::Config(e.to_string()))?;

        let ext = &mut self.extension;
        match ext.ordering.as_deref() {
            None | Some("canonical") => ext.ordering = Some("canonical".into()),
            Some(other) => {
                return Err(Error::Config(format!(
                    "channel ordering `{other}` is not supported, only `canonical`"
                )))
            }
        }
        let given = [ext.matrix.is_some(), ext.diagonal_thetas.is_some(), ext.random_seed.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if given > 1 {
            return Err(Error::Config(
                "extension takes one of `matrix`, `diagonal_thetas`, `random_seed`".into(),
            ));
        }
        if given == 0 {
            let n = extension_channels(&params).map_err(|e| Error::Config(e.to_string()))?.len();
            ext.diagonal_thetas = Some(vec![0.0; n]);
        }

        let o = &self.oracle;
        if !(o.r0 > 0.0) || o.r_outer.is_some_and(|r| !(r > o.r0)) {
            return Err(Error::Config("oracle needs 0 < r0 < R".into()));
        }
        if o.k == 0 {
            return Err(Error::Config("oracle.k must be positive".into()));
        }
        let t = &self.tolerances;
        if [t.unitarity, t.matching, t.hermiticity].iter().any(|&x| !(x > 0.0)) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> ModelParams {
        let m = &self.model;
        let base = match m.kind {
            ModelKind::Monopole => ModelParams::monopole(m.eg.unwrap_or(0.5)),
            ModelKind::InverseSquare => ModelParams::inverse_square(m.c.unwrap_or(0.0)),
        };
        let mu = m.mu.unwrap_or(1.0);
        base.with_mu(mu).with_deficiency_scale(m.deficiency_scale.unwrap_or(mu))
    }

    /// The configured `U`. A wrong channel count is a config error; a
    /// non-unitary matrix is reported as such.
    pub fn extension_matrix(&self) -> Result<ExtensionMatrix> {
        let params = self.params();
        let n = extension_channels(&params).map_err(|e| Error::Config(e.to_string()))?.len();
        let ext = &self.extension;
        let entries = if let Some(rows) = &ext.matrix {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Config(format!(
                    "extension matrix must be {n}x{n} for {n} singular channels"
                )));
            }
            CMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1]))
        } else if let Some(thetas) = &ext.diagonal_thetas {
            if thetas.len() != n {
                return Err(Error::Config(format!(
                    "{} diagonal_thetas given for {n} singular channels",
                    thetas.len()
                )));
            }
            CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::from_polar(1.0, thetas[i])
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        } else if let Some(seed) = ext.random_seed {
            random_unitary(n, &mut ChaCha8Rng::seed_from_u64(seed))
        } else {
            CMatrix::identity(n, n)
        };
        ExtensionMatrix::new(params, entries, self.tolerances.unitarity)
    }

    /// Canonical JSON: fixed key order, every default written out, floats
    /// at 17 significant digits.
    pub fn emit(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
        self.serialize(&mut ser).expect("config serialises");
        let mut s = String::from_utf8(out).expect("utf-8");
        s.push('\n');
        s
    }
}
