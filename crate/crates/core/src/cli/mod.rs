//! Batch front end behind the `selfadjoint` binary.
//!
//! Energies are reported in units of `mu`, lengths (inputs and outputs) in
//! units of `1/mu`.

mod config;
mod table;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{
    parse_config, ExtensionConfig, ModelConfig, ModelKind, OracleConfig, OutputConfig, OutputFormat, RunConfig,
    Tolerances,
};
pub use table::{format_float, CanonicalFormatter, Cell, Table};

use crate::annulus::{
    assemble_radial_hamiltonian, g_from_u, oracle_spectrum, r0_limit_scan, AnnulusGrid, InnerBoundary,
};
use crate::channels::{enumerate_channels, ModelParams};
use crate::dirac::{dirac_normalizable, lower_exponent};
use crate::error::{Error, Result};
use crate::extensions::{bound_states, is_dirac_consistent, mixing_matrix, ExtensionMatrix};
use crate::specfun::SolutionKind;

#[derive(Debug, Parser)]
#[command(name = "selfadjoint", version, about = "Self-adjoint extensions of singular radial Hamiltonians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List angular channels and flag the singular ones.
    Channels {
        #[arg(long, value_enum, default_value = "monopole")]
        model: ModelArg,
        #[arg(long, default_value_t = 0.5)]
        eg: f64,
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        /// Largest j (monopole) or l (inverse square).
        #[arg(long, default_value_t = 1.0)]
        jmax: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
    },
    /// Bound states of the decoupled channels of U.
    BoundStates(ConfigArgs),
    /// Mixing amplitudes A_N, A_S of the scattering eigenstates.
    Smatrix {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Energy in units of mu.
        #[arg(long = "E", allow_negative_numbers = true)]
        energy: f64,
    },
    /// Boundary-condition matrix g at r0.
    Gmap {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long)]
        r0: f64,
    },
    /// Finite-difference annulus spectrum against the analytic bound states.
    Oracle(ConfigArgs),
    /// Dirac lower-component analysis and the consistency verdict for U.
    DiracCheck(ConfigArgs),
    /// g(r0) along a list of radii.
    R0scan {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long = "r0-list", value_delimiter = ',', required = true)]
        r0_list: Vec<f64>,
    },
    /// Print the canonical form of a config.
    Config(ConfigArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Replace the configured U by a Haar-random unitary from this seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModelArg {
    Monopole,
    InverseSquare,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn load(args: &ConfigArgs) -> Result<(RunConfig, ExtensionMatrix)> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Config(format!("{}: {e}", args.config.display())))?;
    let mut cfg = RunConfig::parse(&text)?;
    if let Some(seed) = args.seed {
        cfg.extension = ExtensionConfig {
            ordering: cfg.extension.ordering.take(),
            random_seed: Some(seed),
            ..Default::default()
        };
    }
    let u = cfg.extension_matrix()?;
    Ok((cfg, u))
}

fn emit(text: &str, path: Option<&str>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(cmd: &Command) -> Result<()> {
    let (table, output) = match cmd {
        Command::Channels { model, eg, c, jmax, format } => {
            let params = match model {
                ModelArg::Monopole => ModelParams::monopole(*eg),
                ModelArg::InverseSquare => ModelParams::inverse_square(*c),
            };
            (
                channels_table(&params, *jmax)?,
                OutputConfig {
                    format: *format,
                    path: None,
                },
            )
        }
        Command::Config(args) => {
            let (cfg, _) = load(args)?;
            return emit(&cfg.emit(), None);
        }
        Command::BoundStates(args) => {
            let (cfg, u) = load(args)?;
            (bound_states_table(&u), cfg.output)
        }
        Command::Smatrix { cfg: args, energy } => {
            let (cfg, u) = load(args)?;
            (smatrix_table(&u, *energy)?, cfg.output)
        }
        Command::Gmap { cfg: args, r0 } => {
            let (cfg, u) = load(args)?;
            (gmap_table(&u, *r0, &cfg.tolerances)?, cfg.output)
        }
        Command::Oracle(args) => {
            let (cfg, u) = load(args)?;
            (oracle_table(&u, &cfg.oracle)?, cfg.output)
        }
        Command::DiracCheck(args) => {
            let (cfg, u) = load(args)?;
            (dirac_table(&u, cfg.tolerances.matching)?, cfg.output)
        }
        Command::R0scan { cfg: args, r0_list } => {
            let (cfg, u) = load(args)?;
            (r0scan_table(&u, r0_list)?, cfg.output)
        }
    };
    emit(&table.render(output.format), output.path.as_deref())
}

pub fn channels_table(params: &ModelParams, cutoff: f64) -> Result<Table> {
    let mut t = Table::new(&[("j", "1"), ("m", "1"), ("kappa", "1"), ("nu", "1"), ("singular", "bool")]);
    for ch in enumerate_channels(params, cutoff)? {
        t.push(vec![
            ch.label.j().into(),
            ch.label.m().into(),
            ch.kappa.map_or(Cell::Empty, Cell::Float),
            ch.nu.into(),
            ch.is_singular().into(),
        ]);
    }
    Ok(t)
}

pub fn bound_states_table(u: &ExtensionMatrix) -> Table {
    let mu = u.params().mu;
    let mut t = Table::new(&[
        ("channel", "index"),
        ("theta", "rad"),
        ("E_over_mu", "mu"),
        ("lambda_over_mu", "mu"),
    ]);
    for b in bound_states(u) {
        t.push(vec![
            b.index.into(),
            b.theta.into(),
            (b.energy / mu).into(),
            (b.lambda / mu).into(),
        ]);
    }
    t
}

pub fn smatrix_table(u: &ExtensionMatrix, energy_over_mu: f64) -> Result<Table> {
    let mu = u.params().mu;
    let m = mixing_matrix(u, energy_over_mu * mu)?;
    let mut t = Table::new(&[
        ("source", "index"),
        ("channel", "index"),
        ("AN_re", "1"),
        ("AN_im", "1"),
        ("AS_re", "1"),
        ("AS_im", "1"),
    ]);
    for source in 0..u.dim() {
        for ch in 0..u.dim() {
            let (an, as_) = (m.a_n[(ch, source)], m.a_s[(ch, source)]);
            t.push(vec![
                source.into(),
                ch.into(),
                an.re.into(),
                an.im.into(),
                as_.re.into(),
                as_.im.into(),
            ]);
        }
    }
    t.note("condition", m.condition);
    Ok(t)
}

pub fn gmap_table(u: &ExtensionMatrix, r0_scaled: f64, tol: &Tolerances) -> Result<Table> {
    let mu = u.params().mu;
    let g = g_from_u(u, r0_scaled / mu)?;
    if g.hermiticity_defect > tol.hermiticity {
        return Err(Error::NotHermitian {
            defect: g.hermiticity_defect,
            tol: tol.hermiticity,
        });
    }
    let mut t = Table::new(&[("row", "index"), ("col", "index"), ("g_re", "mu"), ("g_im", "mu")]);
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let v = g.entries[(i, j)] / mu;
            t.push(vec![i.into(), j.into(), v.re.into(), v.im.into()]);
        }
    }
    t.note("hermiticity_defect", g.hermiticity_defect / mu);
    Ok(t)
}

/// Places the wall at `40 / lambda` of the shallowest analytic bound state
/// (or of the deficiency momentum when there is none) unless `R` is given.
pub fn oracle_table(u: &ExtensionMatrix, oracle: &OracleConfig) -> Result<Table> {
    let p = *u.params();
    let mu = p.mu;
    let analytic: Vec<f64> = bound_states(u).iter().map(|b| b.energy).collect();
    let q = (2.0 * mu * p.deficiency_scale).sqrt();
    let lambdas: Vec<f64> = analytic.iter().map(|e| (-2.0 * mu * e).sqrt()).collect();
    let (lambda_min, lambda_max) = if lambdas.is_empty() {
        (q, q)
    } else {
        (
            lambdas.iter().copied().fold(f64::INFINITY, f64::min),
            lambdas.iter().copied().fold(0.0, f64::max),
        )
    };

    let r0 = oracle.r0 / mu;
    let r_outer = oracle.r_outer.map_or(40.0 / lambda_min, |r| r / mu);
    let grid = AnnulusGrid::new(r0, r_outer, oracle.n)?;
    let resolution = grid.check_resolution(lambda_max)?;
    let g = g_from_u(u, r0)?;
    let h = assemble_radial_hamiltonian(&p, &grid, InnerBoundary::Robin(&g), u.channels())?;
    let levels = oracle_spectrum(&h, oracle.k)?;

    let mut t = Table::new(&[
        ("index", "index"),
        ("E_numeric", "mu"),
        ("E_analytic", "mu"),
        ("rel_err", "1"),
    ]);
    // each level is paired with the nearest analytic energy not yet taken
    let mut free = analytic.clone();
    for (i, lev) in levels.iter().enumerate() {
        let nearest = (0..free.len()).min_by(|&a, &b| {
            (free[a] - lev.energy).abs().total_cmp(&(free[b] - lev.energy).abs())
        });
        let (an, rel) = match nearest.map(|j| free.remove(j)) {
            Some(e) => (Cell::Float(e / mu), Cell::Float((lev.energy - e) / e.abs())),
            None => (Cell::Empty, Cell::Empty),
        };
        t.push(vec![i.into(), (lev.energy / mu).into(), an, rel]);
    }
    t.note("R", r_outer * mu);
    t.note("h", resolution.h * mu);
    t.note("resolves_r0", resolution.resolves_inner_scale);
    t.note(
        "max_residual",
        levels.iter().map(|l| l.residual).fold(0.0, f64::max),
    );
    Ok(t)
}

pub fn dirac_table(u: &ExtensionMatrix, tol: f64) -> Result<Table> {
    let verdict = is_dirac_consistent(u, tol)?;
    let mut t = Table::new(&[
        ("channel", "index"),
        ("kind", "-"),
        ("cancel_coeff", "1"),
        ("exponent", "1"),
        ("normalizable", "bool"),
    ]);
    for (i, ch) in u.channels().iter().enumerate() {
        let kappa = ch.kappa.expect("monopole channels carry kappa");
        for (name, kind) in [("N", SolutionKind::Nonsingular), ("S", SolutionKind::Singular)] {
            let lo = lower_exponent(kappa, kind)?;
            t.push(vec![
                i.into(),
                name.into(),
                lo.coefficient.into(),
                lo.exponent.into(),
                dirac_normalizable(kappa, kind)?.into(),
            ]);
        }
    }
    t.note("is_dirac_consistent", verdict);
    Ok(t)
}

pub fn r0scan_table(u: &ExtensionMatrix, r0s_scaled: &[f64]) -> Result<Table> {
    let mu = u.params().mu;
    let r0s: Vec<f64> = r0s_scaled.iter().map(|r| r / mu).collect();
    let mut t = Table::new(&[("r0", "1/mu"), ("gmax", "mu"), ("offdiag_norm", "mu")]);
    for row in r0_limit_scan(u, &r0s)? {
        t.push(vec![
            (row.r0 * mu).into(),
            (row.g_max / mu).into(),
            (row.offdiag_norm / mu).into(),
        ]);
    }
    Ok(t)
}
