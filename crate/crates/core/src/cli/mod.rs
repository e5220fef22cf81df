//! Command-line front end: `bands`, `resonances`, `transmission`,
//! `fixed-points` and `converge`.

mod config;
mod output;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use crate::error::Error;
use crate::mobius::{fixed_points, iterate_limit, r1};
use crate::monodromy::{find_bands, Band};
use crate::resolvent::{convergence_study, find_resonances, resonances_k1, SearchWindow};
use crate::scattering::{perfect_transmission_frequencies, reflection_k, transmission_sq};

pub use config::{CommonArgs, Format, RunConfig, WindowSpec};
pub use output::{fmt_g, Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

const FIXED_POINT_ITERS: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "slabres",
    version,
    about = "Scattering resonances of locally periodic layered slabs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral bands of the infinite periodic medium in [0, lambda-max].
    Bands(CommonArgs),
    /// Resonances of the k-cell slab in the search window.
    Resonances(CommonArgs),
    /// |t_k|^2 and |r_k|^2 on a real frequency grid.
    Transmission(CommonArgs),
    /// Fixed points of the cell-adding map on a real frequency grid.
    FixedPoints(CommonArgs),
    /// Resonance count and depth under one band for several k.
    Converge(ConvergeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated, non-decreasing list of cell counts.
    #[arg(long, value_delimiter = ',')]
    pub k_list: Option<Vec<usize>>,
    /// One-based band index.
    #[arg(long)]
    pub band: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Numeric(e) => error_exit_code(e),
            CliError::Io(_) => EXIT_INVALID,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(s) => write!(f, "{s}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

/// Exit status for a library error.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidCell(_)
        | Error::InvalidArgument(_)
        | Error::InvalidRange(_)
        | Error::DomainError(_)
        | Error::BandMismatch { .. } => EXIT_INVALID,
        Error::NotCommensurate { .. } | Error::HomogeneousCell | Error::DegenerateEdge { .. } => EXIT_PRECONDITION,
        Error::EdgeDegeneracy { .. }
        | Error::PoleProximity { .. }
        | Error::RecursionPole { .. }
        | Error::Overflow { .. }
        | Error::NoConvergence(_)
        | Error::ContourThroughZero { .. } => EXIT_NUMERICAL,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: &Command) -> Result<(), CliError> {
    let (name, config) = match command {
        Command::Bands(a) => ("bands", RunConfig::resolve(a, None, None)),
        Command::Resonances(a) => ("resonances", RunConfig::resolve(a, None, None)),
        Command::Transmission(a) => ("transmission", RunConfig::resolve(a, None, None)),
        Command::FixedPoints(a) => ("fixed-points", RunConfig::resolve(a, None, None)),
        Command::Converge(a) => ("converge", RunConfig::resolve(&a.common, a.k_list.clone(), a.band)),
    };
    let config = config.map_err(CliError::Invalid)?;
    let table = build_table(name, &config)?;
    output::emit(&table, name, &config).map_err(CliError::Io)
}

/// Computes the output table of a command without writing it.
pub fn build_table(command: &str, config: &RunConfig) -> Result<Table, CliError> {
    match command {
        "bands" => bands_table(config),
        "resonances" => resonances_table(config),
        "transmission" => transmission_table(config),
        "fixed-points" => fixed_points_table(config),
        "converge" => converge_table(config),
        other => Err(CliError::Invalid(format!("unknown command {other}"))),
    }
}

fn band_row(b: &Band) -> Vec<Cell> {
    vec![
        b.index.into(),
        b.lo.into(),
        b.hi.into(),
        b.lo_type.as_str().into(),
        b.hi_type.as_str().into(),
    ]
}

fn bands_only(bands: &[Band]) -> Table {
    let mut t = Table::new(vec!["index", "lo", "hi", "lo_type", "hi_type"]);
    for b in bands {
        t.push(band_row(b));
    }
    t
}

fn bands_table(config: &RunConfig) -> Result<Table, CliError> {
    Ok(bands_only(&find_bands(&config.cell, config.lambda_max)?))
}

fn grid(config: &RunConfig) -> impl Iterator<Item = f64> + '_ {
    (0..=config.grid_re).map(move |i| config.lambda_max * i as f64 / config.grid_re as f64)
}

fn resonances_table(config: &RunConfig) -> Result<Table, CliError> {
    let cell = &config.cell;
    let w = config.window;
    let bands = find_bands(cell, w.re_max)?;
    let mut table = Table::new(vec!["re", "im", "residual", "band_index"]);

    let found = if config.k == 1 {
        resonances_k1(cell, w.re_min, w.re_max)?
            .into_iter()
            .filter(|r| r.lambda.im >= w.im_min)
            .collect()
    } else {
        let search = find_resonances(cell, config.k, SearchWindow::new(w.re_min, w.re_max, w.im_min)?)?;
        table.notes.extend(search.diagnostics.note.clone());
        search.resonances
    };
    for r in &found {
        table.push(vec![
            r.lambda.re.into(),
            r.lambda.im.into(),
            r.residual.into(),
            r.band_index.into(),
        ]);
    }

    let mut markers = Table::new(vec!["kind", "lambda"]);
    for l in cell.transparency_frequencies(w.re_max) {
        if l >= w.re_min {
            markers.push(vec!["transparency".into(), l.into()]);
        }
    }
    if config.k >= 2 && !cell.is_homogeneous() {
        for b in &bands {
            for l in perfect_transmission_frequencies(cell, b, config.k)? {
                if (w.re_min..=w.re_max).contains(&l) {
                    markers.push(vec!["perfect_transmission".into(), l.into()]);
                }
            }
        }
    }
    let band_table = bands_only(&bands);
    table.meta.insert(
        "window".into(),
        json!({"re_min": w.re_min, "re_max": w.re_max, "im_min": w.im_min}),
    );
    table.meta.insert("bands".into(), band_table.rows_json());
    table.meta.insert("markers".into(), markers.rows_json());
    table.sidecars.push(("bands", band_table));
    table.sidecars.push(("markers", markers));
    Ok(table)
}

fn transmission_table(config: &RunConfig) -> Result<Table, CliError> {
    let mut t = Table::new(vec!["lambda", "t_sq", "r_abs_sq", "unitarity_defect"]);
    for l in grid(config) {
        let r_sq = reflection_k(&config.cell, Complex64::new(l, 0.0), config.k)?.norm_sqr();
        let t_sq = transmission_sq(&config.cell, l, config.k)?;
        t.push(vec![
            l.into(),
            t_sq.into(),
            r_sq.into(),
            (t_sq + r_sq - 1.0).abs().into(),
        ]);
    }
    Ok(t)
}

fn fixed_points_table(config: &RunConfig) -> Result<Table, CliError> {
    let cell = &config.cell;
    let mut t = Table::new(vec![
        "lambda",
        "kind",
        "z1_re",
        "z1_im",
        "z2_re",
        "z2_im",
        "limit_converged",
        "limit_re",
        "limit_im",
    ]);
    let mut skipped = Vec::new();
    for l in grid(config) {
        let a = match fixed_points(cell, l) {
            Ok(a) => a,
            Err(Error::DegenerateEdge { .. }) => {
                skipped.push(l);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let out = iterate_limit(cell, l, r1(cell, l)?, FIXED_POINT_ITERS)?;
        let (lre, lim) = if out.converged {
            (Some(out.value.re), Some(out.value.im))
        } else {
            (None, None)
        };
        t.push(vec![
            l.into(),
            a.kind.as_str().into(),
            a.z1.re.into(),
            a.z1.im.into(),
            a.z2.re.into(),
            a.z2.im.into(),
            out.converged.into(),
            lre.into(),
            lim.into(),
        ]);
    }
    if !skipped.is_empty() {
        let list: Vec<String> = skipped.iter().map(|l| fmt_g(*l, 12)).collect();
        t.notes.push(format!(
            "map is the identity at lambda = {}; rows skipped",
            list.join(", ")
        ));
    }
    Ok(t)
}

fn converge_table(config: &RunConfig) -> Result<Table, CliError> {
    let bands = find_bands(&config.cell, config.lambda_max)?;
    let band = bands.iter().find(|b| b.index == config.band).ok_or_else(|| {
        CliError::Invalid(format!(
            "band {} not found below lambda-max = {}",
            config.band, config.lambda_max
        ))
    })?;
    let rows = convergence_study(&config.cell, band, &config.k_list, Some(config.window.im_min))?;
    let mut t = Table::new(vec!["k", "count", "max_im", "min_im"]);
    for r in rows {
        t.push(vec![r.k.into(), r.count.into(), r.max_im.into(), r.min_im.into()]);
    }
    t.meta.insert(
        "band".into(),
        bands_only(std::slice::from_ref(band)).rows_json()[0].clone(),
    );
    t.meta.insert("k_list".into(), json!(config.k_list));
    Ok(t)
}
