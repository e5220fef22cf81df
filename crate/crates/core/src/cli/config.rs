use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::medium::UnitCell;
use crate::resolvent::default_im_min;

pub const DEFAULT_LAMBDA_MAX: f64 = 4.0;
pub const DEFAULT_GRID_RE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every subcommand. Each overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x2: Option<f64>,
    /// Number of cells.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub re_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub re_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub im_min: Option<f64>,
    /// Number of real grid points for sweeps.
    #[arg(long)]
    pub grid_re: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file with the same fields as the resolved run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCell {
    b1: Option<f64>,
    b2: Option<f64>,
    x2: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileWindow {
    re_min: Option<f64>,
    re_max: Option<f64>,
    im_min: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    cell: Option<FileCell>,
    k: Option<usize>,
    lambda_max: Option<f64>,
    window: Option<FileWindow>,
    grid_re: Option<usize>,
    format: Option<Format>,
    output_path: Option<PathBuf>,
    k_list: Option<Vec<usize>>,
    band: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cell: UnitCell,
    pub k: usize,
    pub lambda_max: f64,
    pub window: WindowSpec,
    pub grid_re: usize,
    pub format: Format,
    pub output_path: Option<PathBuf>,
    pub k_list: Vec<usize>,
    pub band: usize,
}

impl RunConfig {
    /// Merges flags over the optional config file and validates the result.
    pub fn resolve(args: &CommonArgs, k_list: Option<Vec<usize>>, band: Option<usize>) -> Result<Self, String> {
        let file = match &args.config {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
                serde_json::from_str::<FileConfig>(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?
            }
            None => FileConfig::default(),
        };
        let fc = file.cell.unwrap_or_default();
        let need = |flag: Option<f64>, from_file: Option<f64>, name: &str| {
            flag.or(from_file).ok_or_else(|| format!("missing --{name}"))
        };
        let cell = UnitCell::new(
            need(args.b1, fc.b1, "b1")?,
            need(args.b2, fc.b2, "b2")?,
            need(args.x2, fc.x2, "x2")?,
        )
        .map_err(|e| e.to_string())?;

        let k = args.k.or(file.k).unwrap_or(1);
        if k == 0 {
            return Err("k must be >= 1".into());
        }
        let lambda_max = args.lambda_max.or(file.lambda_max).unwrap_or(DEFAULT_LAMBDA_MAX);
        if !(lambda_max.is_finite() && lambda_max > 0.0) {
            return Err(format!("lambda-max must be positive, got {lambda_max}"));
        }
        let fw = file.window.unwrap_or_default();
        let window = WindowSpec {
            re_min: args.re_min.or(fw.re_min).unwrap_or(0.0),
            re_max: args.re_max.or(fw.re_max).unwrap_or(lambda_max),
            im_min: args.im_min.or(fw.im_min).unwrap_or_else(|| default_im_min(&cell)),
        };
        if !(window.re_min >= 0.0 && window.re_max > window.re_min && window.re_max.is_finite()) {
            return Err(format!(
                "window needs 0 <= re-min < re-max, got [{}, {}]",
                window.re_min, window.re_max
            ));
        }
        if !(window.im_min < 0.0 && window.im_min.is_finite()) {
            return Err(format!("im-min must be negative, got {}", window.im_min));
        }
        let grid_re = args.grid_re.or(file.grid_re).unwrap_or(DEFAULT_GRID_RE);
        if grid_re < 2 {
            return Err(format!("grid-re must be >= 2, got {grid_re}"));
        }
        let k_list = k_list.or(file.k_list).unwrap_or_else(|| vec![k]);
        if k_list.is_empty() || k_list.contains(&0) || k_list.windows(2).any(|w| w[1] < w[0]) {
            return Err(format!(
                "k-list must be non-decreasing positive integers, got {k_list:?}"
            ));
        }
        let band = band.or(file.band).unwrap_or(1);
        if band == 0 {
            return Err("band index starts at 1".into());
        }
        Ok(Self {
            cell,
            k,
            lambda_max,
            window,
            grid_re,
            format: args.format.or(file.format).unwrap_or_default(),
            output_path: args.output.clone().or(file.output_path),
            k_list,
            band,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn base() -> CommonArgs {
        CommonArgs {
            b1: Some(1.0),
            b2: Some(4.0),
            x2: Some(0.2),
            ..Default::default()
        }
    }

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(&base(), None, None).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.window.re_max, DEFAULT_LAMBDA_MAX);
        assert_eq!(c.window.im_min, -1.25);
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.k_list, vec![1]);
    }

    #[test]
    fn flags_override_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(
            f,
            r#"{{"cell": {{"b1": 1, "b2": 3.8, "x2": 0.2}}, "k": 4, "grid_re": 50, "format": "json"}}"#
        )
        .unwrap();
        let args = CommonArgs {
            b2: Some(4.0),
            k: Some(2),
            config: Some(f.path().into()),
            ..Default::default()
        };
        let c = RunConfig::resolve(&args, None, None).unwrap();
        assert_eq!(c.cell.b2(), 4.0);
        assert_eq!(c.cell.b1(), 1.0);
        assert_eq!(c.k, 2);
        assert_eq!(c.grid_re, 50);
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn rejects_invalid() {
        let mut a = base();
        a.lambda_max = Some(-1.0);
        assert!(RunConfig::resolve(&a, None, None).is_err());
        let mut a = base();
        a.grid_re = Some(1);
        assert!(RunConfig::resolve(&a, None, None).is_err());
        let mut a = base();
        a.b1 = None;
        assert!(RunConfig::resolve(&a, None, None).unwrap_err().contains("--b1"));
        assert!(RunConfig::resolve(&base(), Some(vec![8, 4]), None).is_err());
    }
}
