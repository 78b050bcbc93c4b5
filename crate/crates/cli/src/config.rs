//! Command-line flags, optional JSON config file, and the merged
//! [`ExperimentConfig`].

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Parser;
use qwalk_core::{DisorderSpec, InitialStateParams, ParameterRange, Preset};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_STEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Figure-reproduction recipes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Recipe {
    /// Full-range disorder against the classical baseline.
    Fig1,
    /// The four regimes side by side.
    Fig2,
    /// Localized walk against Hadamard at 100, 200 and 400 steps.
    Fig3,
    /// Localization length against steps for several reference coins.
    Fig4,
}

impl Recipe {
    pub fn name(self) -> &'static str {
        match self {
            Recipe::Fig1 => "fig1",
            Recipe::Fig2 => "fig2",
            Recipe::Fig3 => "fig3",
            Recipe::Fig4 => "fig4",
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fig1" => Ok(Recipe::Fig1),
            "fig2" => Ok(Recipe::Fig2),
            "fig3" => Ok(Recipe::Fig3),
            "fig4" => Ok(Recipe::Fig4),
            other => Err(format!(
                "unknown recipe `{other}` (expected fig1, fig2, fig3 or fig4)"
            )),
        }
    }
}

/// Parses an angle in radians. Besides plain numbers, accepts multiples and
/// fractions of pi such as `pi`, `-pi/2`, `3pi/4`, `3*pi/4`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("angle must be finite, got `{s}`"))
        };
    }
    let bad = || format!("cannot parse angle `{s}` (use radians, e.g. 0.785 or pi/4)");
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let pos = body.find("pi").ok_or_else(bad)?;
    let coeff = match body[..pos].trim_end_matches('*') {
        "" => 1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match &body[pos + 2..] {
        "" => 1.0,
        rest => rest
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(bad)?,
    };
    let v = coeff * std::f64::consts::PI / divisor;
    Ok(if neg { -v } else { v })
}

/// Parses `LO:HI` into a range. Ordering is checked later so the error can
/// name the field.
pub fn parse_range(s: &str) -> Result<ParameterRange, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    Ok(ParameterRange::new(parse_angle(lo)?, parse_angle(hi)?))
}

fn parse_count(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("expected a non-negative integer, got `{s}`"))
}

fn parse_seed(s: &str) -> Result<u64, String> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| format!("expected an unsigned 64-bit integer, got `{s}`"))
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse::<Preset>().map_err(|e| e.to_string())
}

/// Disordered quantum walk experiment runner.
#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about)]
pub struct Args {
    /// Number of walk steps [default: 100].
    #[arg(long, allow_hyphen_values = true, value_parser = parse_count)]
    pub steps: Option<usize>,

    /// hadamard-ordered, full-range, theta-low or theta-high [default: hadamard-ordered].
    #[arg(long, value_parser = parse_preset)]
    pub preset: Option<Preset>,

    /// Override the xi range, LO:HI in radians (pi/4 style accepted).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, value_name = "LO:HI")]
    pub xi_range: Option<ParameterRange>,

    /// Override the theta range, LO:HI.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, value_name = "LO:HI")]
    pub theta_range: Option<ParameterRange>,

    /// Override the zeta range, LO:HI.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, value_name = "LO:HI")]
    pub zeta_range: Option<ParameterRange>,

    /// Initial coin angle delta [default: pi/2].
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    pub delta: Option<f64>,

    /// Initial coin phase phi [default: pi/2].
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    pub phi: Option<f64>,

    /// Number of disorder realizations [default: 1].
    #[arg(long, allow_hyphen_values = true, value_parser = parse_count)]
    pub realizations: Option<usize>,

    /// Master seed [default: 0].
    #[arg(long, allow_hyphen_values = true, value_parser = parse_seed)]
    pub seed: Option<u64>,

    /// Figure recipe: fig1, fig2, fig3 or fig4.
    #[arg(long)]
    pub recipe: Option<Recipe>,

    /// Theta of the ordered unbiased reference walk used for the localization length.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    pub reference_theta: Option<f64>,

    /// Output data file, or output directory when a recipe is given.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// csv or json [default: csv].
    #[arg(long)]
    pub format: Option<Format>,

    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Values accepted in a `--config` JSON file. Every field is optional.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub steps: Option<usize>,
    pub preset: Option<Preset>,
    pub xi_range: Option<[f64; 2]>,
    pub theta_range: Option<[f64; 2]>,
    pub zeta_range: Option<[f64; 2]>,
    pub delta: Option<f64>,
    pub phi: Option<f64>,
    pub realizations: Option<usize>,
    pub seed: Option<u64>,
    pub recipe: Option<Recipe>,
    pub reference_theta: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::usage("config", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// `None` means the default for the chosen mode (100, or the recipe's own count).
    pub steps: Option<usize>,
    pub initial: InitialStateParams,
    pub preset: Preset,
    pub spec: DisorderSpec,
    pub realizations: usize,
    pub master_seed: u64,
    pub reference_theta: Option<f64>,
    pub output_path: PathBuf,
    pub format: Format,
    pub recipe: Option<Recipe>,
}

impl ExperimentConfig {
    pub fn steps_or(&self, default: usize) -> usize {
        self.steps.unwrap_or(default)
    }

    /// Checks every field, naming the first offending one.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.steps == Some(0) {
            return Err(CliError::usage("steps", "must be at least 1"));
        }
        if self.realizations == 0 {
            return Err(CliError::usage("realizations", "must be at least 1"));
        }
        for (field, v) in [("delta", self.initial.delta), ("phi", self.initial.phi)] {
            if !v.is_finite() {
                return Err(CliError::usage(field, "must be finite"));
            }
        }
        if let Some(theta) = self.reference_theta {
            if !theta.is_finite() {
                return Err(CliError::usage("reference_theta", "must be finite"));
            }
        }
        self.spec.validate().map_err(CliError::from_walk)?;
        Ok(())
    }
}

/// Parses flags (first item is the program name) and an optional config file.
pub fn parse_config<I, T>(args: I) -> Result<ExperimentConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(args).map_err(CliError::Clap)?;
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    merge(args, file)
}

fn merge(args: Args, file: FileConfig) -> Result<ExperimentConfig, CliError> {
    let range = |r: Option<[f64; 2]>| r.map(|[lo, hi]| ParameterRange::new(lo, hi));
    let preset = args
        .preset
        .or(file.preset)
        .unwrap_or(Preset::HadamardOrdered);
    let base = preset.spec();
    let xi = args.xi_range.or(range(file.xi_range));
    let theta = args.theta_range.or(range(file.theta_range));
    let zeta = args.zeta_range.or(range(file.zeta_range));
    let spec = if xi.is_none() && theta.is_none() && zeta.is_none() {
        base
    } else {
        DisorderSpec::random(
            xi.unwrap_or(base.xi_range),
            theta.unwrap_or(base.theta_range),
            zeta.unwrap_or(base.zeta_range),
        )
    };
    let defaults = InitialStateParams::symmetric();
    let output_path = args
        .out
        .or(file.out)
        .ok_or_else(|| CliError::usage("out", "an output path is required (--out)"))?;
    let config = ExperimentConfig {
        steps: args.steps.or(file.steps),
        initial: InitialStateParams::new(
            args.delta.or(file.delta).unwrap_or(defaults.delta),
            args.phi.or(file.phi).unwrap_or(defaults.phi),
        ),
        preset,
        spec,
        realizations: args.realizations.or(file.realizations).unwrap_or(1),
        master_seed: args.seed.or(file.seed).unwrap_or(0),
        reference_theta: args.reference_theta.or(file.reference_theta),
        output_path,
        format: args.format.or(file.format).unwrap_or(Format::Csv),
        recipe: args.recipe.or(file.recipe),
    };
    config.validate()?;
    Ok(config)
}
