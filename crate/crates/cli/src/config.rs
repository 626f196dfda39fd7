//! Run configuration: command-line flags merged over an optional TOML file.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use w22_core::algebra::{make_charges, AlgebraKind, CentralCharges};
use w22_core::rational::parse_rational;
use w22_core::verma::HighestWeightSpec;
use w22_core::Rational;

pub const DEFAULT_LEVELS: u32 = 8;
pub const GUARD_LEVELS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraArg {
    Hv,
    W22,
}

impl From<AlgebraArg> for AlgebraKind {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::Hv => AlgebraKind::Hv,
            AlgebraArg::W22 => AlgebraKind::W22,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleArg {
    Verma,
    Irr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Flags shared by every subcommand. Everything is optional here so that
/// values can also come from `--config`.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunArgs {
    /// Structured TOML config; flags override its entries.
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub algebra: Option<AlgebraArg>,
    /// Highest weight h (exact rational "a/b").
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// I(0) eigenvalue h_I (HV).
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<String>,
    /// W(0) eigenvalue h_W (W(2,2)).
    #[arg(long, allow_hyphen_values = true)]
    pub hw: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub cl: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub cli: Option<String>,
    /// Highest level N of per-level tables.
    #[arg(long)]
    pub levels: Option<u32>,
    /// Single level for singular, cosingular and gram.
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long, value_enum)]
    pub module: Option<ModuleArg>,
    /// Chain step for decompose.
    #[arg(long)]
    pub p: Option<u32>,
    /// Suite for verify: all, algebra, pbw, verma, embedding, screening, characters.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Allow N above the guard level.
    #[arg(long)]
    #[serde(default)]
    pub force: bool,
    /// Include wall-clock timing in the report.
    #[arg(long)]
    #[serde(default)]
    pub timing: bool,
}

#[derive(Debug)]
pub enum ConfigError {
    Invalid(String),
    Io(String),
}

impl RunArgs {
    /// Fills unset flags from `file`.
    pub fn merged_with(self, file: RunArgs) -> RunArgs {
        RunArgs {
            config: self.config,
            algebra: self.algebra.or(file.algebra),
            h: self.h.or(file.h),
            hi: self.hi.or(file.hi),
            hw: self.hw.or(file.hw),
            cl: self.cl.or(file.cl),
            cli: self.cli.or(file.cli),
            levels: self.levels.or(file.levels),
            level: self.level.or(file.level),
            module: self.module.or(file.module),
            p: self.p.or(file.p),
            suite: self.suite.or(file.suite),
            seed: self.seed.or(file.seed),
            format: self.format.or(file.format),
            output: self.output.or(file.output),
            cache_dir: self.cache_dir.or(file.cache_dir),
            force: self.force || file.force,
            timing: self.timing || file.timing,
        }
    }

    pub fn resolve(self) -> Result<RunArgs, ConfigError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = read_config(&path)?;
        Ok(self.merged_with(file))
    }
}

fn read_config(path: &Path) -> Result<RunArgs, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| ConfigError::Invalid(format!("{}: {e}", path.display())))
}

/// Fully parsed configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub args: RunArgs,
    pub charges: CentralCharges,
    pub levels: u32,
    pub format: Format,
}

fn rational(name: &str, v: &str) -> Result<Rational, ConfigError> {
    parse_rational(v).map_err(|e| ConfigError::Invalid(format!("--{name}: {e}")))
}

impl RunConfig {
    pub fn from_args(args: RunArgs) -> Result<Self, ConfigError> {
        let cl = rational("cl", args.cl.as_deref().unwrap_or("0"))?;
        let cli = rational("cli", args.cli.as_deref().unwrap_or("1"))?;
        // weights are parsed eagerly so malformed input fails before any work
        for (name, v) in [("h", &args.h), ("hi", &args.hi), ("hw", &args.hw)] {
            if let Some(v) = v {
                rational(name, v)?;
            }
        }
        let charges = make_charges(cl, cli).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let levels = args.levels.unwrap_or(DEFAULT_LEVELS);
        if levels > GUARD_LEVELS && !args.force {
            return Err(ConfigError::Invalid(format!(
                "--levels {levels} exceeds {GUARD_LEVELS}; exact elimination grows quickly, pass --force to run anyway"
            )));
        }
        let format = args.format.unwrap_or(Format::Json);
        Ok(RunConfig {
            args,
            charges,
            levels,
            format,
        })
    }

    pub fn level(&self) -> Result<u32, ConfigError> {
        self.args
            .level
            .ok_or_else(|| ConfigError::Invalid("--level is required".into()))
    }

    fn required(&self, name: &str, v: &Option<String>) -> Result<Rational, ConfigError> {
        let v = v
            .as_deref()
            .ok_or_else(|| ConfigError::Invalid(format!("--{name} is required")))?;
        rational(name, v)
    }

    pub fn algebra(&self) -> AlgebraKind {
        self.args.algebra.unwrap_or(AlgebraArg::Hv).into()
    }

    pub fn spec(&self) -> Result<HighestWeightSpec, ConfigError> {
        let h = self.required("h", &self.args.h)?;
        match self.algebra() {
            AlgebraKind::Hv => Ok(HighestWeightSpec::hv(
                self.charges.clone(),
                h,
                self.required("hi", &self.args.hi)?,
            )),
            AlgebraKind::W22 => Ok(HighestWeightSpec::w22(
                self.charges.clone(),
                h,
                self.required("hw", &self.args.hw)?,
            )),
        }
    }

    pub fn h(&self) -> Result<Rational, ConfigError> {
        self.required("h", &self.args.h)
    }
}
