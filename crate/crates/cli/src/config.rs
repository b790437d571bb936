use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use prolongkit::linalg::Mode;
use prolongkit::rigidity::Check;
use prolongkit::ModelSpec;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 100;
/// Environment variable overriding the default arithmetic mode.
pub const MODE_ENV: &str = "PROLONGKIT_MODE";

#[derive(Debug, Parser)]
#[command(name = "prolongkit", version, about = "Second fundamental forms, prolongations and rigidity obstructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the model catalogue with tangent and |II| dimensions.
    Models(Common),
    /// Run prolongation and order 3-5 obstruction checks on a model.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated subset of prolongation,h3,h4,h5.
        #[arg(long, value_delimiter = ',', default_value = "prolongation,h3,h4,h5")]
        checks: Vec<Check>,
        #[command(flatten)]
        common: Common,
    },
    /// Refined third fundamental form bound at a certified generic vector.
    Prop6 {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Degenerate a system along seeded curves and compare fingerprints.
    Stability {
        #[command(flatten)]
        model: OptionalModelArgs,
        /// Quadric system document (as written by `dump --what ii`) to use
        /// instead of a model.
        #[arg(long, conflicts_with = "model")]
        system: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Write a model's |II|, chart or fingerprint as JSON.
    Dump {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum)]
        what: DumpWhat,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Segre,
    Grass,
    Veronese,
    Spinor5,
    Cayley,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DumpWhat {
    Ii,
    Param,
    Fingerprint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Probabilistic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Probabilistic => Mode::Probabilistic,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OptionalModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Arithmetic mode; overrides PROLONGKIT_MODE.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Include wall-clock runtimes (reports are then not reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Models,
    Verify,
    Prop6,
    Stability,
    Dump,
}

/// A validated command line; echoed in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandName,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub model: Option<ModelSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub system: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub what: Option<DumpWhat>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<usize>,
    pub seed: u64,
    /// Explicit mode from the flag or the environment; `None` keeps the
    /// per-model default.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<Mode>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub timings: bool,
}

/// Rejected configuration; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn model_spec(kind: ModelKind, n: Option<usize>, m: Option<usize>) -> Result<ModelSpec, UsageError> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| UsageError(format!("--model {kind:?} requires --{flag}").to_lowercase()));
    let reject = |v: Option<usize>, flag: &str| match v {
        Some(_) => Err(UsageError(format!("--{flag} is not a parameter of this model"))),
        None => Ok(()),
    };
    let spec = match kind {
        ModelKind::Segre => ModelSpec::Segre { n: need(n, "n")?, m: need(m, "m")? },
        ModelKind::Grass => {
            reject(n, "n")?;
            ModelSpec::Grass { m: need(m, "m")? }
        }
        ModelKind::Veronese => {
            reject(m, "m")?;
            ModelSpec::Veronese { n: need(n, "n")? }
        }
        ModelKind::Spinor5 | ModelKind::Cayley => {
            reject(n, "n")?;
            reject(m, "m")?;
            if kind == ModelKind::Spinor5 {
                ModelSpec::Spinor5
            } else {
                ModelSpec::Cayley
            }
        }
    };
    spec.validate().map_err(|e| UsageError(e.to_string()))?;
    Ok(spec)
}

fn parse_mode(s: &str) -> Result<Mode, UsageError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "exact" => Ok(Mode::Exact),
        "probabilistic" => Ok(Mode::Probabilistic),
        other => Err(UsageError(format!("{MODE_ENV}={other:?}: expected exact or probabilistic"))),
    }
}

impl RunConfig {
    /// Resolves the command line; `env_mode` is the value of
    /// `PROLONGKIT_MODE`, if set.
    pub fn from_cli(cli: Cli, env_mode: Option<&str>) -> Result<RunConfig, UsageError> {
        let (command, model, system, checks, what, trials, common) = match cli.command {
            Command::Models(c) => (CommandName::Models, None, None, vec![], None, None, c),
            Command::Verify { model, checks, common } => {
                let spec = model_spec(model.model, model.n, model.m)?;
                let mut checks = checks;
                checks.sort();
                checks.dedup();
                (CommandName::Verify, Some(spec), None, checks, None, None, common)
            }
            Command::Prop6 { model, common } => {
                (CommandName::Prop6, Some(model_spec(model.model, model.n, model.m)?), None, vec![], None, None, common)
            }
            Command::Stability { model, system, trials, common } => {
                if trials == 0 {
                    return Err(UsageError("--trials must be at least 1".into()));
                }
                let spec = match (model.model, &system) {
                    (Some(kind), None) => Some(model_spec(kind, model.n, model.m)?),
                    (None, Some(_)) => None,
                    _ => return Err(UsageError("stability needs exactly one of --model or --system".into())),
                };
                let system = system.map(|p| p.display().to_string());
                (CommandName::Stability, spec, system, vec![], None, Some(trials), common)
            }
            Command::Dump { model, what, common } => {
                (CommandName::Dump, Some(model_spec(model.model, model.n, model.m)?), None, vec![], Some(what), None, common)
            }
        };
        let mode = match (common.mode, env_mode) {
            (Some(m), _) => Some(m.into()),
            (None, Some(s)) if !s.trim().is_empty() => Some(parse_mode(s)?),
            _ => None,
        };
        Ok(RunConfig {
            command,
            model,
            system,
            checks,
            what,
            trials,
            seed: common.seed,
            mode,
            format: common.format,
            output: common.output.map(|p| p.display().to_string()),
            timings: common.timings,
        })
    }
}
