//! Run configuration: a JSON document, optionally overridden by flags.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qhs_core::ambient::SpaceKind;
use qhs_core::exact_algebra::{parse_rational, Rational};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Ifun,
    Mirror,
    Gw,
    #[value(name = "verify-classp")]
    #[serde(rename = "verify-classp")]
    VerifyClassp,
    Recursion,
    FlagRelations,
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Ifun => "ifun",
            Command::Mirror => "mirror",
            Command::Gw => "gw",
            Command::VerifyClassp => "verify-classp",
            Command::Recursion => "recursion",
            Command::FlagRelations => "flag-relations",
            Command::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceConfig {
    ProjectiveProduct { dims: Vec<u32> },
    Grassmannian { k: usize, n: usize },
    FlagA { n: usize },
}

impl SpaceConfig {
    pub fn kind(&self) -> SpaceKind {
        match self {
            SpaceConfig::ProjectiveProduct { dims } => SpaceKind::ProjectiveProduct(dims.clone()),
            SpaceConfig::Grassmannian { k, n } => SpaceKind::Grassmannian { k: *k, n: *n },
            SpaceConfig::FlagA { n } => SpaceKind::FlagA(*n),
        }
    }
}

/// A rational given either as a JSON integer or as a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn value(&self) -> Result<Rational, CliError> {
        match self {
            RationalText::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalText::Text(s) => parse_rational(s).map_err(|e| CliError::Config(format!("eps entry {s:?}: {e}"))),
        }
    }
}

/// The JSON document as written by the user; every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub space: Option<SpaceConfig>,
    #[serde(default)]
    pub bundle: Vec<Vec<i64>>,
    pub order: Option<i64>,
    pub zorder: Option<i64>,
    pub eps: Option<Vec<RationalText>>,
    pub eps_seed: Option<u64>,
    pub command: Option<Command>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub space: SpaceConfig,
    pub bundle: Vec<Vec<i64>>,
    pub order: u32,
    pub zorder: u32,
    /// Explicit torus parameters; `None` means drawn from `eps_seed`.
    pub eps: Option<Vec<Rational>>,
    pub eps_seed: u64,
}

pub const DEFAULT_ORDER: u32 = 3;
pub const DEFAULT_ZORDER: u32 = 2;

/// Flag values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub order: Option<i64>,
    pub zorder: Option<i64>,
    pub eps_seed: Option<u64>,
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, flags: Overrides) -> Result<Self, CliError> {
        let command = flags
            .command
            .or(file.command)
            .ok_or_else(|| CliError::Config("no command given".into()))?;
        let space = file.space.ok_or_else(|| CliError::Config("config has no \"space\"".into()))?;
        let order = flags.order.or(file.order).unwrap_or(DEFAULT_ORDER as i64);
        let zorder = flags.zorder.or(file.zorder).unwrap_or(DEFAULT_ZORDER as i64);
        let to_u32 = |x: i64, what: &str| {
            u32::try_from(x).map_err(|_| CliError::Config(format!("{what} must be a nonnegative integer, got {x}")))
        };
        let eps = file
            .eps
            .map(|v| v.iter().map(RationalText::value).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        let config = RunConfig {
            command,
            space,
            bundle: file.bundle,
            order: to_u32(order, "order")?,
            zorder: to_u32(zorder, "zorder")?,
            eps,
            eps_seed: flags.eps_seed.or(file.eps_seed).unwrap_or(0),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let kind = self.space.kind();
        kind.validate().map_err(|e| CliError::Config(e.to_string()))?;
        let k = kind.nvars();
        for (j, l) in self.bundle.iter().enumerate() {
            if l.len() != k {
                return Err(CliError::Config(format!(
                    "bundle entry {} has {} degrees, the space needs {k}",
                    j + 1,
                    l.len()
                )));
            }
            if l.iter().any(|&x| x < 0) {
                return Err(CliError::Config(format!("bundle entry {} has a negative degree", j + 1)));
            }
        }
        if let Some(eps) = &self.eps {
            if eps.len() != kind.n_eps() {
                return Err(CliError::Config(format!(
                    "{kind} needs {} torus parameters, got {}",
                    kind.n_eps(),
                    eps.len()
                )));
            }
            for i in 0..eps.len() {
                if eps[..i].contains(&eps[i]) {
                    return Err(CliError::Config(format!("torus parameters must be pairwise distinct; {} repeats", eps[i])));
                }
            }
        }
        Ok(())
    }
}
