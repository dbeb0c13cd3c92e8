use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::periodic::FunctionHandle;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    RigidityScan,
    TwoValued,
    FixedPoints,
    Certificate,
    Dde,
    Lattice,
    Cheng,
    Poincare,
    Scaling,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Self::RigidityScan,
        Self::TwoValued,
        Self::FixedPoints,
        Self::Certificate,
        Self::Dde,
        Self::Lattice,
        Self::Cheng,
        Self::Poincare,
        Self::Scaling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::RigidityScan => "rigidity-scan",
            Self::TwoValued => "two-valued",
            Self::FixedPoints => "fixed-points",
            Self::Certificate => "certificate",
            Self::Dde => "dde",
            Self::Lattice => "lattice",
            Self::Cheng => "cheng",
            Self::Poincare => "poincare",
            Self::Scaling => "scaling",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Config {
                path: "experiment".into(),
                message: format!("unknown experiment `{s}`"),
            })
    }
}

/// Artifact paths, relative to the output directory.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub csv: Option<String>,
    pub json: Option<String>,
    pub svg: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub experiment: Option<Experiment>,
    #[serde(default)]
    pub function: Option<FunctionHandle>,
    /// Experiment-specific parameters; unknown keys are rejected when the
    /// experiment parses them.
    #[serde(default)]
    pub params: serde_json::Value,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            experiment: Some(experiment),
            function: None,
            params: serde_json::Value::Null,
            output: OutputSpec::default(),
            seed: 0,
        }
    }

    /// Parses a config document, reporting the failing field path and the
    /// line and column of the error.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            Error::Config {
                path: e.path().to_string(),
                message: format!("{inner} (line {}, column {})", inner.line(), inner.column()),
            }
        })?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(Error::Config {
                path: "schema_version".into(),
                message: format!(
                    "unsupported schema version {}, expected {SCHEMA_VERSION}",
                    cfg.schema_version
                ),
            });
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    /// Experiment parameters with defaults filled in; `null` or a missing
    /// `params` block means all defaults.
    pub fn params<T: DeserializeOwned + Default>(&self) -> Result<T> {
        if self.params.is_null() {
            return Ok(T::default());
        }
        serde_path_to_error::deserialize(&self.params).map_err(|e| Error::Config {
            path: format!("params.{}", e.path()),
            message: e.inner().to_string(),
        })
    }
}
