use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Tolerances;

/// Batch job description, read from JSON. See `docs/config-schema.md`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub surface: SurfaceConfig,
    pub normalization: NormalizationConfig,
    pub grid: GridConfig,
    #[serde(default)]
    pub outputs: OutputConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Corrupt the closed-form J by +10% in `verify`.
    #[serde(default)]
    pub negative_control: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub delta: String,
    pub kappa: String,
    pub lambda: String,
    pub domain: (f64, f64),
    /// Base point u₀ of ∫κ and of the frame integration; defaults to the
    /// left end of the domain.
    #[serde(default)]
    pub base: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum NormalizationConfig {
    Euclidean,
    Manhart {
        a: f64,
    },
    /// Profile in the variable `V`.
    Polar {
        f: String,
    },
    Special {
        c1: f64,
        c2: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Defaults to the surface domain shrunk at both ends, so that
    /// oracle stencils stay inside it.
    #[serde(default)]
    pub u_range: Option<(f64, f64)>,
    pub u_count: usize,
    pub v_range: (f64, f64),
    pub v_count: usize,
}

/// Output file names, relative to the output directory. Unset outputs are
/// not written.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub obj: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub classify: Option<PathBuf>,
}

impl JobConfig {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
