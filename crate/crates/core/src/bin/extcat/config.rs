//! Declarative run configuration read from TOML.
//!
//! Every key is optional; command-line flags override file values, which
//! override built-in defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub solve: CurveSection,
    #[serde(default)]
    pub revolve: RevolveSection,
    #[serde(default)]
    pub check: CheckSection,
    #[serde(default)]
    pub relax: RelaxSection,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSection {
    #[serde(rename = "type")]
    pub ctype: Option<String>,
    pub r: Option<f64>,
    pub lambda: Option<f64>,
    pub u0: Option<f64>,
    pub v0: Option<f64>,
    pub theta0: Option<f64>,
    pub smax: Option<f64>,
    pub step: Option<f64>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RevolveSection {
    #[serde(rename = "type")]
    pub ctype: Option<String>,
    pub r: Option<f64>,
    pub lambda: Option<f64>,
    pub u0: Option<f64>,
    pub v0: Option<f64>,
    pub theta0: Option<f64>,
    pub smax: Option<f64>,
    pub step: Option<f64>,
    pub input: Option<PathBuf>,
    pub ntheta: Option<usize>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    pub rows: Option<usize>,
    pub projection: Option<String>,
    pub out: Option<PathBuf>,
}

impl RevolveSection {
    pub fn curve(&self) -> CurveSection {
        CurveSection {
            ctype: self.ctype.clone(),
            r: self.r,
            lambda: self.lambda,
            u0: self.u0,
            v0: self.v0,
            theta0: self.theta0,
            smax: self.smax,
            step: self.step,
            out: None,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSection {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub only: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelaxSection {
    #[serde(rename = "type")]
    pub ctype: Option<String>,
    pub r: Option<f64>,
    pub start: Option<[f64; 2]>,
    pub end: Option<[f64; 2]>,
    pub segments: Option<usize>,
    pub slack: Option<f64>,
    pub max_iter: Option<usize>,
    pub grad_tol: Option<f64>,
    pub step: Option<f64>,
    pub lambda: Option<f64>,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else { return Ok(FileConfig::default()) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
}
