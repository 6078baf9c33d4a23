//! Structured config files (JSON or TOML) merged under command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use kuramotoq::classical::{InitialCondition, SimModel};
use kuramotoq::numerics::QuadratureConfig;
use kuramotoq::quantum::{Prefactor, ProfileModel};
use kuramotoq::DistributionSpec;
use serde::Deserialize;

/// A problem with the user's input; maps to exit status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub mu: Option<f64>,
    pub temp: Option<f64>,
    pub cutoff: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub temps: Option<Vec<f64>>,
    pub sigmas: Option<Vec<f64>>,
    pub couplings: Option<Vec<f64>>,
    pub sizes: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    pub model: Option<SimModel>,
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub t_burn: Option<f64>,
    pub t_avg: Option<f64>,
    pub n_realizations: Option<usize>,
    pub initial: Option<InitialCondition>,
    pub trajectory_stride: Option<usize>,
}

/// Everything a config file may set. Every field is optional; flags win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub params: ParamsSection,
    pub distribution: Option<DistributionSpec>,
    pub noise: Option<f64>,
    pub coupling: Option<f64>,
    pub sigma: Option<f64>,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub sim: SimSection,
    pub quadrature: Option<QuadratureConfig>,
    pub prefactor: Option<Prefactor>,
    pub profile: Option<ProfileModel>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

/// A parsed config file plus its text, for line lookups in later errors.
#[derive(Debug, Clone, Default)]
pub struct LoadedConfig {
    pub values: FileConfig,
    source: Option<(PathBuf, String)>,
}

impl LoadedConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("{}: cannot read config: {e}", path.display())))?;
        let values = parse(path, &text)?;
        let mut loaded = Self {
            values,
            source: Some((path.to_path_buf(), text)),
        };
        // Relative table paths resolve against the config file's directory.
        if let Some(DistributionSpec::Tabulated { path: table }) = &mut loaded.values.distribution {
            if table.is_relative() {
                if let Some(dir) = path.parent() {
                    *table = dir.join(&*table);
                }
            }
        }
        Ok(loaded)
    }

    /// An error about `key`, pointing at its line when it came from the file.
    pub fn error_at(&self, key: &str, message: impl fmt::Display) -> ConfigError {
        match &self.source {
            Some((path, text)) => match find_key_line(text, key) {
                Some(line) => ConfigError(format!("{}:{line}: {message}", path.display())),
                None => ConfigError(format!("{}: {message}", path.display())),
            },
            None => ConfigError(message.to_string()),
        }
    }

}

fn parse(path: &Path, text: &str) -> Result<FileConfig, ConfigError> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let from_json = |text: &str| {
        serde_json::from_str::<FileConfig>(text)
            .map_err(|e| ConfigError(format!("{}:{}: {e}", path.display(), e.line())))
    };
    let from_toml = |text: &str| {
        toml::from_str::<FileConfig>(text).map_err(|e| {
            let line = e.span().map_or(1, |s| line_of_offset(text, s.start));
            ConfigError(format!("{}:{line}: {}", path.display(), e.message()))
        })
    };
    match ext {
        "json" => from_json(text),
        "toml" => from_toml(text),
        _ if text.trim_start().starts_with('{') => from_json(text),
        _ => from_toml(text),
    }
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// First line that assigns `key`, in either JSON or TOML syntax.
fn find_key_line(text: &str, key: &str) -> Option<usize> {
    let quoted = format!("\"{key}\"");
    text.lines().position(|line| {
        let t = line.trim_start();
        t.contains(&quoted)
            || t.strip_prefix(key)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
    })
    .map(|i| i + 1)
}
