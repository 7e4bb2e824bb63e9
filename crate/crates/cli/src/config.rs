//! Settings shared by all subcommands: an optional TOML file of flat
//! `key = value` lines, overridden by command-line flags.
//!
//! ```toml
//! provider = "embed.json"   # provider config file, or "mock"
//! min_sim = 0.5
//! match_penalty = 0.3
//! abbreviations = ["dl", "Sf"]
//! ortho_model = "model.json"
//! manifest = "sources.json"
//! ratio = 0.95
//! seed = 42
//! jobs = 4
//! ```

use std::path::{Path, PathBuf};

use rupkit::align::{AlignConfig, SplitterRules};
use rupkit::embeddings::ProviderConfig;
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub provider: Option<String>,
    pub min_sim: Option<f64>,
    pub match_penalty: Option<f64>,
    pub abbreviations: Option<Vec<String>>,
    pub ortho_model: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub ratio: Option<f64>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

/// Everything a pipeline run needs, after merging file and flags.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub provider: Option<ProviderConfig>,
    pub align: AlignConfig,
    pub splitter: SplitterRules,
    pub ortho_model_path: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub ratio: f64,
    pub seed: u64,
    pub jobs: usize,
}

/// Resolves a `--provider` value: the word `mock` or a JSON config path.
pub fn provider(value: &str) -> Result<ProviderConfig, Failure> {
    if value == "mock" {
        return Ok(ProviderConfig::mock());
    }
    Ok(ProviderConfig::read(value)?)
}

impl PipelineConfig {
    pub fn new(file: FileConfig, jobs: Option<usize>) -> Result<Self, Failure> {
        let defaults = AlignConfig::default();
        Ok(PipelineConfig {
            provider: file.provider.as_deref().map(provider).transpose()?,
            align: AlignConfig {
                min_sim: file.min_sim.unwrap_or(defaults.min_sim),
                match_penalty: file.match_penalty.unwrap_or(defaults.match_penalty),
            },
            splitter: SplitterRules::default()
                .with_abbreviations(file.abbreviations.unwrap_or_default()),
            ortho_model_path: file.ortho_model,
            manifest: file.manifest,
            ratio: file.ratio.unwrap_or(0.95),
            seed: file.seed.unwrap_or(0),
            jobs: jobs.or(file.jobs).unwrap_or(1).max(1),
        })
    }
}
