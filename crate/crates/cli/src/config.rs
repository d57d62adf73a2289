use std::path::PathBuf;

use clap::ValueEnum;
use kempe_core::exactfield::FieldSpec;
use kempe_core::invring::Mode;
use serde::{Deserialize, Serialize};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "KEMPE_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeOverride {
    Full,
    Sampled,
}

impl From<ModeOverride> for Mode {
    fn from(m: ModeOverride) -> Mode {
        match m {
            ModeOverride::Full => Mode::FullCoefficients,
            ModeOverride::Sampled => Mode::SampledEvaluations,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    #[default]
    Quick,
    Full,
}

/// Resource limits for a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest multiplication matrix (rows times columns) a check may build.
    pub cell_cap: usize,
    /// Wall-clock budget per check, in seconds.
    pub seconds_per_check: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cell_cap: 50_000_000,
            seconds_per_check: 2 * 60 * 60,
        }
    }
}

/// Everything that determines the output of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<usize>,
    pub weights: Option<Vec<usize>>,
    pub degree: Option<usize>,
    #[serde(with = "field_string")]
    pub field: FieldSpec,
    /// Set only when `--field` was given; verification claims otherwise use their own field.
    pub field_override: bool,
    pub mode: Option<ModeOverride>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub suite: Suite,
    pub claims: Vec<String>,
    pub stretch: bool,
    pub jobs: usize,
    pub caps: Caps,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            n: None,
            weights: None,
            degree: None,
            field: FieldSpec::Rationals,
            field_override: false,
            mode: None,
            seed: 0,
            cache_dir: None,
            format: OutputFormat::Text,
            suite: Suite::Quick,
            claims: Vec::new(),
            stretch: false,
            jobs: 1,
            caps: Caps::default(),
        }
    }
}

impl RunConfig {
    /// `--cache-dir` if given, else the environment override.
    pub fn resolve_cache_dir(explicit: Option<PathBuf>) -> Option<PathBuf> {
        explicit.or_else(|| std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from))
    }
}

mod field_string {
    use kempe_core::exactfield::FieldSpec;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &FieldSpec, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FieldSpec, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
