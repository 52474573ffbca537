use std::fmt;
use std::path::PathBuf;

use serde::Deserialize;

use coordlab::distributions::{hard_one_bit, SwitchedDistribution};
use coordlab::protolib::{
    and_poll_protocol, direct_sum_protocol, naive_protocol, sequential_search_protocol,
    EmbeddingConfig,
};
use coordlab::Protocol;

pub const PROTOCOL_NAMES: &[&str] = &[
    "naive",
    "seq-search",
    "and-poll",
    "direct-sum(base=naive)",
    "direct-sum(base=seq-search)",
];

pub const DIST_NAMES: &[&str] = &["hard-onebit", "hard-product"];

pub const SUITE_NAMES: &[&str] = &[
    "model-invariants",
    "infotheory",
    "costs",
    "structure",
    "directsum",
    "taskalloc",
    "all",
];

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ModelInvariants,
    Infotheory,
    Costs,
    Structure,
    DirectSum,
    TaskAlloc,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite, ConfigError> {
        match name {
            "model-invariants" => Ok(Suite::ModelInvariants),
            "infotheory" => Ok(Suite::Infotheory),
            "costs" => Ok(Suite::Costs),
            "structure" => Ok(Suite::Structure),
            "directsum" => Ok(Suite::DirectSum),
            "taskalloc" => Ok(Suite::TaskAlloc),
            "all" => Ok(Suite::All),
            other => Err(ConfigError(format!(
                "unknown suite '{other}'; valid suites: {}",
                SUITE_NAMES.join(", ")
            ))),
        }
    }

    pub fn includes(self, suite: Suite) -> bool {
        self == Suite::All || self == suite
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(name: &str) -> Result<OutputFormat, ConfigError> {
        match name {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(ConfigError(format!(
                "unknown format '{other}'; valid formats: json, csv"
            ))),
        }
    }
}

/// Keys accepted in the optional JSON config file; command-line flags
/// override any key present here.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub protocol: Option<String>,
    pub dist: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub suite: Option<String>,
    pub budget: Option<u64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

/// A fully resolved experiment configuration.
#[derive(Debug)]
pub struct ExperimentConfig {
    pub protocol_name: String,
    pub dist_name: String,
    pub n: usize,
    pub k: usize,
    pub suite: Suite,
    pub budget: u64,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(2..=6).contains(&self.k) {
            return Err(ConfigError(format!(
                "k = {} out of the supported range 2..=6",
                self.k
            )));
        }
        if !(1..=4).contains(&self.n) {
            return Err(ConfigError(format!(
                "n = {} out of the supported range 1..=4",
                self.n
            )));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(ConfigError("tolerance must be positive".into()));
        }
        if self.budget == 0 {
            return Err(ConfigError("budget must be positive".into()));
        }
        self.build_protocol()?;
        self.build_distribution().map_err(|e| {
            ConfigError(format!("cannot build distribution: {e}"))
        })?;
        Ok(())
    }

    pub fn build_protocol(&self) -> Result<Protocol, ConfigError> {
        build_protocol(&self.protocol_name, self.n, self.k)
    }

    pub fn build_distribution(&self) -> Result<SwitchedDistribution, ConfigError> {
        let xi = hard_one_bit(self.k).map_err(|e| ConfigError(e.to_string()))?;
        match self.dist_name.as_str() {
            "hard-onebit" => Ok(xi),
            "hard-product" => xi.power(self.n).map_err(|e| ConfigError(e.to_string())),
            other => Err(ConfigError(format!(
                "unknown distribution '{other}'; valid distributions: {}",
                DIST_NAMES.join(", ")
            ))),
        }
    }
}

pub fn build_protocol(name: &str, n: usize, k: usize) -> Result<Protocol, ConfigError> {
    match name {
        "naive" => Ok(naive_protocol(n, k)),
        "seq-search" => Ok(sequential_search_protocol(n, k)),
        "and-poll" => Ok(and_poll_protocol(k)),
        "direct-sum(base=naive)" => embed(&naive_protocol(n, k)),
        "direct-sum(base=seq-search)" => embed(&sequential_search_protocol(n, k)),
        other => Err(ConfigError(format!(
            "unknown protocol '{other}'; valid protocols: {}",
            PROTOCOL_NAMES.join(", ")
        ))),
    }
}

fn embed(base: &Protocol) -> Result<Protocol, ConfigError> {
    let cfg = EmbeddingConfig::new(base).map_err(|e| ConfigError(e.to_string()))?;
    direct_sum_protocol(&cfg).map_err(|e| ConfigError(e.to_string()))
}
