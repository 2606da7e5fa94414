//! Flag and config-file handling. Every subcommand takes the same flag
//! set; an optional TOML file can supply any of them, and explicit flags
//! always win over the file.

use std::path::PathBuf;

use clap::{Args as ClapArgs, ValueEnum};
use serde::Deserialize;

use coauthornet::prestige::RankOptions;
use coauthornet::{Error, Result};

/// The five per-author metrics the toolkit ranks and compares.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Degree,
    Closeness,
    Betweenness,
    Pagerank,
    Authorrank,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Degree,
        Metric::Closeness,
        Metric::Betweenness,
        Metric::Pagerank,
        Metric::Authorrank,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::Closeness => "closeness",
            Metric::Betweenness => "betweenness",
            Metric::Pagerank => "pagerank",
            Metric::Authorrank => "authorrank",
        }
    }
}

#[derive(ClapArgs, Debug, Default)]
pub struct Args {
    /// Bibliography: one JSON record per line
    #[arg(long)]
    input: Option<PathBuf>,

    /// Author metadata (country, affiliation): one JSON record per line
    #[arg(long)]
    affiliations: Option<PathBuf>,

    /// Committee roster: one name per line, # starts a comment
    #[arg(long)]
    roster: Option<PathBuf>,

    /// Output directory, created if absent
    #[arg(long)]
    out: Option<PathBuf>,

    /// Metrics to compute, repeatable or comma separated
    #[arg(long, value_enum, value_delimiter = ',', num_args = 1..)]
    metrics: Option<Vec<Metric>>,

    /// Damping factor of the prestige iteration
    #[arg(long)]
    damping: Option<f64>,

    /// Convergence threshold on the largest per-node change
    #[arg(long)]
    tol: Option<f64>,

    /// Prestige iteration budget
    #[arg(long)]
    max_iter: Option<usize>,

    /// Keep only the top K ranking rows and overlap-curve points
    #[arg(long)]
    top: Option<usize>,

    /// Seed for random-baseline sampling
    #[arg(long)]
    seed: Option<u64>,

    /// Omit weighted arcs below this weight from DOT exports
    #[arg(long)]
    min_weight: Option<f64>,

    /// Divide prestige scores by their sum before reporting
    #[arg(long)]
    normalize: bool,

    /// Random graphs averaged into the small-world baseline
    #[arg(long)]
    baseline_samples: Option<usize>,

    /// TOML file supplying defaults for any of the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

/// TOML mirror of the flag set. Unknown keys are rejected so typos
/// surface instead of silently falling back to defaults.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    input: Option<PathBuf>,
    affiliations: Option<PathBuf>,
    roster: Option<PathBuf>,
    out: Option<PathBuf>,
    metrics: Option<Vec<String>>,
    damping: Option<f64>,
    tol: Option<f64>,
    max_iter: Option<usize>,
    top: Option<usize>,
    seed: Option<u64>,
    min_weight: Option<f64>,
    normalize: Option<bool>,
    baseline_samples: Option<usize>,
}

/// Fully resolved run parameters after merging flags, config file, and
/// defaults.
#[derive(Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub affiliations: Option<PathBuf>,
    pub roster: Option<PathBuf>,
    pub out: PathBuf,
    pub metrics: Vec<Metric>,
    pub rank: RankOptions,
    pub top: Option<usize>,
    pub seed: u64,
    pub min_weight: f64,
    pub normalize: bool,
    pub baseline_samples: usize,
}

impl Args {
    pub fn resolve(self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::InputFile {
                    path: path.clone(),
                    source: e,
                })?;
                toml::from_str::<FileConfig>(&text).map_err(|e| {
                    Error::InvalidInput(format!("config {}: {e}", path.display()))
                })?
            }
            None => FileConfig::default(),
        };

        let metrics = match self.metrics {
            Some(list) => list,
            None => match file.metrics {
                Some(names) => names
                    .iter()
                    .map(|name| {
                        Metric::from_str(name, true).map_err(|_| {
                            Error::InvalidInput(format!("config lists unknown metric {name:?}"))
                        })
                    })
                    .collect::<Result<Vec<Metric>>>()?,
                None => Metric::ALL.to_vec(),
            },
        };

        let defaults = RankOptions::default();
        Ok(RunConfig {
            input: self.input.or(file.input).ok_or_else(|| {
                Error::InvalidInput("--input is required (flag or config file)".into())
            })?,
            affiliations: self.affiliations.or(file.affiliations),
            roster: self.roster.or(file.roster),
            out: self.out.or(file.out).ok_or_else(|| {
                Error::InvalidInput("--out is required (flag or config file)".into())
            })?,
            metrics,
            rank: RankOptions {
                damping: self.damping.or(file.damping).unwrap_or(defaults.damping),
                tol: self.tol.or(file.tol).unwrap_or(defaults.tol),
                max_iter: self.max_iter.or(file.max_iter).unwrap_or(defaults.max_iter),
            },
            top: self.top.or(file.top),
            seed: self.seed.or(file.seed).unwrap_or(42),
            min_weight: self.min_weight.or(file.min_weight).unwrap_or(0.0),
            normalize: self.normalize || file.normalize.unwrap_or(false),
            baseline_samples: self
                .baseline_samples
                .or(file.baseline_samples)
                .unwrap_or(20),
        })
    }
}
