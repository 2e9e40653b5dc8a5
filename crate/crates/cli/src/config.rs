use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, ValueEnum};
use serde::Deserialize;
use torus_tr::exactnum::{parse_rational, Rational};
use torus_tr::KnotParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Jsonl,
    Csv,
}

/// Flags shared by every computing command. Anything left unset falls back
/// to the config file, then to the defaults below.
#[derive(Args, Debug, Default, Clone)]
pub struct JobFlags {
    /// Torus knot as `Q,P`.
    #[arg(long)]
    pub knot: Option<String>,
    /// Curve parameter as exact rational text `num/den`.
    #[arg(long = "A", id = "A")]
    pub a: Option<String>,
    #[arg(long)]
    pub gmax: Option<u32>,
    #[arg(long)]
    pub nmax: Option<u32>,
    /// Total degree in the X variables.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Local truncation order for the recursion; defaults to what the
    /// requested range needs.
    #[arg(long)]
    pub order: Option<i64>,
    /// Largest color size for `homfly`.
    #[arg(long)]
    pub rmax: Option<u32>,
    /// Degree for the cut-and-join residual; `(0,1)` uses twice this.
    #[arg(long = "cutjoin-degree")]
    pub cutjoin_degree: Option<u32>,
    /// Worker threads; 0 means one per core.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// TOML file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    knot: Option<String>,
    #[serde(rename = "A")]
    a: Option<String>,
    gmax: Option<u32>,
    nmax: Option<u32>,
    degree: Option<u32>,
    order: Option<i64>,
    rmax: Option<u32>,
    cutjoin_degree: Option<u32>,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

/// Fully resolved and validated job parameters.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub knot: KnotParams,
    pub a: Rational,
    pub a_text: String,
    pub gmax: u32,
    pub nmax: u32,
    pub degree: u32,
    pub order: Option<i64>,
    pub rmax: u32,
    pub cutjoin_degree: u32,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Invalid user input; mapped to exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn read_file(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).map_err(|e| InputError(format!("config {}: {e}", path.display())).into())
}

impl JobFlags {
    pub fn resolve(&self) -> anyhow::Result<JobConfig> {
        let file = match &self.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let knot_text = self
            .knot
            .clone()
            .or(file.knot)
            .unwrap_or_else(|| "2,3".into());
        let a_text = self.a.clone().or(file.a).unwrap_or_else(|| "1/3".into());
        let knot = KnotParams::parse(&knot_text).map_err(|e| InputError(format!("--knot: {e}")))?;
        let a = parse_rational(&a_text).map_err(|e| InputError(format!("--A: {e}")))?;
        let degree = self.degree.or(file.degree).unwrap_or(6);
        if degree == 0 {
            return Err(InputError("--degree must be at least 1".into()).into());
        }
        let cutjoin_degree = self.cutjoin_degree.or(file.cutjoin_degree).unwrap_or(4);
        if cutjoin_degree == 0 {
            return Err(InputError("--cutjoin-degree must be at least 1".into()).into());
        }
        Ok(JobConfig {
            knot,
            a,
            a_text,
            gmax: self.gmax.or(file.gmax).unwrap_or(1),
            nmax: self.nmax.or(file.nmax).unwrap_or(3),
            degree,
            order: self.order.or(file.order),
            rmax: self.rmax.or(file.rmax).unwrap_or(3),
            cutjoin_degree,
            jobs: self.jobs.or(file.jobs).unwrap_or(0),
            out: self.out.clone().or(file.out),
            format: self.format.or(file.format),
        })
    }
}
