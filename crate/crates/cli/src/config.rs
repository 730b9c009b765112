use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quantstab_core::parabolic::{parse_subset, Parabolic};
use quantstab_core::rootsys::{CartanDatum, RootSystem, Weight};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, Result};

/// Env var overriding the cache directory.
pub const CACHE_ENV: &str = "STABLE_CACHE_DIR";

pub const DEFAULT_DEGREE: u32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "quantstab",
    version,
    about = "Stable bases, divisor operators and Hecke operators for T*(G/P)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots and coroots.
    Roots {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Weyl group elements, or minimal coset representatives with --parabolic.
    Weyl {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        parabolic: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Stable-basis restriction tables.
    Stab {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "empty")]
        parabolic: String,
        #[arg(long, value_enum, default_value_t = ChamberArg::Both)]
        chamber: ChamberArg,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Matrix of quantum multiplication by a divisor in the stable basis.
    QuantumMatrix {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "empty")]
        parabolic: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Part::Total)]
        part: Part,
        #[command(flatten)]
        out: Output,
    },
    /// Applies a Demazure-Lusztig or divisor operator to a polynomial.
    HeckeApply {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "empty")]
        parabolic: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// `dl:<word>` (e.g. `dl:1` or `dl:s1s2`), `bmo` or `pcon`.
        #[arg(long)]
        operator: String,
        #[command(flatten)]
        out: Output,
    },
    /// Runs every check for the configuration; the exit code names the
    /// first failing suite.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "empty")]
        parabolic: String,
        /// Degree bound for the operator checks.
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        cache: CacheArgs,
    },
}

#[derive(Debug, Args)]
pub struct Target {
    /// Named type such as A3, B2 or G2.
    #[arg(
        long = "type",
        value_name = "TYPE",
        required_unless_present = "cartan_file",
        conflicts_with = "cartan_file"
    )]
    pub type_name: Option<String>,
    /// Text file: the rank, then one row of the Cartan matrix per line.
    #[arg(long, value_name = "PATH")]
    pub cartan_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    /// Cache directory; STABLE_CACHE_DIR takes precedence.
    #[arg(long, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the table cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChamberArg {
    Plus,
    Minus,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Classical,
    Quantum,
    Total,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartanSource {
    Named(String),
    File(PathBuf),
}

/// Everything a subcommand needs, validated.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub command: &'static str,
    pub source: CartanSource,
    pub cartan: CartanDatum,
    /// 0-based.
    pub subset: Option<Vec<usize>>,
    pub weight: Option<Weight>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub degree: Option<u32>,
}

impl JobConfig {
    pub fn root_system(&self) -> Result<RootSystem> {
        Ok(RootSystem::new(self.cartan.clone())?)
    }

    pub fn parabolic(&self) -> Result<Parabolic> {
        let subset = self.subset.as_deref().unwrap_or(&[]);
        Ok(Parabolic::new(self.root_system()?, subset)?)
    }

    pub fn weight(&self) -> Result<&Weight> {
        self.weight
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("{} needs --weight", self.command)))
    }

    /// Identifies the (type, parabolic) pair independently of how the type
    /// was given.
    pub fn canonical_key(&self) -> String {
        let subset: Vec<String> = self
            .subset
            .iter()
            .flatten()
            .map(|i| (i + 1).to_string())
            .collect();
        format!("{}parabolic {}\n", self.cartan.to_text(), subset.join(","))
    }

    pub fn header(&self) -> Value {
        let source = match &self.source {
            CartanSource::Named(n) => json!({ "type": n }),
            CartanSource::File(p) => json!({ "file": p.display().to_string() }),
        };
        let subset = self
            .subset
            .as_ref()
            .map(|s| s.iter().map(|i| i + 1).collect::<Vec<_>>());
        let weight = self
            .weight
            .as_ref()
            .map(|w| w.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>());
        json!({
            "command": self.command,
            "cartan": { "source": source, "matrix": self.cartan.rows() },
            "parabolic": subset,
            "weight": weight,
            "format": self.format,
            "cache_dir": self.cache_dir.as_ref().map(|p| p.display().to_string()),
            "degree": self.degree,
        })
    }
}

fn load_cartan(target: &Target) -> Result<(CartanSource, CartanDatum)> {
    match (&target.type_name, &target.cartan_file) {
        (Some(name), _) => Ok((CartanSource::Named(name.clone()), CartanDatum::named(name)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::File {
                path: path.clone(),
                source,
            })?;
            Ok((
                CartanSource::File(path.clone()),
                CartanDatum::parse_text(&text)?,
            ))
        }
        (None, None) => Err(CliError::Usage("give --type or --cartan-file".into())),
    }
}

fn cache_dir(args: &CacheArgs) -> Option<PathBuf> {
    if args.no_cache {
        return None;
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir));
    }
    Some(
        args.cache_dir
            .clone()
            .unwrap_or_else(|| std::env::temp_dir().join("quantstab-cache")),
    )
}

impl JobConfig {
    fn new(command: &'static str, target: &Target, format: Format) -> Result<JobConfig> {
        let (source, cartan) = load_cartan(target)?;
        Ok(JobConfig {
            command,
            source,
            cartan,
            subset: None,
            weight: None,
            format,
            cache_dir: None,
            degree: None,
        })
    }

    fn with_subset(mut self, src: &str) -> Result<JobConfig> {
        self.subset = Some(parse_subset(src, self.cartan.rank())?);
        Ok(self)
    }

    /// Parses the weight and checks it against the subset.
    fn with_weight(mut self, src: &str) -> Result<JobConfig> {
        let w = Weight::parse(src)?;
        self.parabolic()?.check_weight(&w)?;
        self.weight = Some(w);
        Ok(self)
    }

    pub fn from_command(cmd: &Command) -> Result<JobConfig> {
        Ok(match cmd {
            Command::Roots { target, out } => JobConfig::new("roots", target, out.format)?,
            Command::Weyl {
                target,
                parabolic,
                out,
            } => {
                let cfg = JobConfig::new("weyl", target, out.format)?;
                match parabolic {
                    Some(p) => cfg.with_subset(p)?,
                    None => cfg,
                }
            }
            Command::Stab {
                target,
                parabolic,
                out,
                cache,
                ..
            } => {
                let mut cfg = JobConfig::new("stab", target, out.format)?.with_subset(parabolic)?;
                cfg.cache_dir = cache_dir(cache);
                cfg
            }
            Command::QuantumMatrix {
                target,
                parabolic,
                weight,
                out,
                ..
            } => JobConfig::new("quantum-matrix", target, out.format)?
                .with_subset(parabolic)?
                .with_weight(weight)?,
            Command::HeckeApply {
                target,
                parabolic,
                weight,
                out,
                ..
            } => {
                let cfg =
                    JobConfig::new("hecke-apply", target, out.format)?.with_subset(parabolic)?;
                match weight {
                    Some(w) => cfg.with_weight(w)?,
                    None => cfg,
                }
            }
            Command::Verify {
                target,
                parabolic,
                degree,
                out,
                cache,
            } => {
                let mut cfg =
                    JobConfig::new("verify", target, out.format)?.with_subset(parabolic)?;
                cfg.cache_dir = cache_dir(cache);
                cfg.degree = Some(*degree);
                cfg
            }
        })
    }
}
