//! Run configuration: flags over a flat `key = value` file over defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use serde::Serialize;
use singular_eig_core::{Engine, OperatorKind, PotentialSpec, PucciParams, RadialOperator};

use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, Format, Num};

/// Flags shared by every subcommand. All optional so that a config file can
/// fill the gaps.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Flat `key = value` configuration file; flags override its entries.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// shoot | var | fd
    #[arg(long)]
    pub engine: Option<String>,
    /// pucci+ | pucci- | mix:THETA | laplacian
    #[arg(long)]
    pub operator: Option<String>,
    /// Lower ellipticity constant.
    #[arg(long)]
    pub lam: Option<f64>,
    /// Upper ellipticity constant.
    #[arg(long = "Lam")]
    pub lam_max: Option<f64>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Exponent of the potential r^-gamma.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Smoothing of the potential near the origin (fd, solve).
    #[arg(long)]
    pub eps: Option<f64>,
    /// Inner radius of the annulus; 0 is the ball (fd, solve).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Spectral parameter of the Dirichlet problem (solve).
    #[arg(long)]
    pub mu: Option<f64>,
    /// Mesh or grid size (var, fd, solve).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Engine tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// csv | json
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Number of eigenfunction samples on [0, 1].
    #[arg(long)]
    pub samples: Option<usize>,
}

const KNOWN_KEYS: &[&str] = &[
    "engine", "operator", "lam", "Lam", "dim", "gamma", "eps", "delta", "mu", "nodes", "tol",
    "format", "out", "jobs", "samples", "beta", "rhs", "boundary", "vary", "values", "engines",
];

/// Parsed `key = value` file. Blank lines and `#` comments are ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if !KNOWN_KEYS.contains(&k) {
                return Err(CliError::Config(format!(
                    "line {}: unknown key '{k}' (known: {})",
                    no + 1,
                    KNOWN_KEYS.join(", ")
                )));
            }
            entries.insert(k.to_string(), v.to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| CliError::Config(format!("config key '{key}': cannot parse '{v}'"))),
        }
    }

    pub fn get_raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Flag value, else config file value.
pub fn pick<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str) -> CliResult<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key),
    }
}

fn parse_engine(s: &str) -> CliResult<Engine> {
    s.parse::<Engine>()
        .map_err(|_| CliError::Config(format!("unknown engine '{s}' (expected shoot, var or fd)")))
}

fn parse_operator(s: &str) -> CliResult<OperatorKind> {
    s.parse::<OperatorKind>().map_err(|_| {
        CliError::Config(format!(
            "unknown operator '{s}' (expected pucci+, pucci-, mix:THETA or laplacian)"
        ))
    })
}

fn parse_format(s: &str) -> CliResult<Format> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(CliError::Config(format!("unknown format '{s}' (expected csv or json)"))),
    }
}

/// Fully resolved configuration, embedded in every output record.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub engine: Engine,
    pub operator: OperatorKind,
    pub lam: f64,
    pub lam_max: f64,
    pub dim: usize,
    pub gamma: f64,
    pub eps: f64,
    pub delta: f64,
    pub mu: f64,
    pub nodes: usize,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub samples: usize,
}

#[derive(Serialize)]
pub struct ConfigRecord {
    engine: String,
    operator: String,
    lam: Num,
    #[serde(rename = "Lam")]
    lam_max: Num,
    dim: usize,
    gamma: Num,
    eps: Num,
    delta: Num,
    mu: Num,
    nodes: usize,
    tol: Num,
    format: String,
    jobs: usize,
    samples: usize,
    seed: u64,
}

pub fn default_nodes(engine: Engine) -> usize {
    match engine {
        Engine::Shoot => 2048,
        Engine::Variational => 4096,
        Engine::FiniteDifference => 8192,
    }
}

pub fn default_tol(engine: Engine) -> f64 {
    match engine {
        Engine::Shoot => 1e-10,
        Engine::Variational => 1e-12,
        Engine::FiniteDifference => 1e-10,
    }
}

impl RunConfig {
    /// Merge flags, the optional config file and defaults; `default_format`
    /// differs between subcommands.
    pub fn resolve(args: &RunArgs, default_format: Format) -> CliResult<(Self, ConfigFile)> {
        let file = match &args.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let engine = match pick(args.engine.clone(), &file, "engine")? {
            Some(s) => parse_engine(&s)?,
            None => Engine::Shoot,
        };
        let operator = match pick(args.operator.clone(), &file, "operator")? {
            Some(s) => parse_operator(&s)?,
            None => OperatorKind::PucciPlus,
        };
        let format = match pick(args.format.clone(), &file, "format")? {
            Some(s) => parse_format(&s)?,
            None => default_format,
        };
        let out = match &args.out {
            Some(p) => Some(p.clone()),
            None => file.get_raw("out").map(PathBuf::from),
        };
        let cfg = Self {
            engine,
            operator,
            lam: pick(args.lam, &file, "lam")?.unwrap_or(1.0),
            lam_max: pick(args.lam_max, &file, "Lam")?.unwrap_or(1.0),
            dim: pick(args.dim, &file, "dim")?.unwrap_or(3),
            gamma: pick(args.gamma, &file, "gamma")?.unwrap_or(0.0),
            eps: pick(args.eps, &file, "eps")?.unwrap_or(1e-6),
            delta: pick(args.delta, &file, "delta")?.unwrap_or(0.0),
            mu: pick(args.mu, &file, "mu")?.unwrap_or(0.0),
            nodes: pick(args.nodes, &file, "nodes")?.unwrap_or(default_nodes(engine)),
            tol: pick(args.tol, &file, "tol")?.unwrap_or(default_tol(engine)),
            format,
            out,
            jobs: pick(args.jobs, &file, "jobs")?.unwrap_or(1),
            samples: pick(args.samples, &file, "samples")?.unwrap_or(101),
        };
        cfg.validate()?;
        Ok((cfg, file))
    }

    /// Preconditions of the selected engine, reported as configuration errors.
    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if !(self.lam > 0.0 && self.lam_max >= self.lam && self.lam_max.is_finite()) {
            return bad(format!(
                "need 0 < --lam <= --Lam (got lam = {}, Lam = {})",
                self.lam, self.lam_max
            ));
        }
        if self.dim < 2 {
            return bad(format!("--dim must be at least 2 (got {})", self.dim));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return bad(format!("--gamma must be a finite number >= 0 (got {})", self.gamma));
        }
        if !(self.eps >= 0.0 && self.eps.is_finite()) {
            return bad(format!("--eps must be >= 0 (got {})", self.eps));
        }
        if !(0.0..1.0).contains(&self.delta) {
            return bad(format!("--delta must lie in [0, 1) (got {})", self.delta));
        }
        if !(self.tol > 0.0) {
            return bad(format!("--tol must be positive (got {})", self.tol));
        }
        if self.jobs == 0 {
            return bad("--jobs must be at least 1".into());
        }
        if self.samples < 2 {
            return bad("--samples must be at least 2".into());
        }
        self.operator()?;
        match self.engine {
            Engine::Shoot if self.gamma >= 2.0 => {
                return bad(format!(
                    "the shoot engine needs gamma < 2 (got {}); use --engine fd for gamma >= 2",
                    self.gamma
                ))
            }
            Engine::Variational => {
                if self.gamma >= 2.0 {
                    return bad(format!("the var engine needs gamma < 2 (got {})", self.gamma));
                }
                if matches!(self.operator, OperatorKind::ConvexCombination(_)) {
                    return bad("the var engine supports pucci+, pucci- and laplacian only".into());
                }
                if self.nodes < 3 {
                    return bad("--nodes must be at least 3 for the var engine".into());
                }
            }
            Engine::FiniteDifference => self.check_grid()?,
            _ => {}
        }
        Ok(())
    }

    pub fn check_grid(&self) -> CliResult<()> {
        if self.nodes < 4 {
            return Err(CliError::Config("--nodes must be at least 4 for grid engines".into()));
        }
        if self.delta == 0.0 && self.eps == 0.0 && self.gamma > 0.0 {
            return Err(CliError::Config(
                "a ball grid needs --eps > 0 (smoothed potential) or --delta > 0 (annulus)".into(),
            ));
        }
        Ok(())
    }

    pub fn params(&self) -> CliResult<PucciParams> {
        PucciParams::new_relaxed(self.lam, self.lam_max, self.dim).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn operator(&self) -> CliResult<RadialOperator> {
        RadialOperator::new(self.operator, self.params()?).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Potential of grid engines: smoothed on the ball, bare on annuli.
    pub fn grid_potential(&self) -> CliResult<PotentialSpec> {
        let eps = if self.delta > 0.0 { 0.0 } else { self.eps };
        PotentialSpec::new(self.gamma, eps).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn record(&self, seed: u64) -> ConfigRecord {
        ConfigRecord {
            engine: self.engine.tag().into(),
            operator: self.operator.tag(),
            lam: Num(self.lam),
            lam_max: Num(self.lam_max),
            dim: self.dim,
            gamma: Num(self.gamma),
            eps: Num(self.eps),
            delta: Num(self.delta),
            mu: Num(self.mu),
            nodes: self.nodes,
            tol: Num(self.tol),
            format: self.format.tag().into(),
            jobs: self.jobs,
            samples: self.samples,
            seed,
        }
    }

    /// Flattened config for key/value CSV output, in record order.
    pub fn key_values(&self, seed: u64) -> Vec<(String, String)> {
        let f = fmt_f64;
        [
            ("engine", self.engine.tag().to_string()),
            ("operator", self.operator.tag()),
            ("lam", f(self.lam)),
            ("Lam", f(self.lam_max)),
            ("dim", self.dim.to_string()),
            ("gamma", f(self.gamma)),
            ("eps", f(self.eps)),
            ("delta", f(self.delta)),
            ("mu", f(self.mu)),
            ("nodes", self.nodes.to_string()),
            ("tol", f(self.tol)),
            ("format", self.format.tag().to_string()),
            ("jobs", self.jobs.to_string()),
            ("samples", self.samples.to_string()),
            ("seed", seed.to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (format!("config.{k}"), v))
        .collect()
    }
}
