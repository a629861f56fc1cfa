//! Run configuration: defaults, then a `key = value` file, then flags.

use crate::CliError;
use bockstein_engine::required_truncation;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Svg,
}

/// Every field optional; used for both the config file and the flags.
#[derive(Debug, Clone, Default, PartialEq, Eq, clap::Args)]
pub struct Overrides {
    /// odd prime
    #[arg(long = "p")]
    pub p: Option<u32>,
    /// v1-weight truncation N of the Σ̄₂ model
    #[arg(long)]
    pub trunc: Option<i64>,
    /// degree cap D of the formal group law
    #[arg(long = "degree-cap")]
    pub degree_cap: Option<i64>,
    /// window of v2-exponents
    #[arg(long, allow_hyphen_values = true)]
    pub tmin: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tmax: Option<i64>,
    #[arg(long)]
    pub smax: Option<usize>,
    /// largest Bockstein page index k
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

impl Overrides {
    /// `other` wins where set.
    pub fn merge(self, other: Overrides) -> Overrides {
        Overrides {
            p: other.p.or(self.p),
            trunc: other.trunc.or(self.trunc),
            degree_cap: other.degree_cap.or(self.degree_cap),
            tmin: other.tmin.or(self.tmin),
            tmax: other.tmax.or(self.tmax),
            smax: other.smax.or(self.smax),
            kmax: other.kmax.or(self.kmax),
            format: other.format.or(self.format),
            fixtures: other.fixtures.or(self.fixtures),
        }
    }

    pub fn parse_file(text: &str) -> Result<Overrides, CliError> {
        let mut o = Overrides::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = |e: &dyn std::fmt::Display| CliError::Usage(format!("config line {}: {k}: {e}", n + 1));
            match k {
                "p" => o.p = Some(v.parse().map_err(|e| bad(&e))?),
                "trunc" => o.trunc = Some(v.parse().map_err(|e| bad(&e))?),
                "degree_cap" => o.degree_cap = Some(v.parse().map_err(|e| bad(&e))?),
                "tmin" => o.tmin = Some(v.parse().map_err(|e| bad(&e))?),
                "tmax" => o.tmax = Some(v.parse().map_err(|e| bad(&e))?),
                "smax" => o.smax = Some(v.parse().map_err(|e| bad(&e))?),
                "kmax" => o.kmax = Some(v.parse().map_err(|e| bad(&e))?),
                "format" => {
                    o.format = Some(match v {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        "svg" => Format::Svg,
                        _ => return Err(bad(&"expected text, json or svg")),
                    })
                }
                "fixtures" => o.fixtures = Some(PathBuf::from(v)),
                _ => return Err(CliError::Usage(format!("config line {}: unknown key {k}", n + 1))),
            }
        }
        Ok(o)
    }

    pub fn read_file(path: &Path) -> Result<Overrides, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_file(&text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u32,
    pub trunc: i64,
    pub degree_cap: i64,
    pub tmin: i64,
    pub tmax: i64,
    pub smax: usize,
    pub kmax: u32,
    #[serde(skip)]
    pub format: Option<Format>,
    #[serde(skip)]
    pub fixtures: Option<PathBuf>,
}

/// The law cap used when none is given: p^4 at p = 3, p^3 above.
pub fn default_degree_cap(p: u32) -> i64 {
    let p = p as i64;
    if p == 3 {
        p.pow(4)
    } else {
        p.pow(3)
    }
}

/// Smallest model truncation serving pages up to k_max and the
/// v2-power expansions mod v1^{3p+3}.
pub fn minimum_truncation(p: u32, kmax: u32) -> i64 {
    required_truncation(kmax, p).max(3 * p as i64 + 3)
}

impl RunConfig {
    pub fn resolve(o: &Overrides) -> Result<RunConfig, CliError> {
        let p = o.p.unwrap_or(3);
        if p == 2 {
            return Err(CliError::Usage("p = 2 is not supported: every computation here assumes p > 2".into()));
        }
        ehh2_core::field::check_odd_prime(p).map_err(|e| CliError::Usage(e.to_string()))?;
        let kmax = o.kmax.unwrap_or(3);
        let cfg = RunConfig {
            p,
            trunc: o.trunc.unwrap_or_else(|| minimum_truncation(p, kmax)),
            degree_cap: o.degree_cap.unwrap_or_else(|| default_degree_cap(p)),
            tmin: o.tmin.unwrap_or(-20),
            tmax: o.tmax.unwrap_or(20),
            smax: o.smax.unwrap_or(3),
            kmax,
            format: o.format,
            fixtures: o.fixtures.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let p = self.p as i64;
        let need = minimum_truncation(self.p, self.kmax);
        if self.trunc < need {
            return Err(CliError::Usage(format!(
                "insufficient truncation: k_max = {} needs N >= {need}, got N = {}",
                self.kmax, self.trunc
            )));
        }
        if self.degree_cap < p.pow(3) {
            return Err(CliError::Usage(format!(
                "degree cap {} is below p^3 = {}, which the right unit of v3 needs",
                self.degree_cap,
                p.pow(3)
            )));
        }
        if self.smax < 3 {
            return Err(CliError::Usage(format!("smax = {} must be at least 3", self.smax)));
        }
        if self.tmin > self.tmax {
            return Err(CliError::Usage(format!("empty window: tmin = {} > tmax = {}", self.tmin, self.tmax)));
        }
        Ok(())
    }

    /// Equal in every field that affects computed content.
    pub fn same_content(&self, other: &RunConfig) -> bool {
        let strip = |c: &RunConfig| RunConfig { format: None, fixtures: None, ..c.clone() };
        strip(self) == strip(other)
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}
