//! Run configuration: built-in defaults, then a `key = value` file, then flags.

use crate::error::{Error, Result};
use crate::measures::{DEFAULT_NODES, DEFAULT_RMAX, MIN_NODES};
use clap::ValueEnum;
use serde::Serialize;
use std::path::Path;
use std::str::FromStr;

/// Radial profile families for the Cauchy data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    /// `exp(-r^2 / (2 w^2))`
    Gaussian,
    /// `r^2 exp(-r^2 / (2 w^2))`
    #[value(name = "gaussian_r2")]
    GaussianR2,
    /// `exp(1 - 1 / (1 - (r/w)^2))` for `r < w`, zero outside
    Bump,
    /// identically zero
    Zero,
}

impl ProfileKind {
    pub fn eval(self, r: f64, width: f64) -> f64 {
        let x = r / width;
        match self {
            ProfileKind::Gaussian => (-0.5 * x * x).exp(),
            ProfileKind::GaussianR2 => r * r * (-0.5 * x * x).exp(),
            ProfileKind::Bump => {
                if x < 1.0 {
                    (1.0 - 1.0 / (1.0 - x * x)).exp()
                } else {
                    0.0
                }
            }
            ProfileKind::Zero => 0.0,
        }
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <ProfileKind as ValueEnum>::from_str(s, true)
            .map_err(|_| Error::invalid("profile", format!("unknown profile `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <OutputFormat as ValueEnum>::from_str(s, true)
            .map_err(|_| Error::invalid("out", format!("unknown output format `{s}`")))
    }
}

/// Partially specified configuration; `None` means "not given at this layer".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub n: Option<u32>,
    pub gamma: Option<f64>,
    pub mass: Option<f64>,
    pub rmax: Option<f64>,
    pub nodes: Option<usize>,
    pub profile: Option<ProfileKind>,
    pub velocity_profile: Option<ProfileKind>,
    pub width: Option<f64>,
    pub t: Option<f64>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub out: Option<OutputFormat>,
    pub seed: Option<u64>,
}

fn parse<T: FromStr>(key: &'static str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::invalid(key, format!("line {line}: cannot parse `{value}`")))
}

impl ConfigLayer {
    /// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut layer = ConfigLayer::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                Error::invalid("config", format!("line {line}: expected `key = value`"))
            })?;
            let value = value.trim();
            match key.trim().replace('_', "-").as_str() {
                "n" => layer.n = Some(parse("n", value, line)?),
                "gamma" => layer.gamma = Some(parse("gamma", value, line)?),
                "mass" => layer.mass = Some(parse("mass", value, line)?),
                "rmax" => layer.rmax = Some(parse("rmax", value, line)?),
                "nodes" => layer.nodes = Some(parse("nodes", value, line)?),
                "profile" => layer.profile = Some(value.parse()?),
                "velocity-profile" => layer.velocity_profile = Some(value.parse()?),
                "width" => layer.width = Some(parse("width", value, line)?),
                "t" => layer.t = Some(parse("t", value, line)?),
                "t-max" => layer.t_max = Some(parse("t-max", value, line)?),
                "steps" => layer.steps = Some(parse("steps", value, line)?),
                "out" => layer.out = Some(value.parse()?),
                "seed" => layer.seed = Some(parse("seed", value, line)?),
                other => {
                    return Err(Error::invalid(
                        "config",
                        format!("line {line}: unknown key `{other}`"),
                    ))
                }
            }
        }
        Ok(layer)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::invalid("config", format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse_str(&text)
    }

    /// Fields of `top` win over fields of `self`.
    pub fn overlay(self, top: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            n: top.n.or(self.n),
            gamma: top.gamma.or(self.gamma),
            mass: top.mass.or(self.mass),
            rmax: top.rmax.or(self.rmax),
            nodes: top.nodes.or(self.nodes),
            profile: top.profile.or(self.profile),
            velocity_profile: top.velocity_profile.or(self.velocity_profile),
            width: top.width.or(self.width),
            t: top.t.or(self.t),
            t_max: top.t_max.or(self.t_max),
            steps: top.steps.or(self.steps),
            out: top.out.or(self.out),
            seed: top.seed.or(self.seed),
        }
    }
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: u32,
    pub gamma: f64,
    pub mass: f64,
    pub rmax: f64,
    pub nodes: usize,
    pub profile: ProfileKind,
    pub velocity_profile: ProfileKind,
    pub width: f64,
    pub t: f64,
    pub t_max: f64,
    pub steps: Option<usize>,
    pub out: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 1,
            gamma: 0.0,
            mass: 1.0,
            rmax: DEFAULT_RMAX,
            nodes: DEFAULT_NODES,
            profile: ProfileKind::Gaussian,
            velocity_profile: ProfileKind::Zero,
            width: 1.0,
            t: 1.0,
            t_max: 200.0,
            steps: None,
            out: OutputFormat::Csv,
            seed: 42,
        }
    }
}

impl RunConfig {
    /// Defaults, overridden by `layer`, then validated.
    pub fn resolve(layer: ConfigLayer) -> Result<Self> {
        let d = RunConfig::default();
        let cfg = RunConfig {
            n: layer.n.unwrap_or(d.n),
            gamma: layer.gamma.unwrap_or(d.gamma),
            mass: layer.mass.unwrap_or(d.mass),
            rmax: layer.rmax.unwrap_or(d.rmax),
            nodes: layer.nodes.unwrap_or(d.nodes),
            profile: layer.profile.unwrap_or(d.profile),
            velocity_profile: layer.velocity_profile.unwrap_or(d.velocity_profile),
            width: layer.width.unwrap_or(d.width),
            t: layer.t.unwrap_or(d.t),
            t_max: layer.t_max.unwrap_or(d.t_max),
            steps: layer.steps.or(d.steps),
            out: layer.out.unwrap_or(d.out),
            seed: layer.seed.unwrap_or(d.seed),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::invalid("n", "must be at least 1"));
        }
        if !self.gamma.is_finite() || self.gamma < 0.0 {
            return Err(Error::invalid("gamma", format!("must be >= 0, got {}", self.gamma)));
        }
        if !self.mass.is_finite() || self.mass < 0.0 {
            return Err(Error::invalid("mass", format!("must be >= 0, got {}", self.mass)));
        }
        if !self.rmax.is_finite() || self.rmax <= 0.0 {
            return Err(Error::invalid("rmax", format!("must be > 0, got {}", self.rmax)));
        }
        if self.nodes < MIN_NODES {
            return Err(Error::invalid("nodes", format!("must be >= {MIN_NODES}")));
        }
        if !self.width.is_finite() || self.width <= 0.0 {
            return Err(Error::invalid("width", "must be > 0"));
        }
        if !self.t.is_finite() {
            return Err(Error::invalid("t", "must be finite"));
        }
        if !self.t_max.is_finite() || self.t_max <= 0.0 {
            return Err(Error::invalid("t-max", "must be > 0"));
        }
        if self.steps == Some(0) {
            return Err(Error::invalid("steps", "must be >= 1"));
        }
        Ok(())
    }

    /// Mass, rejecting zero for commands that need a massive problem.
    pub fn positive_mass(&self) -> Result<f64> {
        if self.mass > 0.0 {
            Ok(self.mass)
        } else {
            Err(Error::invalid("mass", "this command needs mass > 0"))
        }
    }
}
