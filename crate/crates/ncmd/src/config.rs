//! Run configuration: a TOML file and/or command-line flags, flags winning.
//!
//! ```toml
//! family = "coupon"
//! regime = "weak"
//! n = [50, 200, 1000]          # or "5e1,2e2,1e3"
//! x_grid = "-2:6:101"          # or x = [..] for LD/MD
//!
//! [mc]
//! trials = 20000
//! seed = 1
//! threads = 4
//!
//! [tolerances]
//! weak = 0.05
//!
//! [output]
//! prefix = "out/coupon-weak"
//! plot = true
//! ```

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use ncmd_core::diagnostics::{Regime, Tolerances};
use ncmd_core::{Error, FamilySpec, ScalingFamily};
use serde::{Deserialize, Serialize};

use crate::formats::parse_scaling;

/// A number list written either as a TOML array or as comma-separated text.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ListSpec {
    Numbers(Vec<f64>),
    Text(String),
}

impl ListSpec {
    fn to_text(&self) -> String {
        match self {
            ListSpec::Text(s) => s.clone(),
            ListSpec::Numbers(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct McSection {
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TolSection {
    pub ld_rel: Option<f64>,
    pub md_rel: Option<f64>,
    pub weak: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub prefix: Option<PathBuf>,
    pub plot: Option<bool>,
}

/// The raw, unresolved configuration (file contents or flags).
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<String>,
    pub regime: Option<String>,
    pub scaling: Option<String>,
    pub n: Option<ListSpec>,
    pub x: Option<ListSpec>,
    pub x_grid: Option<String>,
    #[serde(default)]
    pub mc: McSection,
    #[serde(default)]
    pub tolerances: TolSection,
    #[serde(default)]
    pub output: OutputSection,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    /// Values set in `over` replace those in `self`.
    pub fn overlay(mut self, over: FileConfig) -> FileConfig {
        macro_rules! take {
            ($($f:ident).+) => {
                if over.$($f).+.is_some() {
                    self.$($f).+ = over.$($f).+;
                }
            };
        }
        take!(family);
        take!(regime);
        take!(scaling);
        take!(n);
        take!(x);
        take!(x_grid);
        take!(mc.trials);
        take!(mc.seed);
        take!(mc.threads);
        take!(tolerances.ld_rel);
        take!(tolerances.md_rel);
        take!(tolerances.weak);
        take!(output.prefix);
        take!(output.plot);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub k: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        (0..self.k)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.k - 1) as f64)
            .collect()
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.k)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum XSpec {
    List(Vec<f64>),
    Grid(GridSpec),
    /// Central 99% of the limit law, 101 points (WEAK only).
    Default,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McSettings {
    pub trials: u64,
    pub seed: u64,
    pub threads: usize,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: FamilySpec,
    pub regime: Regime,
    pub scaling: Option<ScalingFamily>,
    pub n_list: Vec<u64>,
    pub x: XSpec,
    pub mc: Option<McSettings>,
    pub tolerances: Tolerances,
    pub prefix: Option<PathBuf>,
    pub plot: bool,
}

fn parse_error(token: &str, reason: &str) -> anyhow::Error {
    anyhow!(Error::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    })
}

pub fn parse_regime(s: &str) -> anyhow::Result<Regime> {
    match s.trim().to_ascii_lowercase().as_str() {
        "ld" => Ok(Regime::Ld),
        "md" => Ok(Regime::Md),
        "weak" => Ok(Regime::Weak),
        _ => Err(parse_error(s, "regime must be ld, md or weak")),
    }
}

/// Comma-separated sample sizes; scientific notation is fine if integral.
pub fn parse_n_list(s: &str) -> anyhow::Result<Vec<u64>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let n = match tok.parse::<u64>() {
            Ok(n) => n,
            Err(_) => {
                let v: f64 = tok.parse().map_err(|_| parse_error(tok, "not a number"))?;
                if !(v >= 1.0 && v.fract() == 0.0 && v < 1.8e19) {
                    return Err(parse_error(tok, "sample sizes must be positive integers"));
                }
                v as u64
            }
        };
        if n == 0 {
            return Err(parse_error(tok, "sample sizes must be positive integers"));
        }
        out.push(n);
    }
    if out.is_empty() {
        bail!(parse_error(s, "empty n list"));
    }
    Ok(out)
}

pub fn parse_x_list(s: &str) -> anyhow::Result<Vec<f64>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: f64 = tok.parse().map_err(|_| parse_error(tok, "not a number"))?;
        if !v.is_finite() {
            return Err(parse_error(tok, "x values must be finite"));
        }
        out.push(v);
    }
    if out.is_empty() {
        bail!(parse_error(s, "empty x list"));
    }
    Ok(out)
}

/// `lo:hi:k` with lo < hi and k ≥ 2.
pub fn parse_grid(s: &str) -> anyhow::Result<GridSpec> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        bail!(parse_error(s, "expected lo:hi:k"));
    }
    let lo: f64 = parts[0].parse().map_err(|_| parse_error(parts[0], "not a number"))?;
    let hi: f64 = parts[1].parse().map_err(|_| parse_error(parts[1], "not a number"))?;
    let k: usize = parts[2].parse().map_err(|_| parse_error(parts[2], "not a point count"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && k >= 2) {
        bail!(parse_error(s, "need finite lo < hi and k >= 2"));
    }
    Ok(GridSpec { lo, hi, k })
}

impl RunConfig {
    pub fn resolve(c: &FileConfig) -> anyhow::Result<RunConfig> {
        let family: FamilySpec = c
            .family
            .as_deref()
            .ok_or_else(|| anyhow!("no family given (--family or `family` in the config)"))?
            .parse()?;
        let regime = parse_regime(c.regime.as_deref().ok_or_else(|| anyhow!("no regime given (ld, md or weak)"))?)?;
        let scaling = match (&c.scaling, regime) {
            (Some(s), Regime::Md) => Some(parse_scaling(s)?),
            (None, Regime::Md) => bail!("md runs need a scaling (--scaling pow:<gamma> | logpow:<gamma> | table:<path>)"),
            (Some(_), _) => bail!("a scaling only applies to md runs"),
            (None, _) => None,
        };
        let n_list = parse_n_list(&c.n.as_ref().ok_or_else(|| anyhow!("no sample sizes given (--n)"))?.to_text())?;
        let x = match (&c.x, &c.x_grid) {
            (Some(_), Some(_)) => bail!("give either an x list or an x grid, not both"),
            (Some(l), None) => XSpec::List(parse_x_list(&l.to_text())?),
            (None, Some(g)) => XSpec::Grid(parse_grid(g)?),
            (None, None) if regime == Regime::Weak => XSpec::Default,
            (None, None) => bail!("no x values given (--x)"),
        };
        let mc = match c.mc.trials {
            Some(0) => bail!("trials must be at least 1"),
            Some(trials) => Some(McSettings {
                trials,
                seed: c.mc.seed.unwrap_or(0),
                threads: c.mc.threads.unwrap_or_else(crate::mc::default_threads).max(1),
            }),
            None => None,
        };
        let d = Tolerances::default();
        let tolerances = Tolerances {
            ld_rel: c.tolerances.ld_rel.unwrap_or(d.ld_rel),
            md_rel: c.tolerances.md_rel.unwrap_or(d.md_rel),
            weak: c.tolerances.weak.unwrap_or(d.weak),
        };
        for (name, v) in [("ld_rel", tolerances.ld_rel), ("md_rel", tolerances.md_rel), ("weak", tolerances.weak)] {
            if !(v > 0.0 && v.is_finite()) {
                bail!(parse_error(&v.to_string(), &format!("tolerance {name} must be positive")));
            }
        }
        Ok(RunConfig {
            family,
            regime,
            scaling,
            n_list,
            x,
            mc,
            tolerances,
            prefix: c.output.prefix.clone(),
            plot: c.output.plot.unwrap_or(false),
        })
    }

    /// Canonical configuration text; resolving it gives back `self`
    /// (table scalings re-read their file).
    pub fn render(&self) -> String {
        let fc = FileConfig {
            family: Some(self.family.to_string()),
            regime: Some(self.regime.as_str().to_ascii_lowercase()),
            scaling: self.scaling.as_ref().map(|s| s.to_string()),
            n: Some(ListSpec::Text(
                self.n_list.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","),
            )),
            x: match &self.x {
                XSpec::List(v) => Some(ListSpec::Numbers(v.clone())),
                _ => None,
            },
            x_grid: match &self.x {
                XSpec::Grid(g) => Some(g.to_string()),
                _ => None,
            },
            mc: McSection {
                trials: self.mc.as_ref().map(|m| m.trials),
                seed: self.mc.as_ref().map(|m| m.seed),
                threads: self.mc.as_ref().map(|m| m.threads),
            },
            tolerances: TolSection {
                ld_rel: Some(self.tolerances.ld_rel),
                md_rel: Some(self.tolerances.md_rel),
                weak: Some(self.tolerances.weak),
            },
            output: OutputSection {
                prefix: self.prefix.clone(),
                plot: Some(self.plot),
            },
        };
        toml::to_string(&fc).expect("configuration is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_lists_accept_scientific_notation() {
        assert_eq!(parse_n_list("1e2, 1000,1e4").unwrap(), vec![100, 1000, 10_000]);
        let e = parse_n_list("1e2,1.5e0").unwrap_err().to_string();
        assert!(e.contains("1.5e0"), "{e}");
        assert!(parse_n_list("0").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("-2:6:41").unwrap();
        assert_eq!(g.points().len(), 41);
        assert_eq!(g.points()[40], 6.0);
        assert!(parse_grid("1:1:5").is_err());
    }

    #[test]
    fn render_round_trips() {
        let fc = FileConfig {
            family: Some("replacement:exponential:1,exponential:2,t=1,beta=0.4".into()),
            regime: Some("MD".into()),
            scaling: Some("pow:0.5".into()),
            n: Some(ListSpec::Text("1e2,1e4".into())),
            x: Some(ListSpec::Numbers(vec![-1.0, 0.5])),
            mc: McSection {
                trials: Some(100),
                seed: Some(3),
                threads: Some(2),
            },
            ..Default::default()
        };
        let rc = RunConfig::resolve(&fc).unwrap();
        let text = rc.render();
        let back = RunConfig::resolve(&toml::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, rc);
        assert_eq!(back.render(), text);
    }

    #[test]
    fn overlay_prefers_flags() {
        let file = FileConfig {
            family: Some("coupon".into()),
            n: Some(ListSpec::Numbers(vec![10.0])),
            ..Default::default()
        };
        let flags = FileConfig {
            n: Some(ListSpec::Text("20".into())),
            ..Default::default()
        };
        let m = file.overlay(flags);
        assert_eq!(m.family.as_deref(), Some("coupon"));
        assert_eq!(m.n, Some(ListSpec::Text("20".into())));
    }
}
