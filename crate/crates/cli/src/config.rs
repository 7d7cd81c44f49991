use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use krfusion::fermionic::KrSpec;
use krfusion::liealg::{build_cartan, CartanData, RootVector};
use krfusion::linalg::Q;
use krfusion::pbw::Schedule;

use crate::error::{CliError, CliResult};

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "KRFUSION_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Fermionic,
    Module,
    Pbw,
    Dual,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::Fermionic, Engine::Module, Engine::Pbw, Engine::Dual];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Fermionic => "fermionic",
            Engine::Module => "module",
            Engine::Pbw => "pbw",
            Engine::Dual => "dual",
        }
    }
}

impl FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s.trim())
            .ok_or_else(|| {
                format!("unknown engine `{s}` (expected fermionic, module, pbw or dual)")
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    /// `P(μ) > −Σ|μ^(i)|` over nonzero tuples.
    Pmu,
    /// Dominance surjections imply monotone fermionic multiplicities.
    Dominance,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    Mult,
    FusionChar,
    Verify {
        #[serde(default = "all_engines")]
        engines: Vec<Engine>,
    },
    Scan {
        kind: ScanKind,
        max: u32,
    },
    DualDim,
}

fn all_engines() -> Vec<Engine> {
    Engine::ALL.to_vec()
}

/// A complete job description; the CLI flags and `run <file>` both produce one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub lie_type: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<KrSpec>,
    pub command: Command,
    /// Restricts the per-γ commands to one `γ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<u32>>,
    /// Evaluation points for `fusion-char`, as rationals like `1/3`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pbw_start_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pbw_max_degree: Option<u32>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub timings: bool,
}

/// A validated job, ready for dispatch.
#[derive(Debug, Clone)]
pub struct Job {
    pub config: JobConfig,
    pub cartan: CartanData,
    pub spec: Option<KrSpec>,
    pub gamma: Option<RootVector>,
    pub points: Option<Vec<Q>>,
    pub cache_dir: Option<PathBuf>,
}

impl JobConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("job config: {e}")))
    }

    pub fn validate(&self) -> CliResult<Job> {
        let cartan = build_cartan(&self.lie_type)?;
        let needs_spec = !matches!(self.command, Command::Scan { .. });
        let spec = match (&self.spec, needs_spec) {
            (Some(s), true) => {
                s.validate(&cartan)?;
                Some(s.clone())
            }
            (None, true) => return Err(CliError::Usage("a spec is required".into())),
            (Some(_), false) => return Err(CliError::Usage("scan takes no spec".into())),
            (None, false) => None,
        };
        if let Command::Verify { engines } = &self.command {
            if engines.is_empty() {
                return Err(CliError::Usage("no engines selected".into()));
            }
        }
        let gamma = match &self.gamma {
            None => None,
            Some(g) => {
                if g.len() != cartan.rank() {
                    return Err(CliError::Usage(format!(
                        "γ needs {} coefficients, got {}",
                        cartan.rank(),
                        g.len()
                    )));
                }
                let g = RootVector(g.clone());
                let lambda = spec
                    .as_ref()
                    .map(|s| s.lambda(cartan.rank()))
                    .ok_or_else(|| CliError::Usage("γ given without a spec".into()))?;
                if !(&lambda - &cartan.rootvec_to_weight(&g)).is_dominant() {
                    return Err(CliError::Usage(format!(
                        "λ − γ is not dominant for γ = {g}"
                    )));
                }
                Some(g)
            }
        };
        let points = match &self.points {
            None => None,
            Some(p) => {
                if !matches!(self.command, Command::FusionChar) {
                    return Err(CliError::Usage("points apply to fusion-char only".into()));
                }
                let qs = p
                    .iter()
                    .map(|s| {
                        Q::from_str(s.trim())
                            .map_err(|_| CliError::Usage(format!("bad point `{s}`")))
                    })
                    .collect::<CliResult<Vec<Q>>>()?;
                let factors = spec.as_ref().map_or(0, |s| s.factors().len());
                if qs.len() != factors {
                    return Err(CliError::Usage(format!(
                        "{} points for {factors} factors",
                        qs.len()
                    )));
                }
                Some(qs)
            }
        };
        if let (Some(a), Some(b)) = (self.pbw_start_degree, self.pbw_max_degree) {
            if a > b {
                return Err(CliError::Usage(
                    "pbw start degree exceeds the maximum".into(),
                ));
            }
        }
        if self.jobs == Some(0) {
            return Err(CliError::Usage("jobs must be positive".into()));
        }
        let cache_dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        Ok(Job {
            config: self.clone(),
            cartan,
            spec,
            gamma,
            points,
            cache_dir,
        })
    }
}

impl Job {
    /// The PBW degree schedule for `γ`, with any overrides applied.
    pub fn schedule(&self, gamma: &RootVector) -> Option<Schedule> {
        let (start, max) = (self.config.pbw_start_degree, self.config.pbw_max_degree);
        if start.is_none() && max.is_none() {
            return None;
        }
        let default = Schedule::default_for(self.spec.as_ref()?, gamma);
        Some(Schedule {
            start: start.unwrap_or(default.start),
            max: max.unwrap_or(default.max).max(start.unwrap_or(0)),
        })
    }
}
