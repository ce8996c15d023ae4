use std::path::Path;

use serde::{Deserialize, Serialize};

use super::presets;
use super::HarnessError;
use crate::coherent::{choose_cutoff, DEFAULT_TAIL_TOL};
use crate::observables::DEFAULT_THETA_GRID;
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Inversion,
    PhaseDistribution,
    PhaseVariance,
    All,
}

impl Mode {
    pub fn wants_inversion(self) -> bool {
        matches!(self, Mode::Inversion | Mode::All)
    }

    pub fn wants_phase(self) -> bool {
        matches!(self, Mode::PhaseDistribution | Mode::All)
    }

    pub fn wants_variance(self) -> bool {
        matches!(self, Mode::PhaseVariance | Mode::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Flags {
    pub time_independent: bool,
    /// Keep the coherent amplitudes as they are instead of rescaling the
    /// represented part of the state to unit norm.
    pub literal_paper_normalization: bool,
    /// Also integrate every manifold numerically and report the deviation.
    pub oracle_compare: bool,
}

/// A fully resolved, validated scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub params: ModelParams,
    pub mode: Mode,
    pub tau_max: f64,
    pub tau_step: f64,
    pub theta_grid: usize,
    pub flags: Flags,
}

impl Scenario {
    pub fn time_grid(&self) -> Vec<f64> {
        crate::dynamics::uniform_grid(self.tau_max, self.tau_step)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Config(format!("scenario `{}`: {msg}", self.name)));
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return bad("name must be a non-empty identifier".into());
        }
        if !(self.tau_max > 0.0 && self.tau_max.is_finite()) {
            return bad(format!("tau_max must be positive, got {}", self.tau_max));
        }
        if !(self.tau_step > 0.0 && self.tau_step.is_finite()) {
            return bad(format!("tau_step must be positive, got {}", self.tau_step));
        }
        if self.theta_grid < 64 {
            return bad(format!("theta_grid must be at least 64, got {}", self.theta_grid));
        }
        self.params
            .validate()
            .map_err(|e| HarnessError::Config(format!("scenario `{}`: {e}", self.name)))
    }
}

/// One section of a configuration file. Every field is optional; unset
/// fields fall back to the named `preset` (if any) and then to defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub preset: Option<String>,
    pub description: Option<String>,
    pub mode: Option<Mode>,
    pub n_bar: Option<f64>,
    pub k: Option<u32>,
    pub mu: Option<f64>,
    pub chi: Option<f64>,
    pub delta1: Option<f64>,
    pub delta3: Option<f64>,
    pub delta4: Option<f64>,
    pub lambda1: Option<f64>,
    pub lambda2: Option<f64>,
    pub lambda3: Option<f64>,
    pub lambda4: Option<f64>,
    pub cutoff: Option<usize>,
    pub tau_max: Option<f64>,
    pub tau_step: Option<f64>,
    pub theta_grid: Option<usize>,
    pub time_independent: Option<bool>,
    pub literal_paper_normalization: Option<bool>,
    pub oracle_compare: Option<bool>,
}

macro_rules! layer {
    ($base:ident, $top:ident; $($f:ident),*) => {
        ScenarioSpec { preset: None, $($f: $top.$f.clone().or($base.$f.clone())),* }
    };
}

impl ScenarioSpec {
    /// Fields of `self` take precedence over those of `base`.
    pub fn over(&self, base: &ScenarioSpec) -> ScenarioSpec {
        let top = self;
        layer!(base, top; description, mode, n_bar, k, mu, chi, delta1, delta3, delta4,
            lambda1, lambda2, lambda3, lambda4, cutoff, tau_max, tau_step, theta_grid,
            time_independent, literal_paper_normalization, oracle_compare)
    }

    /// Apply command-line overrides, expand the `preset` base and produce a
    /// validated scenario.
    pub fn resolve(&self, name: &str, overrides: &Overrides) -> Result<Scenario, HarnessError> {
        let base = match &self.preset {
            Some(p) => presets::find(p)
                .ok_or_else(|| HarnessError::Config(format!("scenario `{name}`: unknown preset `{p}`")))?
                .spec,
            None => ScenarioSpec::default(),
        };
        let s = overrides.as_spec().over(&self.over(&base));
        let n_bar = s
            .n_bar
            .ok_or_else(|| HarnessError::Config(format!("scenario `{name}`: n_bar is required")))?;
        let k = s.k.unwrap_or(1);
        let time_independent = s.time_independent.unwrap_or(false);
        let literal = s.literal_paper_normalization.unwrap_or(false);
        let cutoff = match s.cutoff {
            Some(c) => c,
            None if n_bar.is_finite() && n_bar >= 0.0 && k >= 1 => choose_cutoff(n_bar, DEFAULT_TAIL_TOL, k),
            None => 0,
        };
        let params = ModelParams {
            lambda_1: s.lambda1.unwrap_or(1.0),
            lambda_2: s.lambda2.unwrap_or(1.0),
            lambda_3: s.lambda3.unwrap_or(1.0),
            lambda_4: s.lambda4.unwrap_or(1.0),
            mu: s.mu.unwrap_or(0.0),
            delta_cap_1: s.delta1.unwrap_or(0.0),
            delta_cap_3: s.delta3.unwrap_or(0.0),
            delta_cap_4: s.delta4.unwrap_or(0.0),
            chi: s.chi.unwrap_or(0.0),
            k,
            n_bar,
            cutoff,
            time_independent,
            renormalize: !literal,
        };
        let scenario = Scenario {
            name: name.to_string(),
            description: s.description.unwrap_or_default(),
            params,
            mode: s.mode.unwrap_or_default(),
            tau_max: s.tau_max.unwrap_or(50.0),
            tau_step: s.tau_step.unwrap_or(0.02),
            theta_grid: s.theta_grid.unwrap_or(DEFAULT_THETA_GRID),
            flags: Flags {
                time_independent,
                literal_paper_normalization: literal,
                oracle_compare: s.oracle_compare.unwrap_or(false),
            },
        };
        scenario.validate()?;
        Ok(scenario)
    }
}

/// Command-line overrides applied on top of every scenario of a batch.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub n_bar: Option<f64>,
    pub mu: Option<f64>,
    pub chi: Option<f64>,
    pub k: Option<u32>,
    pub delta1: Option<f64>,
    pub delta3: Option<f64>,
    pub delta4: Option<f64>,
    pub tau_max: Option<f64>,
    pub tau_step: Option<f64>,
    pub cutoff: Option<usize>,
    pub oracle_compare: Option<bool>,
}

impl Overrides {
    fn as_spec(&self) -> ScenarioSpec {
        ScenarioSpec {
            n_bar: self.n_bar,
            mu: self.mu,
            chi: self.chi,
            k: self.k,
            delta1: self.delta1,
            delta3: self.delta3,
            delta4: self.delta4,
            tau_max: self.tau_max,
            tau_step: self.tau_step,
            cutoff: self.cutoff,
            oracle_compare: self.oracle_compare,
            ..Default::default()
        }
    }

    /// A new n̄ or k invalidates a cutoff written for the old values.
    fn resets_cutoff(&self) -> bool {
        self.cutoff.is_none() && (self.n_bar.is_some() || self.k.is_some())
    }
}

/// Parse a batch file: one `[name]` section per scenario, in file order.
pub fn parse_config(text: &str, overrides: &Overrides) -> Result<Vec<Scenario>, HarnessError> {
    let table: toml::Table =
        toml::from_str(text).map_err(|e| HarnessError::Config(format!("invalid configuration: {e}")))?;
    if table.is_empty() {
        return Err(HarnessError::Config("configuration defines no scenarios".into()));
    }
    table
        .into_iter()
        .map(|(name, value)| {
            let mut spec: ScenarioSpec = value
                .try_into()
                .map_err(|e| HarnessError::Config(format!("scenario `{name}`: {e}")))?;
            if overrides.resets_cutoff() {
                spec.cutoff = None;
            }
            spec.resolve(&name, overrides)
        })
        .collect()
}

pub fn load_config(path: &Path, overrides: &Overrides) -> Result<Vec<Scenario>, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text, overrides)
}

/// Resolve a bundled preset with overrides.
pub fn preset_scenario(name: &str, overrides: &Overrides) -> Result<Scenario, HarnessError> {
    let preset = presets::find(name).ok_or_else(|| HarnessError::Config(format!("unknown preset `{name}`")))?;
    let mut spec = preset.spec;
    if overrides.resets_cutoff() {
        spec.cutoff = None;
    }
    spec.resolve(name, overrides)
}
