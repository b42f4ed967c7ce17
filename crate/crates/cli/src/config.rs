//! Scenario configuration: JSON in, canonical JSON out, field-level
//! validation with errors that name the offending field.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use entx::{BathModel, XStateParams};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BathKind {
    Independent,
    Common,
    Squeezed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Csv,
    Jsonl,
    Svg,
}

/// Initial state: either Bell-diagonal coordinates or raw X parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialState {
    Bell([f64; 3]),
    X([f64; 4]),
}

impl InitialState {
    pub fn to_x_params(&self) -> Result<XStateParams, ConfigError> {
        let x = match *self {
            InitialState::Bell([c1, c2, c3]) => XStateParams::new(c1, c2, c3, 0.0),
            InitialState::X([a, b, c, d]) => XStateParams::new(a, b, c, d),
        };
        x.map_err(|e| ConfigError(format!("initial: {e}")))
    }
}

/// One scenario; a single JSON document, with CLI flags overriding fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub bath: BathKind,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub n: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<f64>,
    pub initial: InitialState,
    pub t_end: f64,
    pub dt: f64,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

fn default_gamma() -> f64 {
    1.0
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Csv]
}

impl ScenarioConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ConfigError(e.to_string()))
    }

    /// Canonical serialization; parsing it back yields an identical value
    /// and identical bytes.
    pub fn canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn bath_model(&self) -> Result<BathModel, ConfigError> {
        let named = |name: &'static str, r: entx::Result<BathModel>| {
            r.map_err(|e| ConfigError(format!("{name}: {e}")))
        };
        match self.bath {
            BathKind::Independent => {
                named("gamma/n", BathModel::independent_thermal(self.gamma, self.n))
            }
            BathKind::Common => named("gamma/n", BathModel::common_thermal(self.gamma, self.n)),
            BathKind::Squeezed => named(
                "gamma/n/psi",
                BathModel::common_squeezed(self.gamma, self.n, self.psi.unwrap_or(0.0)),
            ),
        }
    }

    /// Field-level validation beyond what the parser enforces.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(ConfigError(format!("gamma: must be positive, got {}", self.gamma)));
        }
        if !(self.n >= 0.0) || !self.n.is_finite() {
            return Err(ConfigError(format!("n: must be non-negative, got {}", self.n)));
        }
        if let Some(psi) = self.psi {
            if !psi.is_finite() {
                return Err(ConfigError(format!("psi: must be finite, got {psi}")));
            }
            if self.bath != BathKind::Squeezed {
                return Err(ConfigError("psi: only valid for bath = squeezed".into()));
            }
            // The X-family trajectory integrator needs sin(psi) = 0.
            if self.bath == BathKind::Squeezed && psi.sin().abs() > 1e-9 && self.n > 0.0 {
                return Err(ConfigError(format!(
                    "psi: trajectory runs need psi = 0 (mod pi), got {psi}"
                )));
            }
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(ConfigError(format!("t_end: must be non-negative, got {}", self.t_end)));
        }
        if self.t_end > 0.0 && (!(self.dt > 0.0) || self.dt > self.t_end) {
            return Err(ConfigError(format!(
                "dt: must satisfy 0 < dt <= t_end, got {}",
                self.dt
            )));
        }
        if let Some(alpha) = self.alpha {
            if !alpha.is_finite() || alpha.abs() > entx::filtering::ALPHA_MAX {
                return Err(ConfigError(format!(
                    "alpha: |alpha| must be finite and <= {}, got {alpha}",
                    entx::filtering::ALPHA_MAX
                )));
            }
        }
        if self.outputs.is_empty() {
            return Err(ConfigError("outputs: at least one of csv, jsonl, svg".into()));
        }
        self.initial.to_x_params()?;
        self.bath_model()?;
        Ok(())
    }
}
