use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Jost,
    BSeries,
    Sz2,
    Sz2Inverse,
    MFunction,
    Strip,
    Eigen,
    Extract,
    Poles,
    GTilde,
    VerifyThm15,
    VerifyThm13,
    VerifyThm16,
    VerifyThm17,
    VerifyThm41,
}

impl Task {
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    pub fn parse(s: &str) -> Option<Task> {
        Task::from_str(s, false).ok()
    }

    /// Library module doing the work, for error reports.
    pub fn module(self) -> &'static str {
        match self {
            Task::Jost | Task::BSeries => "jacobi_gc",
            Task::Sz2 | Task::Sz2Inverse => "opuc",
            Task::MFunction | Task::Strip | Task::Eigen | Task::VerifyThm41 => "spectral_m",
            Task::Extract | Task::Poles => "asymptotics",
            Task::GTilde | Task::VerifyThm16 | Task::VerifyThm17 => "pole_algebra",
            Task::VerifyThm15 | Task::VerifyThm13 => "annulus_check",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Numeric and output settings of a scenario. Every field has a default;
/// a config file may set any of them and command-line flags override.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub name: Option<String>,
    pub task: Option<Task>,
    /// Fixture name, path to a JSON document, or an inline document.
    pub input: Option<Value>,
    /// Working tolerance of the computations.
    pub tol: f64,
    /// Modulus cutoff for pole sets and continuations.
    pub cutoff: f64,
    /// Number of coefficients (Taylor degree, sequence length).
    pub n: usize,
    pub precision_bits: u32,
    /// Stripping level for `strip`.
    pub level: usize,
    /// Relative tolerance when matching poles and generated products.
    pub match_tol: f64,
    /// Threshold for functional identities (continuation, stripping, round trip).
    pub identity_tol: f64,
    /// Threshold for the u / D⁻¹ bridge.
    pub bridge_tol: f64,
    /// Remainder radius demanded by `extract` (defaults to the cutoff).
    pub r_target: Option<f64>,
    pub n_points: usize,
    pub n_radii: usize,
    pub out_dir: Option<PathBuf>,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            name: None,
            task: None,
            input: None,
            tol: 1e-12,
            cutoff: 8.0,
            n: 200,
            precision_bits: 53,
            level: 1,
            match_tol: 1e-6,
            identity_tol: 1e-9,
            bridge_tol: 1e-10,
            r_target: None,
            n_points: 4096,
            n_radii: 8,
            out_dir: None,
            format: Format::Json,
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {e}"))
    }

    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("tol", self.tol),
            ("match_tol", self.match_tol),
            ("identity_tol", self.identity_tol),
            ("bridge_tol", self.bridge_tol),
        ];
        for (k, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{k} must be positive, got {v}"));
            }
        }
        if !(self.cutoff > 1.0 && self.cutoff.is_finite()) {
            return Err(format!("cutoff must exceed 1, got {}", self.cutoff));
        }
        if let Some(r) = self.r_target {
            if !(r > 1.0) {
                return Err(format!("r_target must exceed 1, got {r}"));
            }
        }
        if self.n < 8 {
            return Err(format!("n must be at least 8, got {}", self.n));
        }
        if self.n_points < 256 || !self.n_points.is_power_of_two() {
            return Err(format!("n_points must be a power of two ≥ 256, got {}", self.n_points));
        }
        if self.n_radii == 0 {
            return Err("n_radii must be positive".into());
        }
        if self.precision_bits == 0 || self.precision_bits > 128 {
            return Err(format!("precision_bits must lie in 1..=128, got {}", self.precision_bits));
        }
        Ok(())
    }

    /// Scalar type the bit count selects: f32 up to 24, f64 up to 53,
    /// double-double (106) beyond.
    pub fn scalar(&self) -> &'static str {
        match self.precision_bits {
            0..=24 => "f32",
            25..=53 => "f64",
            _ => "dd",
        }
    }
}
