//! JSON run configuration for the `evolve` and `compare` subcommands.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use beamspec::{
    BeamGeometry, InitialState, MaterialParams, Profile, QuadratureSettings, ResolvedCase,
};

#[derive(Debug)]
pub enum ConfigError {
    Io(std::io::Error),
    /// Parse failure with the offending field path and line/column.
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    Invalid(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(e) => write!(f, "cannot read config: {e}"),
            ConfigError::Schema {
                path,
                line,
                column,
                message,
            } => write!(
                f,
                "config schema violation at field `{path}` (line {line}, column {column}): {message}"
            ),
            ConfigError::Invalid(msg) => write!(f, "invalid config: {msg}"),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Support case token: aa, ab, ac, bb, bc, cc, add1, add2, add3, or the
    /// mirrored names ba, ca, cb.
    pub support: String,
    pub length: f64,
    pub material: MaterialSpec,
    pub n_modes: usize,
    pub initial: InitialSpec,
    pub time: TimeSpec,
    pub grid: GridSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<f64>,
}

impl MaterialSpec {
    pub fn resolve(&self) -> Result<MaterialParams, ConfigError> {
        let quad = match (self.e, self.i, self.rho, self.area) {
            (Some(e), Some(i), Some(rho), Some(area)) => Some((e, i, rho, area)),
            (None, None, None, None) => None,
            _ => {
                return Err(ConfigError::Invalid(
                    "material: give either `sigma`, or all of `e`, `i`, `rho`, `area`".into(),
                ))
            }
        };
        let params = match (self.sigma, quad) {
            (Some(s), None) => MaterialParams::from_sigma(s),
            (None, Some((e, i, rho, area))) => MaterialParams::from_properties(e, i, rho, area),
            (Some(s), Some((e, i, rho, area))) => MaterialParams::from_both(s, e, i, rho, area),
            (None, None) => {
                return Err(ConfigError::Invalid(
                    "material: missing `sigma` or the property quadruple".into(),
                ))
            }
        };
        params.map_err(|e| ConfigError::Invalid(format!("material: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    pub u0: Profile,
    pub v0: Profile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    pub t0: f64,
    pub t1: f64,
    pub frames: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSpec {
    pub panels: usize,
    pub nodes_per_panel: usize,
}

/// Everything a run needs, validated and resolved from the raw config.
pub struct ResolvedConfig {
    pub case: ResolvedCase,
    pub geometry: BeamGeometry,
    pub material: MaterialParams,
    pub n_modes: usize,
    pub initial: InitialState,
    pub times: Vec<f64>,
    pub grid: Vec<f64>,
    pub quadrature: QuadratureSettings,
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(ConfigError::Io)?;
        Self::from_str(&text)
    }

    pub fn from_str(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|err| {
            let inner = err.inner();
            ConfigError::Schema {
                path: err.path().to_string(),
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })
    }

    pub fn resolve(&self) -> Result<ResolvedConfig, ConfigError> {
        let case = beamspec::parse_case(&self.support)
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let geometry =
            BeamGeometry::new(self.length).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let material = self.material.resolve()?;
        if self.n_modes == 0 || self.n_modes > beamspec::MAX_MODE_COUNT {
            return Err(ConfigError::Invalid(format!(
                "n_modes must lie in 1..={}, got {}",
                beamspec::MAX_MODE_COUNT,
                self.n_modes
            )));
        }
        if self.time.frames < 1 {
            return Err(ConfigError::Invalid("time.frames must be >= 1".into()));
        }
        if self.time.t1 < self.time.t0 {
            return Err(ConfigError::Invalid("time.t1 must be >= time.t0".into()));
        }
        if self.grid.points < 2 {
            return Err(ConfigError::Invalid("grid.points must be >= 2".into()));
        }
        let times = if self.time.frames == 1 {
            vec![self.time.t0]
        } else {
            let dt = (self.time.t1 - self.time.t0) / (self.time.frames - 1) as f64;
            (0..self.time.frames)
                .map(|i| self.time.t0 + i as f64 * dt)
                .collect()
        };
        let n = self.grid.points;
        let grid = (0..n)
            .map(|i| self.length * i as f64 / (n - 1) as f64)
            .collect();
        let quadrature = match &self.quadrature {
            Some(q) => QuadratureSettings::new(q.panels, q.nodes_per_panel)
                .map_err(|e| ConfigError::Invalid(e.to_string()))?,
            None => QuadratureSettings::for_mode_count(self.n_modes),
        };
        Ok(ResolvedConfig {
            case,
            geometry,
            material,
            n_modes: self.n_modes,
            initial: InitialState {
                u0: self.initial.u0.clone(),
                v0: self.initial.v0.clone(),
            },
            times,
            grid,
            quadrature,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{
        "support": "ab",
        "length": 1.0,
        "material": {"sigma": 1.0},
        "n_modes": 6,
        "initial": {
            "u0": {"type": "pluck", "position": 0.5, "height": 1.0},
            "v0": {"type": "zero"}
        },
        "time": {"t0": 0.0, "t1": 1.0, "frames": 5},
        "grid": {"points": 41}
    }"#;

    #[test]
    fn round_trip_is_idempotent() {
        let parsed = RunConfig::from_str(EXAMPLE).unwrap();
        let text = serde_json::to_string_pretty(&parsed).unwrap();
        let reparsed = RunConfig::from_str(&text).unwrap();
        assert_eq!(parsed, reparsed);
        let text2 = serde_json::to_string_pretty(&reparsed).unwrap();
        assert_eq!(text, text2);
    }

    #[test]
    fn resolve_produces_grid_and_times() {
        let r = RunConfig::from_str(EXAMPLE).unwrap().resolve().unwrap();
        assert_eq!(r.times.len(), 5);
        assert_eq!(r.grid.len(), 41);
        assert_eq!(r.grid[0], 0.0);
        assert_eq!(*r.grid.last().unwrap(), 1.0);
        assert!(!r.case.reflected);
    }

    #[test]
    fn schema_violations_carry_field_paths() {
        let bad = EXAMPLE.replace("\"points\": 41", "\"points\": \"many\"");
        match RunConfig::from_str(&bad) {
            Err(ConfigError::Schema { path, line, .. }) => {
                assert!(path.contains("grid"), "path was {path}");
                assert!(line > 0);
            }
            other => panic!("expected schema error, got {other:?}"),
        }
        let unknown = EXAMPLE.replace("\"length\"", "\"lenght\"");
        assert!(RunConfig::from_str(&unknown).is_err());
    }

    #[test]
    fn material_requires_one_complete_form() {
        let no_material = EXAMPLE.replace("{\"sigma\": 1.0}", "{}");
        let cfg = RunConfig::from_str(&no_material).unwrap();
        assert!(cfg.resolve().is_err());
        let partial = EXAMPLE.replace("{\"sigma\": 1.0}", "{\"e\": 1.0, \"i\": 1.0}");
        assert!(RunConfig::from_str(&partial).unwrap().resolve().is_err());
        let full = EXAMPLE.replace(
            "{\"sigma\": 1.0}",
            "{\"e\": 2.0, \"i\": 3.0, \"rho\": 1.5, \"area\": 4.0}",
        );
        assert!(RunConfig::from_str(&full).unwrap().resolve().is_ok());
    }

    #[test]
    fn bounds_are_enforced() {
        let too_many = EXAMPLE.replace("\"n_modes\": 6", "\"n_modes\": 26");
        assert!(RunConfig::from_str(&too_many).unwrap().resolve().is_err());
        let one_point = EXAMPLE.replace("\"points\": 41", "\"points\": 1");
        assert!(RunConfig::from_str(&one_point).unwrap().resolve().is_err());
        let no_frames = EXAMPLE.replace("\"frames\": 5", "\"frames\": 0");
        assert!(RunConfig::from_str(&no_frames).unwrap().resolve().is_err());
    }
}
