//! Sensitivity scenarios: uniform air-temperature uplifts and streamflow
//! reductions applied to the site inputs.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fleet::{FleetRegistry, SiteHydrology, SiteWeather};
use crate::series::DailySeries;

/// Water-temperature rise per °C of air-temperature uplift.
pub const DEFAULT_WATER_TEMP_RESPONSE: f64 = 0.6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    /// Added to every dry-bulb value, °C.
    #[serde(rename = "air_temp_delta_c", default)]
    pub air_temp_delta: f64,
    /// Multiplies every streamflow value.
    #[serde(default = "unit_scale")]
    pub streamflow_scale: f64,
    /// Water-temperature change per °C of air uplift.
    #[serde(default = "default_response")]
    pub water_temp_response: f64,
    /// Water-temperature change per unit of `ln(streamflow_scale)`.
    #[serde(default)]
    pub water_temp_flow_response: f64,
}

fn unit_scale() -> f64 {
    1.0
}

fn default_response() -> f64 {
    DEFAULT_WATER_TEMP_RESPONSE
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("scenario name must not be empty")]
    EmptyName,
    #[error("scenario `{name}`: streamflow_scale {scale} outside (0, 1.5]")]
    ScaleOutOfRange { name: String, scale: f64 },
    #[error("scenario `{name}`: {field} must be finite")]
    NonFinite { name: String, field: &'static str },
    #[error("duplicate scenario name `{0}`")]
    DuplicateName(String),
    #[error("cannot read scenario file: {0}")]
    Io(String),
    #[error("invalid scenario file: {0}")]
    Parse(String),
    #[error("scenario `{name}` produced an invalid series: {message}")]
    Series { name: String, message: String },
}

impl Scenario {
    pub fn new(name: impl Into<String>, air_temp_delta: f64, streamflow_scale: f64) -> Self {
        Scenario {
            name: name.into(),
            air_temp_delta,
            streamflow_scale,
            water_temp_response: DEFAULT_WATER_TEMP_RESPONSE,
            water_temp_flow_response: 0.0,
        }
    }

    pub fn baseline() -> Self {
        Scenario::new("baseline", 0.0, 1.0)
    }

    pub fn with_water_temp_response(mut self, response: f64) -> Self {
        self.water_temp_response = response;
        self
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.name.trim().is_empty() {
            return Err(ScenarioError::EmptyName);
        }
        for (field, v) in [
            ("air_temp_delta_c", self.air_temp_delta),
            ("water_temp_response", self.water_temp_response),
            ("water_temp_flow_response", self.water_temp_flow_response),
        ] {
            if !v.is_finite() {
                return Err(ScenarioError::NonFinite { name: self.name.clone(), field });
            }
        }
        if !(self.streamflow_scale > 0.0 && self.streamflow_scale <= 1.5) {
            return Err(ScenarioError::ScaleOutOfRange {
                name: self.name.clone(),
                scale: self.streamflow_scale,
            });
        }
        Ok(())
    }

    /// Change applied to every water-temperature value, °C.
    pub fn water_temp_shift(&self) -> f64 {
        self.water_temp_response * self.air_temp_delta
            + self.water_temp_flow_response * self.streamflow_scale.ln()
    }

    fn series_error(&self, e: impl ToString) -> ScenarioError {
        ScenarioError::Series { name: self.name.clone(), message: e.to_string() }
    }
}

/// Baseline, three air-temperature uplifts (C1..C3) and three streamflow
/// reductions (R10..R30).
pub fn standard_scenarios() -> Vec<Scenario> {
    vec![
        Scenario::baseline(),
        Scenario::new("C1", 1.0, 1.0),
        Scenario::new("C2", 2.0, 1.0),
        Scenario::new("C3", 3.0, 1.0),
        Scenario::new("R10", 0.0, 0.9),
        Scenario::new("R20", 0.0, 0.8),
        Scenario::new("R30", 0.0, 0.7),
    ]
}

fn shifted(series: &DailySeries, delta: f64) -> Result<DailySeries, crate::series::SeriesError> {
    if delta == 0.0 {
        return Ok(series.clone());
    }
    series.map(|v| v + delta)
}

fn scaled(series: &DailySeries, factor: f64) -> Result<DailySeries, crate::series::SeriesError> {
    if factor == 1.0 {
        return Ok(series.clone());
    }
    series.map(|v| v * factor)
}

pub fn apply_to_weather(weather: &SiteWeather, s: &Scenario) -> Result<SiteWeather, ScenarioError> {
    let mut out = weather.clone();
    if let Some(t) = &weather.dry_bulb {
        out.dry_bulb = Some(shifted(t, s.air_temp_delta).map_err(|e| s.series_error(e))?);
    }
    Ok(out)
}

pub fn apply_to_hydrology(hydro: &SiteHydrology, s: &Scenario) -> Result<SiteHydrology, ScenarioError> {
    Ok(SiteHydrology {
        site_id: hydro.site_id.clone(),
        streamflow: scaled(&hydro.streamflow, s.streamflow_scale).map_err(|e| s.series_error(e))?,
        water_temperature: shifted(&hydro.water_temperature, s.water_temp_shift())
            .map_err(|e| s.series_error(e))?,
    })
}

/// Perturbed copies of one site's inputs; the arguments are left untouched.
pub fn apply_scenario(
    weather: &SiteWeather,
    hydro: &SiteHydrology,
    s: &Scenario,
) -> Result<(SiteWeather, SiteHydrology), ScenarioError> {
    s.validate()?;
    Ok((apply_to_weather(weather, s)?, apply_to_hydrology(hydro, s)?))
}

/// A copy of `reg` with every site perturbed.
pub fn apply_to_registry(reg: &FleetRegistry, s: &Scenario) -> Result<FleetRegistry, ScenarioError> {
    s.validate()?;
    let weather = reg
        .weather
        .iter()
        .map(|(k, w)| Ok((k.clone(), apply_to_weather(w, s)?)))
        .collect::<Result<_, ScenarioError>>()?;
    let hydrology = reg
        .hydrology
        .iter()
        .map(|(k, h)| Ok((k.clone(), apply_to_hydrology(h, s)?)))
        .collect::<Result<_, ScenarioError>>()?;
    Ok(FleetRegistry {
        generators: reg.generators.clone(),
        hydrology,
        weather,
        wind_curves: reg.wind_curves.clone(),
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    scenario: Vec<Scenario>,
}

/// Parses a TOML document holding `[[scenario]]` tables.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>, ScenarioError> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    let mut names = std::collections::BTreeSet::new();
    for s in &file.scenario {
        s.validate()?;
        if !names.insert(s.name.clone()) {
            return Err(ScenarioError::DuplicateName(s.name.clone()));
        }
    }
    Ok(file.scenario)
}

pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>, ScenarioError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))?;
    parse_scenarios(&text)
}
