//! Generator records, site time series and the registry tying them together.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::ct::CtParams;
use crate::hydro::HydroParams;
use crate::once_through::{DischargeLimit, OnceThroughParams};
use crate::pv::{EfficiencyCoefficients, PvParams, THERMAL_COEFFICIENT_RANGE};
use crate::recirc::RecircParams;
use crate::series::DailySeries;
use crate::wind::{WindParams, WindPowerCurve, HUB_HEIGHT_RANGE};

/// Values applied when an optional parameter cell is blank.
pub mod defaults {
    use super::Fuel;

    pub const STREAM_FRACTION: f64 = 0.30;
    pub const MAX_DISCHARGE_TEMP: f64 = 32.0;
    pub const CYCLES_OF_CONCENTRATION: f64 = 6.0;
    pub const WATER_AIR_RATIO: f64 = 0.8;
    pub const HYDRO_EFFICIENCY: f64 = 0.90;
    pub const PV_THERMAL_COEFFICIENT: f64 = crate::pv::DEFAULT_THERMAL_COEFFICIENT;
    pub const TOWER_APPROACH: f64 = 5.0;
    pub const SENSIBLE_FRACTION: f64 = 0.15;

    /// Share of fuel heat leaving through the stack and other sinks.
    pub fn heat_sink_fraction(fuel: Fuel) -> f64 {
        match fuel {
            Fuel::NaturalGas => 0.20,
            Fuel::Coal | Fuel::Nuclear | Fuel::Other | Fuel::None => 0.12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseEnumError {
    pub kind: &'static str,
    pub value: String,
}

impl fmt::Display for ParseEnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown {} `{}`", self.kind, self.value)
    }
}

impl std::error::Error for ParseEnumError {}

macro_rules! token_enum {
    ($name:ident, $kind:literal, { $($variant:ident => $token:literal),+ $(,)? }) => {
        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn token(self) -> &'static str {
                match self { $($name::$variant => $token),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.token())
            }
        }

        impl FromStr for $name {
            type Err = ParseEnumError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let s = s.trim();
                $name::ALL
                    .iter()
                    .copied()
                    .find(|v| v.token().eq_ignore_ascii_case(s))
                    .ok_or_else(|| ParseEnumError { kind: $kind, value: s.to_string() })
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Technology {
    Hydro,
    SteamOnceThrough,
    SteamRecirculating,
    CombustionTurbine,
    SolarPV,
    Wind,
    Other,
}

token_enum!(Technology, "technology", {
    Hydro => "Hydro",
    SteamOnceThrough => "SteamOnceThrough",
    SteamRecirculating => "SteamRecirculating",
    CombustionTurbine => "CombustionTurbine",
    SolarPV => "SolarPV",
    Wind => "Wind",
    Other => "Other",
});

impl Technology {
    pub fn is_steam(self) -> bool {
        matches!(self, Technology::SteamOnceThrough | Technology::SteamRecirculating)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaterSource {
    FreshSurface,
    Ocean,
    Ground,
    Other,
    None,
}

token_enum!(WaterSource, "water source", {
    FreshSurface => "FreshSurface",
    Ocean => "Ocean",
    Ground => "Ground",
    Other => "Other",
    None => "None",
});

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fuel {
    Coal,
    NaturalGas,
    Nuclear,
    Other,
    None,
}

token_enum!(Fuel, "fuel", {
    Coal => "Coal",
    NaturalGas => "NaturalGas",
    Nuclear => "Nuclear",
    Other => "Other",
    None => "None",
});

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydroSpec {
    pub head: f64,
    pub efficiency: f64,
}

/// Steam-cycle and cooling parameters, shared by both cooling types.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalSpec {
    pub net_efficiency: f64,
    pub heat_sink_fraction: f64,
    pub max_discharge_temp: f64,
    /// Required for once-through units only.
    pub max_condenser_rise: Option<f64>,
    pub cycles_of_concentration: f64,
    pub water_air_ratio: f64,
    pub tower_approach: f64,
    pub sensible_fraction: f64,
    pub stream_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvSpec {
    pub thermal_coefficient: f64,
    pub coefficients: EfficiencyCoefficients,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindSpec {
    pub hub_height: f64,
    pub curve_id: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorRecord {
    pub id: String,
    pub name: String,
    pub technology: Technology,
    /// Nameplate capacity, MW.
    pub installed_capacity: f64,
    pub site_id: String,
    pub water_source: WaterSource,
    pub fuel: Fuel,
    pub hydro: Option<HydroSpec>,
    pub thermal: Option<ThermalSpec>,
    pub pv: Option<PvSpec>,
    pub wind: Option<WindSpec>,
}

/// A failed invariant on one field of a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldViolation {
    pub field: &'static str,
    pub reason: String,
}

impl FieldViolation {
    fn new(field: &'static str, reason: impl Into<String>) -> Self {
        FieldViolation { field, reason: reason.into() }
    }
}

fn in_unit_interval(v: f64) -> bool {
    (0.0..=1.0).contains(&v)
}

impl GeneratorRecord {
    /// Every invariant this record breaks; empty when valid.
    pub fn violations(&self) -> Vec<FieldViolation> {
        let mut out = Vec::new();
        if self.id.trim().is_empty() {
            out.push(FieldViolation::new("id", "must not be empty"));
        }
        if !(self.installed_capacity > 0.0 && self.installed_capacity.is_finite()) {
            out.push(FieldViolation::new("installed_capacity_mw", "must be positive"));
        }
        match self.technology {
            Technology::Hydro => match &self.hydro {
                None => out.push(FieldViolation::new("head_m", "required for Hydro")),
                Some(h) => {
                    if !(h.head > 0.0 && h.head.is_finite()) {
                        out.push(FieldViolation::new("head_m", "must be positive"));
                    }
                    if !(h.efficiency > 0.0 && h.efficiency <= 1.0) {
                        out.push(FieldViolation::new("hydro_efficiency", "must be in (0, 1]"));
                    }
                }
            },
            Technology::SteamOnceThrough | Technology::SteamRecirculating => match &self.thermal {
                None => out.push(FieldViolation::new("net_efficiency", "required for steam units")),
                Some(t) => self.thermal_violations(t, &mut out),
            },
            Technology::SolarPV => match &self.pv {
                None => out.push(FieldViolation::new("c_t", "required for SolarPV")),
                Some(pv) => {
                    let (lo, hi) = THERMAL_COEFFICIENT_RANGE;
                    if !(lo..=hi).contains(&pv.thermal_coefficient) {
                        out.push(FieldViolation::new("c_t", format!("must be in [{lo}, {hi}]")));
                    }
                    if !pv.coefficients.is_finite() {
                        out.push(FieldViolation::new("pv_coeffs", "must be finite"));
                    }
                }
            },
            Technology::Wind => match &self.wind {
                None => out.push(FieldViolation::new("hub_height_m", "required for Wind")),
                Some(w) => {
                    let (lo, hi) = HUB_HEIGHT_RANGE;
                    if !(lo..=hi).contains(&w.hub_height) {
                        out.push(FieldViolation::new("hub_height_m", format!("must be in [{lo}, {hi}]")));
                    }
                    if w.curve_id.trim().is_empty() {
                        out.push(FieldViolation::new("curve_id", "required for Wind"));
                    }
                }
            },
            Technology::CombustionTurbine | Technology::Other => {}
        }
        out
    }

    fn thermal_violations(&self, t: &ThermalSpec, out: &mut Vec<FieldViolation>) {
        if !(t.net_efficiency > 0.0 && t.net_efficiency <= 1.0) {
            out.push(FieldViolation::new("net_efficiency", "must be in (0, 1]"));
        }
        if !in_unit_interval(t.heat_sink_fraction) {
            out.push(FieldViolation::new("k_os", "must be in [0, 1]"));
        }
        if !(t.net_efficiency + t.heat_sink_fraction < 1.0) {
            out.push(FieldViolation::new("k_os", "net_efficiency + k_os must be below 1"));
        }
        if !in_unit_interval(t.stream_fraction) || t.stream_fraction == 0.0 {
            out.push(FieldViolation::new("gamma", "must be in (0, 1]"));
        }
        if !t.max_discharge_temp.is_finite() {
            out.push(FieldViolation::new("tl_max_c", "must be finite"));
        }
        match (self.technology, t.max_condenser_rise) {
            (Technology::SteamOnceThrough, None) => {
                out.push(FieldViolation::new("dtl_max_c", "required for SteamOnceThrough"))
            }
            (_, Some(rise)) if !(rise > 0.0 && rise.is_finite()) => {
                out.push(FieldViolation::new("dtl_max_c", "must be positive"))
            }
            _ => {}
        }
        if !(t.cycles_of_concentration > 1.0 && t.cycles_of_concentration.is_finite()) {
            out.push(FieldViolation::new("n_cc", "must exceed 1"));
        }
        if !(0.5..=1.5).contains(&t.water_air_ratio) {
            out.push(FieldViolation::new("sigma", "must be in [0.5, 1.5]"));
        }
        if !(t.tower_approach >= 0.0 && t.tower_approach.is_finite()) {
            out.push(FieldViolation::new("t_app_c", "must be non-negative"));
        }
        if !in_unit_interval(t.sensible_fraction) {
            out.push(FieldViolation::new("k_sens", "must be in [0, 1]"));
        }
    }

    pub fn is_at_risk(&self) -> bool {
        classify_at_risk(self)
    }

    pub fn hydro_params(&self) -> Option<HydroParams> {
        self.hydro.map(|h| HydroParams {
            head: h.head,
            efficiency: h.efficiency,
            installed_capacity: self.installed_capacity,
        })
    }

    pub fn once_through_params(&self, limit: DischargeLimit) -> Option<OnceThroughParams> {
        let t = self.thermal?;
        Some(OnceThroughParams {
            installed_capacity: self.installed_capacity,
            net_efficiency: t.net_efficiency,
            heat_sink_fraction: t.heat_sink_fraction,
            max_discharge_temp: t.max_discharge_temp,
            max_condenser_rise: t.max_condenser_rise?,
            stream_fraction: t.stream_fraction,
            limit,
        })
    }

    pub fn recirc_params(&self) -> Option<RecircParams> {
        let t = self.thermal?;
        Some(RecircParams {
            installed_capacity: self.installed_capacity,
            net_efficiency: t.net_efficiency,
            heat_sink_fraction: t.heat_sink_fraction,
            cycles_of_concentration: t.cycles_of_concentration,
            water_air_ratio: t.water_air_ratio,
            tower_approach: t.tower_approach,
            sensible_fraction: t.sensible_fraction,
            stream_fraction: t.stream_fraction,
            latent_heat: RecircParams::DEFAULT_LATENT_HEAT,
        })
    }

    pub fn ct_params(&self) -> CtParams {
        CtParams::new(self.installed_capacity)
    }

    pub fn pv_params(&self) -> Option<PvParams> {
        self.pv.map(|pv| PvParams {
            installed_capacity: self.installed_capacity,
            thermal_coefficient: pv.thermal_coefficient,
            coefficients: pv.coefficients,
        })
    }

    pub fn wind_params(&self) -> Option<WindParams> {
        self.wind.as_ref().map(|w| WindParams {
            installed_capacity: self.installed_capacity,
            hub_height: w.hub_height,
            curve_id: w.curve_id.clone(),
        })
    }
}

/// Whether drought or heat can reduce this technology's output at a site
/// with the given cooling-water source.
pub fn is_at_risk(technology: Technology, water_source: WaterSource) -> bool {
    match technology {
        Technology::SteamOnceThrough | Technology::SteamRecirculating => {
            water_source == WaterSource::FreshSurface
        }
        Technology::Hydro | Technology::CombustionTurbine | Technology::SolarPV | Technology::Wind => true,
        Technology::Other => false,
    }
}

pub fn classify_at_risk(g: &GeneratorRecord) -> bool {
    is_at_risk(g.technology, g.water_source)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HydroChannel {
    Streamflow,
    WaterTemperature,
}

impl fmt::Display for HydroChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HydroChannel::Streamflow => "streamflow_m3s",
            HydroChannel::WaterTemperature => "water_temp_c",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeatherChannel {
    DryBulb,
    RelativeHumidity,
    Pressure,
    Irradiance,
    Wind2m,
    Wind10m,
    Wind50m,
}

impl WeatherChannel {
    pub const ALL: [WeatherChannel; 7] = [
        WeatherChannel::DryBulb,
        WeatherChannel::RelativeHumidity,
        WeatherChannel::Pressure,
        WeatherChannel::Irradiance,
        WeatherChannel::Wind2m,
        WeatherChannel::Wind10m,
        WeatherChannel::Wind50m,
    ];

    pub fn column(self) -> &'static str {
        match self {
            WeatherChannel::DryBulb => "dry_bulb_c",
            WeatherChannel::RelativeHumidity => "rh_pct",
            WeatherChannel::Pressure => "pressure_kpa",
            WeatherChannel::Irradiance => "irradiance_wm2",
            WeatherChannel::Wind2m => "wind2_ms",
            WeatherChannel::Wind10m => "wind10_ms",
            WeatherChannel::Wind50m => "wind50_ms",
        }
    }

    pub fn unit(self) -> crate::series::Unit {
        use crate::series::Unit;
        match self {
            WeatherChannel::DryBulb => Unit::DegreesCelsius,
            WeatherChannel::RelativeHumidity => Unit::Percent,
            WeatherChannel::Pressure => Unit::Kilopascal,
            WeatherChannel::Irradiance => Unit::WattsPerSquareMetre,
            WeatherChannel::Wind2m | WeatherChannel::Wind10m | WeatherChannel::Wind50m => {
                Unit::MetresPerSecond
            }
        }
    }
}

impl fmt::Display for WeatherChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SiteHydrology {
    pub site_id: String,
    pub streamflow: DailySeries,
    pub water_temperature: DailySeries,
}

impl SiteHydrology {
    pub fn channel(&self, channel: HydroChannel) -> &DailySeries {
        match channel {
            HydroChannel::Streamflow => &self.streamflow,
            HydroChannel::WaterTemperature => &self.water_temperature,
        }
    }
}

/// Daily weather at a site. A channel is `None` when the site has no data
/// for it at all.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteWeather {
    pub site_id: String,
    pub dry_bulb: Option<DailySeries>,
    pub relative_humidity: Option<DailySeries>,
    pub pressure: Option<DailySeries>,
    pub irradiance: Option<DailySeries>,
    pub wind_2m: Option<DailySeries>,
    pub wind_10m: Option<DailySeries>,
    pub wind_50m: Option<DailySeries>,
}

impl SiteWeather {
    pub fn channel(&self, channel: WeatherChannel) -> Option<&DailySeries> {
        match channel {
            WeatherChannel::DryBulb => self.dry_bulb.as_ref(),
            WeatherChannel::RelativeHumidity => self.relative_humidity.as_ref(),
            WeatherChannel::Pressure => self.pressure.as_ref(),
            WeatherChannel::Irradiance => self.irradiance.as_ref(),
            WeatherChannel::Wind2m => self.wind_2m.as_ref(),
            WeatherChannel::Wind10m => self.wind_10m.as_ref(),
            WeatherChannel::Wind50m => self.wind_50m.as_ref(),
        }
    }

    pub fn channel_mut(&mut self, channel: WeatherChannel) -> &mut Option<DailySeries> {
        match channel {
            WeatherChannel::DryBulb => &mut self.dry_bulb,
            WeatherChannel::RelativeHumidity => &mut self.relative_humidity,
            WeatherChannel::Pressure => &mut self.pressure,
            WeatherChannel::Irradiance => &mut self.irradiance,
            WeatherChannel::Wind2m => &mut self.wind_2m,
            WeatherChannel::Wind10m => &mut self.wind_10m,
            WeatherChannel::Wind50m => &mut self.wind_50m,
        }
    }
}

/// Generators plus the environmental data they reference. Immutable once
/// built; share it freely across threads.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FleetRegistry {
    pub generators: BTreeMap<String, GeneratorRecord>,
    pub hydrology: BTreeMap<String, SiteHydrology>,
    pub weather: BTreeMap<String, SiteWeather>,
    pub wind_curves: BTreeMap<String, WindPowerCurve>,
}

impl FleetRegistry {
    pub fn generator(&self, id: &str) -> Option<&GeneratorRecord> {
        self.generators.get(id)
    }

    pub fn site_known(&self, site_id: &str) -> bool {
        self.hydrology.contains_key(site_id) || self.weather.contains_key(site_id)
    }
}
