//! Recirculating (evaporative tower) steam units.
//!
//! Makeup withdrawal at nameplate follows from the condenser heat load, the
//! evaporated share of it, and the blowdown needed to hold the cycles of
//! concentration. Available makeup (capped by the usable share of
//! streamflow) fixes the circulating flow through the humidity pickup of the
//! tower air, and the tower heat balance converts that flow back into
//! electric output.

use crate::constants::{LATENT_HEAT_VAPORIZATION, WATER_DENSITY, WATER_SPECIFIC_HEAT};
use crate::psychro::AirState;
use crate::DerateError;

/// Smallest humidity pickup used as a divisor, kg/kg.
pub const HUMIDITY_GAP_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecircParams {
    pub installed_capacity: f64,
    pub net_efficiency: f64,
    pub heat_sink_fraction: f64,
    pub cycles_of_concentration: f64,
    /// Circulating water to dry air mass-flow ratio.
    pub water_air_ratio: f64,
    /// Cold-water temperature above ambient wet-bulb, °C.
    pub tower_approach: f64,
    /// Share of the condenser load rejected as sensible heat.
    pub sensible_fraction: f64,
    pub stream_fraction: f64,
    /// MJ/kg.
    pub latent_heat: f64,
}

impl RecircParams {
    pub const DEFAULT_LATENT_HEAT: f64 = LATENT_HEAT_VAPORIZATION;

    pub fn heat_rejection_ratio(&self) -> f64 {
        (1.0 - self.net_efficiency - self.heat_sink_fraction) / self.net_efficiency
    }
}

/// Tower water flows, m³/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaterLosses {
    pub evaporation: f64,
    pub blowdown: f64,
    pub makeup: f64,
    pub circulating: f64,
}

/// Makeup withdrawal needed at nameplate output, m³/s.
pub fn rated_makeup(p: &RecircParams) -> f64 {
    let n = p.cycles_of_concentration;
    n / (n - 1.0) * p.installed_capacity * p.heat_rejection_ratio() * (1.0 - p.sensible_fraction)
        / (WATER_DENSITY * p.latent_heat)
}

fn floored_gap(air: &AirState) -> f64 {
    air.humidity_gain().max(HUMIDITY_GAP_FLOOR)
}

/// Circulating flow and loss split for the makeup the river can supply.
pub fn circulating_flow(p: &RecircParams, flow: f64, air: &AirState) -> Result<WaterLosses, DerateError> {
    if flow < 0.0 {
        return Err(DerateError::NegativeFlow(flow));
    }
    let withdrawal = rated_makeup(p).min(p.stream_fraction * flow);
    let gap = floored_gap(air);
    let sigma = p.water_air_ratio;
    let n = p.cycles_of_concentration;
    let circulating = withdrawal * sigma / gap;
    Ok(WaterLosses {
        evaporation: circulating * (n - 1.0) / (sigma * n) * gap,
        blowdown: circulating / (sigma * n) * gap,
        makeup: circulating / sigma * gap,
        circulating,
    })
}

/// Intermediate quantities of one capacity evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecircOutcome {
    pub losses: WaterLosses,
    /// Tower cold-water temperature, °C.
    pub cold_water_temp: f64,
    /// Heat removed per kg of dry air, MJ/kg.
    pub enthalpy_bracket: f64,
    /// Capacity before the `[0, P_n]` clamp, MW.
    pub unclamped: f64,
    /// Usable capacity, MW.
    pub usable: f64,
}

/// Full evaluation, keeping the pre-clamp value.
///
/// The floored humidity gap only enters as a divisor; the enthalpy bracket
/// uses the actual humidity ratios, so saturated air yields zero.
pub fn rc_evaluate(
    p: &RecircParams,
    flow: f64,
    water_temp: f64,
    air: &AirState,
) -> Result<RecircOutcome, DerateError> {
    let losses = circulating_flow(p, flow, air)?;
    let gain = air.humidity_gain();
    let cold_water_temp = air.wet_bulb + p.tower_approach;
    let bracket = air.enthalpy_out + cold_water_temp * WATER_SPECIFIC_HEAT * gain / p.cycles_of_concentration
        - water_temp * WATER_SPECIFIC_HEAT * gain
        - air.enthalpy_in;
    let unclamped =
        WATER_DENSITY * losses.circulating * bracket / (p.water_air_ratio * p.heat_rejection_ratio());
    Ok(RecircOutcome {
        losses,
        cold_water_temp,
        enthalpy_bracket: bracket,
        unclamped,
        usable: unclamped.clamp(0.0, p.installed_capacity),
    })
}

/// Usable capacity in MW, within `[0, installed_capacity]`.
pub fn rc_usable_capacity(
    p: &RecircParams,
    flow: f64,
    water_temp: f64,
    air: &AirState,
) -> Result<f64, DerateError> {
    rc_evaluate(p, flow, water_temp, air).map(|o| o.usable)
}
