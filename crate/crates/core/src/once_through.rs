//! Once-through cooled steam units: usable capacity limited by the share of
//! streamflow that may be withdrawn and by the permitted temperature rise of
//! the returned water.

use crate::constants::{WATER_DENSITY, WATER_SPECIFIC_HEAT};
use crate::DerateError;

/// Whether the discharge-temperature permit caps the condenser rise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DischargeLimit {
    /// Rise is `min(Tl_max - T_w, ΔTl_max)`, floored at zero.
    #[default]
    Regulated,
    /// Rise is always `ΔTl_max`; the river temperature never binds.
    Unregulated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnceThroughParams {
    /// Nameplate capacity, MW.
    pub installed_capacity: f64,
    pub net_efficiency: f64,
    /// Fraction of fuel heat lost to stack and other sinks.
    pub heat_sink_fraction: f64,
    /// Highest permitted discharge temperature, °C.
    pub max_discharge_temp: f64,
    /// Highest permitted rise across the condenser, °C.
    pub max_condenser_rise: f64,
    /// Fraction of streamflow available for cooling.
    pub stream_fraction: f64,
    pub limit: DischargeLimit,
}

/// Cooling-water withdrawal at nameplate output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Withdrawal {
    Finite(f64),
    /// No temperature headroom: no finite withdrawal can carry the heat.
    Unbounded,
}

impl OnceThroughParams {
    /// Condenser heat per unit of electric output.
    pub fn heat_rejection_ratio(&self) -> f64 {
        (1.0 - self.net_efficiency - self.heat_sink_fraction) / self.net_efficiency
    }

    /// Permitted temperature rise of the cooling water, °C.
    pub fn temperature_headroom(&self, water_temp: f64) -> f64 {
        match self.limit {
            DischargeLimit::Regulated => {
                (self.max_discharge_temp - water_temp).min(self.max_condenser_rise).max(0.0)
            }
            DischargeLimit::Unregulated => self.max_condenser_rise,
        }
    }
}

/// Withdrawal needed to run at nameplate with intake temperature `water_temp`, m³/s.
pub fn ot_rated_withdrawal(p: &OnceThroughParams, water_temp: f64) -> Withdrawal {
    let headroom = p.temperature_headroom(water_temp);
    if headroom <= 0.0 {
        return Withdrawal::Unbounded;
    }
    Withdrawal::Finite(
        p.installed_capacity * p.heat_rejection_ratio() / (WATER_DENSITY * WATER_SPECIFIC_HEAT * headroom),
    )
}

/// Usable capacity in MW, within `[0, installed_capacity]`.
pub fn ot_usable_capacity(p: &OnceThroughParams, flow: f64, water_temp: f64) -> Result<f64, DerateError> {
    if flow < 0.0 {
        return Err(DerateError::NegativeFlow(flow));
    }
    let headroom = p.temperature_headroom(water_temp);
    let rated = match ot_rated_withdrawal(p, water_temp) {
        Withdrawal::Finite(w) => w,
        Withdrawal::Unbounded => return Ok(0.0),
    };
    let available = p.stream_fraction * flow;
    if available >= rated {
        // the rated withdrawal carries exactly the nameplate heat load
        return Ok(p.installed_capacity);
    }
    let power = available * WATER_DENSITY * WATER_SPECIFIC_HEAT * headroom / p.heat_rejection_ratio();
    Ok(power.clamp(0.0, p.installed_capacity))
}
