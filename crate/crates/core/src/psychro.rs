//! Moist-air properties for the evaporative-tower model.
//!
//! Humidity ratios are kg water per kg dry air and enthalpies are MJ per kg
//! dry air. Saturation pressure uses the Magnus form; the wet-bulb
//! temperature solves the psychrometer equation by bisection.

use thiserror::Error;

/// Ratio of molar masses of water and dry air, kg/kg.
pub const MOLAR_MASS_RATIO: f64 = 0.621_990_7;

/// Psychrometer constant, 1/°C.
pub const PSYCHROMETER_CONSTANT: f64 = 0.000_662;

/// Valid temperature range of the saturation-pressure fit, °C.
pub const TEMPERATURE_RANGE: (f64, f64) = (-50.0, 60.0);

const MAGNUS_A: f64 = 0.610_94;
const MAGNUS_B: f64 = 17.625;
const MAGNUS_C: f64 = 243.04;

/// Bracket width at which the wet-bulb bisection stops, °C.
pub const WET_BULB_TOLERANCE: f64 = 1e-9;
pub const WET_BULB_MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PsychroError {
    #[error("temperature {0} °C outside the supported range [-50, 60]")]
    OutOfRange(f64),
    #[error("relative humidity {0}% outside [0, 100]")]
    InvalidHumidity(f64),
    #[error("pressure must be positive, got {0} kPa")]
    InvalidPressure(f64),
    #[error("saturation pressure {saturation} kPa reaches total pressure {total} kPa")]
    SaturationExceedsPressure { saturation: f64, total: f64 },
    #[error("wet-bulb solve did not converge for T_d={dry_bulb}, RH={rh}, P={pressure}")]
    NoConvergence { dry_bulb: f64, rh: f64, pressure: f64 },
}

/// Saturation vapor pressure over water, kPa.
pub fn saturation_vapor_pressure(t: f64) -> Result<f64, PsychroError> {
    if !(TEMPERATURE_RANGE.0..=TEMPERATURE_RANGE.1).contains(&t) {
        return Err(PsychroError::OutOfRange(t));
    }
    Ok(MAGNUS_A * (MAGNUS_B * t / (t + MAGNUS_C)).exp())
}

fn check_inputs(dry_bulb: f64, rh: f64, pressure: f64) -> Result<(), PsychroError> {
    if !(0.0..=100.0).contains(&rh) {
        return Err(PsychroError::InvalidHumidity(rh));
    }
    if !(pressure > 0.0) {
        return Err(PsychroError::InvalidPressure(pressure));
    }
    if !(TEMPERATURE_RANGE.0..=TEMPERATURE_RANGE.1).contains(&dry_bulb) {
        return Err(PsychroError::OutOfRange(dry_bulb));
    }
    Ok(())
}

/// Actual vapor pressure of ambient air, kPa.
pub fn vapor_pressure(dry_bulb: f64, rh: f64) -> Result<f64, PsychroError> {
    Ok(saturation_vapor_pressure(dry_bulb)? * rh / 100.0)
}

/// Residual of the psychrometer equation at candidate wet-bulb `t`:
/// `t - T_d + (P_ws(t) - P_w) / (K P)`. Zero at the wet-bulb temperature.
pub fn wet_bulb_residual(t: f64, dry_bulb: f64, vapor: f64, pressure: f64) -> Result<f64, PsychroError> {
    Ok(t - dry_bulb + (saturation_vapor_pressure(t)? - vapor) / (PSYCHROMETER_CONSTANT * pressure))
}

/// Wet-bulb temperature in °C, never above `dry_bulb`.
pub fn wet_bulb_temperature(dry_bulb: f64, rh: f64, pressure: f64) -> Result<f64, PsychroError> {
    check_inputs(dry_bulb, rh, pressure)?;
    let vapor = vapor_pressure(dry_bulb, rh)?;
    let residual = |t: f64| wet_bulb_residual(t, dry_bulb, vapor, pressure);

    let (mut lo, mut hi) = (TEMPERATURE_RANGE.0, dry_bulb);
    let f_hi = residual(hi)?;
    if f_hi <= 0.0 {
        // saturated air
        return Ok(dry_bulb);
    }
    if residual(lo)? > 0.0 {
        return Err(PsychroError::NoConvergence { dry_bulb, rh, pressure });
    }
    for _ in 0..WET_BULB_MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= WET_BULB_TOLERANCE || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f = residual(mid)?;
        if f == 0.0 {
            return Ok(mid);
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(PsychroError::NoConvergence { dry_bulb, rh, pressure })
}

/// Humidity ratio of air with vapor partial pressure `vapor`, kg/kg.
pub fn humidity_ratio(vapor: f64, pressure: f64) -> f64 {
    MOLAR_MASS_RATIO * vapor / (pressure - vapor)
}

/// Moist-air enthalpy at `dry_bulb` and humidity ratio `omega`, MJ/kg.
pub fn moist_air_enthalpy(dry_bulb: f64, omega: f64) -> f64 {
    dry_bulb * (1.01 + 0.00189 * omega) + 2.5 * omega
}

/// Ambient air entering a cooling tower and the saturated air leaving it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirState {
    pub dry_bulb: f64,
    pub wet_bulb: f64,
    pub pressure: f64,
    pub vapor_pressure: f64,
    pub sat_vapor_pressure: f64,
    pub humidity_ratio_in: f64,
    pub humidity_ratio_out: f64,
    pub enthalpy_in: f64,
    pub enthalpy_out: f64,
}

impl AirState {
    /// Moisture picked up per kg of dry air, kg/kg.
    pub fn humidity_gain(&self) -> f64 {
        self.humidity_ratio_out - self.humidity_ratio_in
    }
}

/// Exit air is taken as saturated at the ambient dry-bulb temperature.
pub fn air_state(dry_bulb: f64, rh: f64, pressure: f64) -> Result<AirState, PsychroError> {
    check_inputs(dry_bulb, rh, pressure)?;
    let sat = saturation_vapor_pressure(dry_bulb)?;
    if sat >= pressure {
        return Err(PsychroError::SaturationExceedsPressure { saturation: sat, total: pressure });
    }
    let vapor = sat * rh / 100.0;
    let wet_bulb = wet_bulb_temperature(dry_bulb, rh, pressure)?;
    let omega_in = humidity_ratio(vapor, pressure);
    let omega_out = humidity_ratio(sat, pressure);
    Ok(AirState {
        dry_bulb,
        wet_bulb,
        pressure,
        vapor_pressure: vapor,
        sat_vapor_pressure: sat,
        humidity_ratio_in: omega_in,
        humidity_ratio_out: omega_out,
        enthalpy_in: moist_air_enthalpy(dry_bulb, omega_in),
        enthalpy_out: moist_air_enthalpy(dry_bulb, omega_out),
    })
}
