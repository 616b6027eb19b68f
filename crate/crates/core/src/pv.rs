//! Solar PV: STC-rated output scaled by irradiance and a relative-efficiency
//! surface in normalized irradiance and module-temperature excess.

use serde::{Deserialize, Serialize};

use crate::DerateError;

/// Irradiance at standard test conditions, W/m².
pub const STC_IRRADIANCE: f64 = 1000.0;
/// Module temperature at standard test conditions, °C.
pub const STC_MODULE_TEMP: f64 = 25.0;
/// Module heating per unit irradiance, °C·m²/W.
pub const DEFAULT_THERMAL_COEFFICIENT: f64 = 0.035;
pub const THERMAL_COEFFICIENT_RANGE: (f64, f64) = (0.025, 0.05);

/// Coefficients `k1..k6` of the relative-efficiency surface
/// `1 + k1 ln G + k2 ln² G + T (k3 + k4 ln G + k5 ln² G) + k6 T²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyCoefficients(pub [f64; 6]);

impl EfficiencyCoefficients {
    /// Free-standing crystalline silicon.
    pub const CRYSTALLINE_SILICON: EfficiencyCoefficients =
        EfficiencyCoefficients([-0.017162, -0.040289, -0.004681, 0.000148, 0.000169, 0.000005]);

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|k| k.is_finite())
    }
}

impl Default for EfficiencyCoefficients {
    fn default() -> Self {
        Self::CRYSTALLINE_SILICON
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvParams {
    /// Output at standard test conditions, MW.
    pub installed_capacity: f64,
    pub thermal_coefficient: f64,
    pub coefficients: EfficiencyCoefficients,
}

/// Module temperature from ambient temperature and plane-of-array irradiance.
pub fn module_temperature(
    ambient: f64,
    irradiance: f64,
    thermal_coefficient: f64,
) -> Result<f64, DerateError> {
    if irradiance < 0.0 {
        return Err(DerateError::NegativeIrradiance(irradiance));
    }
    Ok(ambient + thermal_coefficient * irradiance)
}

/// Relative efficiency at normalized irradiance `g_norm` (G / 1000) and
/// module temperature excess `t_delta` (T_mod - 25 °C).
pub fn relative_efficiency(
    g_norm: f64,
    t_delta: f64,
    k: &EfficiencyCoefficients,
) -> Result<f64, DerateError> {
    if !(g_norm > 0.0) {
        return Err(DerateError::NonpositiveIrradiance(g_norm));
    }
    let [k1, k2, k3, k4, k5, k6] = k.0;
    let lg = g_norm.ln();
    Ok(1.0 + k1 * lg + k2 * lg * lg + t_delta * (k3 + k4 * lg + k5 * lg * lg) + k6 * t_delta * t_delta)
}

/// PV output in MW within `[0, installed_capacity]`; zero at zero irradiance.
pub fn pv_power(p: &PvParams, irradiance: f64, ambient: f64) -> Result<f64, DerateError> {
    let t_mod = module_temperature(ambient, irradiance, p.thermal_coefficient)?;
    if irradiance == 0.0 {
        return Ok(0.0);
    }
    let g_norm = irradiance / STC_IRRADIANCE;
    let eta = relative_efficiency(g_norm, t_mod - STC_MODULE_TEMP, &p.coefficients)?;
    Ok((p.installed_capacity * g_norm * eta).clamp(0.0, p.installed_capacity))
}
