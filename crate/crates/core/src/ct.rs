//! Combustion turbines: linear loss of output with ambient dry-bulb temperature.

/// Output fraction at 0 °C before the nameplate clamp.
pub const CT_INTERCEPT: f64 = 1.15;

/// Fractional output lost per °C, 1/°C.
pub const DEFAULT_CT_COEFFICIENT: f64 = 0.0083;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CtParams {
    pub installed_capacity: f64,
    pub coefficient: f64,
}

impl CtParams {
    pub fn new(installed_capacity: f64) -> Self {
        CtParams { installed_capacity, coefficient: DEFAULT_CT_COEFFICIENT }
    }

    /// Dry-bulb temperature above which the unit is derated, °C.
    pub fn derate_onset(&self) -> f64 {
        (CT_INTERCEPT - 1.0) / self.coefficient
    }
}

/// Unclamped output fraction `1.15 - C_ct * t_d`.
pub fn ct_derate_factor(p: &CtParams, dry_bulb: f64) -> f64 {
    -p.coefficient * dry_bulb + CT_INTERCEPT
}

/// Usable capacity in MW, clamped to `[0, installed_capacity]`.
pub fn ct_usable_capacity(p: &CtParams, dry_bulb: f64) -> f64 {
    p.installed_capacity * ct_derate_factor(p, dry_bulb).clamp(0.0, 1.0)
}
