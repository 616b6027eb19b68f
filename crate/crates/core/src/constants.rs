//! Physical constants shared by the derating kernels.

/// Density of water, kg/m³.
pub const WATER_DENSITY: f64 = 1000.0;

/// Gravitational acceleration, m/s².
pub const GRAVITY: f64 = 9.81;

/// Specific heat of liquid water, MJ/(kg·°C).
pub const WATER_SPECIFIC_HEAT: f64 = 4.186e-3;

/// Latent heat of vaporization of water, MJ/kg.
pub const LATENT_HEAT_VAPORIZATION: f64 = 2.45;
