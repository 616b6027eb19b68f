use thiserror::Error;

use crate::psychro::PsychroError;

/// Failure of a single kernel evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DerateError {
    #[error("negative streamflow {0} m3/s")]
    NegativeFlow(f64),
    #[error("negative irradiance {0} W/m2")]
    NegativeIrradiance(f64),
    #[error("relative efficiency is undefined at normalized irradiance {0}")]
    NonpositiveIrradiance(f64),
    #[error("negative wind speed {0} m/s")]
    NegativeWindSpeed(f64),
    #[error("hub height must be positive, got {0} m")]
    InvalidHubHeight(f64),
    #[error("unknown wind power curve `{0}`")]
    UnknownCurve(String),
    #[error(transparent)]
    Psychro(#[from] PsychroError),
}
