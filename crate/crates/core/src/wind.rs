//! Wind: three-height log-law extrapolation to hub height and a tabulated
//! power curve.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::DerateError;

/// Anemometer heights of the input wind channels, m.
pub const MEASUREMENT_HEIGHTS: [f64; 3] = [2.0, 10.0, 50.0];

pub const HUB_HEIGHT_RANGE: (f64, f64) = (10.0, 200.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("curve `{0}` has fewer than two points")]
    TooFewPoints(String),
    #[error("curve `{id}`: speeds must be finite, non-negative and strictly increasing (at {speed} m/s)")]
    NonIncreasingSpeed { id: String, speed: f64 },
    #[error("curve `{id}`: power fraction {fraction} at {speed} m/s outside [0, 1]")]
    FractionOutOfRange { id: String, speed: f64, fraction: f64 },
    #[error("curve `{0}` never reaches a power fraction of 1")]
    NoRatedPoint(String),
    #[error("curve `{0}` must start with a zero-power point at cut-in")]
    MissingCutIn(String),
    #[error("curve `{0}` must end with a zero-power point at cut-out")]
    MissingCutOut(String),
}

/// Tabulated power curve. Output is zero at or below `cut_in` and at or
/// above `cut_out`, linear between knots, and held at the last nonzero knot
/// until cut-out.
#[derive(Debug, Clone, PartialEq)]
pub struct WindPowerCurve {
    id: String,
    points: Vec<(f64, f64)>,
    cut_in: f64,
    cut_out: f64,
}

impl WindPowerCurve {
    /// Builds a curve from `(speed, fraction)` knots. Cut-in is the zero
    /// knot just below the first nonzero knot, cut-out the zero knot just
    /// above the last one.
    pub fn new(id: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self, CurveError> {
        let id = id.into();
        if points.len() < 2 {
            return Err(CurveError::TooFewPoints(id));
        }
        let mut prev = f64::NEG_INFINITY;
        for &(speed, fraction) in &points {
            if !speed.is_finite() || speed < 0.0 || speed <= prev {
                return Err(CurveError::NonIncreasingSpeed { id, speed });
            }
            if !(0.0..=1.0).contains(&fraction) {
                return Err(CurveError::FractionOutOfRange { id, speed, fraction });
            }
            prev = speed;
        }
        if !points.iter().any(|&(_, f)| f == 1.0) {
            return Err(CurveError::NoRatedPoint(id));
        }
        let first = points.iter().position(|&(_, f)| f > 0.0).expect("rated point exists");
        let last = points.iter().rposition(|&(_, f)| f > 0.0).expect("rated point exists");
        if first == 0 {
            return Err(CurveError::MissingCutIn(id));
        }
        if last + 1 == points.len() {
            return Err(CurveError::MissingCutOut(id));
        }
        let cut_in = points[first - 1].0;
        let cut_out = points[last + 1].0;
        Ok(WindPowerCurve { id, points, cut_in, cut_out })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn cut_in(&self) -> f64 {
        self.cut_in
    }

    pub fn cut_out(&self) -> f64 {
        self.cut_out
    }
}

/// Output fraction at hub-height speed `v`.
pub fn power_from_curve(curve: &WindPowerCurve, v: f64) -> f64 {
    if !(v > curve.cut_in && v < curve.cut_out) {
        return 0.0;
    }
    let pts = &curve.points;
    let upper = pts.partition_point(|&(s, _)| s <= v);
    let (s0, f0) = pts[upper - 1];
    let (s1, f1) = pts[upper];
    if s1 >= curve.cut_out {
        // plateau up to the cut-out step
        return f0;
    }
    f0 + (f1 - f0) * (v - s0) / (s1 - s0)
}

/// Least-squares log profile `v = a + b ln z` through the speeds at 2, 10
/// and 50 m, evaluated at `hub` and floored at zero.
pub fn extrapolate_hub_speed(v2: f64, v10: f64, v50: f64, hub: f64) -> Result<f64, DerateError> {
    let speeds = [v2, v10, v50];
    if let Some(&v) = speeds.iter().find(|v| !(**v >= 0.0)) {
        return Err(DerateError::NegativeWindSpeed(v));
    }
    if !(hub > 0.0) {
        return Err(DerateError::InvalidHubHeight(hub));
    }
    if speeds.iter().all(|&v| v == 0.0) {
        return Ok(0.0);
    }
    let x = MEASUREMENT_HEIGHTS.map(f64::ln);
    let x_mean = x.iter().sum::<f64>() / 3.0;
    let v_mean = speeds.iter().sum::<f64>() / 3.0;
    let sxx: f64 = x.iter().map(|xi| (xi - x_mean).powi(2)).sum();
    let sxv: f64 = x.iter().zip(&speeds).map(|(xi, vi)| (xi - x_mean) * (vi - v_mean)).sum();
    let slope = sxv / sxx;
    Ok((v_mean + slope * (hub.ln() - x_mean)).max(0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindParams {
    pub installed_capacity: f64,
    pub hub_height: f64,
    pub curve_id: String,
}

/// Usable capacity in MW within `[0, installed_capacity]`.
pub fn wind_usable_capacity(
    p: &WindParams,
    curves: &BTreeMap<String, WindPowerCurve>,
    v2: f64,
    v10: f64,
    v50: f64,
) -> Result<f64, DerateError> {
    let curve = curves.get(&p.curve_id).ok_or_else(|| DerateError::UnknownCurve(p.curve_id.clone()))?;
    let hub_speed = extrapolate_hub_speed(v2, v10, v50, p.hub_height)?;
    Ok(p.installed_capacity * power_from_curve(curve, hub_speed))
}

const DEFAULT_CURVES_CSV: &str = include_str!("../data/curves.csv");

/// Generic low, medium and high specific-power curves.
pub fn default_curves() -> BTreeMap<String, WindPowerCurve> {
    crate::ingest::read_curves(DEFAULT_CURVES_CSV.as_bytes()).expect("bundled power curves are valid")
}
