//! Conventional (and pumped-storage) hydro: usable capacity from streamflow.

use chrono::NaiveDate;
use thiserror::Error;

use crate::constants::{GRAVITY, WATER_DENSITY};
use crate::series::{DailySeries, SeriesError, Unit};
use crate::DerateError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydroParams {
    /// Net hydraulic head on the turbine, m.
    pub head: f64,
    /// Turbine-generator efficiency in (0, 1].
    pub efficiency: f64,
    /// Nameplate capacity, MW.
    pub installed_capacity: f64,
}

impl HydroParams {
    /// Flow at which the plant reaches nameplate, m³/s.
    pub fn rated_flow(&self) -> f64 {
        self.installed_capacity * 1e6 / (self.efficiency * WATER_DENSITY * GRAVITY * self.head)
    }
}

/// Hydraulic power of `flow` through the plant, capped at nameplate. MW.
pub fn hydro_usable_capacity(p: &HydroParams, flow: f64) -> Result<f64, DerateError> {
    if flow < 0.0 {
        return Err(DerateError::NegativeFlow(flow));
    }
    let hydraulic = p.efficiency * WATER_DENSITY * flow * GRAVITY * p.head / 1e6;
    Ok(hydraulic.min(p.installed_capacity))
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HydroSeriesError {
    #[error("expected a streamflow series, got unit {0}")]
    WrongUnit(Unit),
    #[error("{source} on {date}")]
    Kernel { date: NaiveDate, source: DerateError },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub fn hydro_series(p: &HydroParams, flows: &DailySeries) -> Result<DailySeries, HydroSeriesError> {
    if flows.unit() != Unit::CubicMetresPerSecond {
        return Err(HydroSeriesError::WrongUnit(flows.unit()));
    }
    let values = flows
        .values()
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            hydro_usable_capacity(p, q)
                .map_err(|source| HydroSeriesError::Kernel { date: flows.date_at(i), source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DailySeries::new(flows.start(), values, Unit::Megawatt)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE: HydroParams = HydroParams { head: 50.0, efficiency: 0.9, installed_capacity: 60.0 };

    #[test]
    fn hand_evaluated_examples() {
        // 0.9 * 1000 * 100 * 9.81 * 50 / 1e6
        let p = hydro_usable_capacity(&EXAMPLE, 100.0).unwrap();
        assert!((p - 44.145).abs() < 1e-9);
        assert_eq!(hydro_usable_capacity(&EXAMPLE, 0.0).unwrap(), 0.0);
        let capped = HydroParams { installed_capacity: 40.0, ..EXAMPLE };
        assert_eq!(hydro_usable_capacity(&capped, 100.0).unwrap(), 40.0);
    }

    #[test]
    fn negative_flow_is_rejected() {
        assert_eq!(hydro_usable_capacity(&EXAMPLE, -1.0), Err(DerateError::NegativeFlow(-1.0)));
    }

    #[test]
    fn series_is_elementwise() {
        let start = NaiveDate::from_ymd_opt(2024, 7, 1).unwrap();
        let flows = DailySeries::new(start, vec![0.0, 100.0], Unit::CubicMetresPerSecond).unwrap();
        let out = hydro_series(&EXAMPLE, &flows).unwrap();
        assert_eq!(out.start(), start);
        assert_eq!(out.unit(), Unit::Megawatt);
        assert_eq!(out.values()[0], 0.0);
        assert!((out.values()[1] - 44.145).abs() < 1e-9);

        let constant = DailySeries::new(start, vec![70.0; 5], Unit::CubicMetresPerSecond).unwrap();
        let out = hydro_series(&EXAMPLE, &constant).unwrap();
        assert!(out.values().windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn series_rejects_wrong_unit() {
        let start = NaiveDate::from_ymd_opt(2024, 7, 1).unwrap();
        let temps = DailySeries::new(start, vec![20.0], Unit::DegreesCelsius).unwrap();
        assert!(matches!(hydro_series(&EXAMPLE, &temps), Err(HydroSeriesError::WrongUnit(_))));
    }

    proptest! {
        #[test]
        fn monotone_and_capped(
            head in 1.0..300.0f64, eff in 0.3..1.0f64, cap in 1.0..2000.0f64,
            q1 in 0.0..5000.0f64, q2 in 0.0..5000.0f64,
        ) {
            let p = HydroParams { head, efficiency: eff, installed_capacity: cap };
            let (lo, hi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
            let a = hydro_usable_capacity(&p, lo).unwrap();
            let b = hydro_usable_capacity(&p, hi).unwrap();
            prop_assert!(a <= b);
            prop_assert!(b <= cap && a >= 0.0);
            if hi >= p.rated_flow() * (1.0 + 1e-12) {
                prop_assert_eq!(b, cap);
            }
        }

        #[test]
        fn homogeneous_below_cap(head in 1.0..300.0f64, eff in 0.3..1.0f64, q in 0.0..50.0f64) {
            let p = HydroParams { head, efficiency: eff, installed_capacity: 1e6 };
            let one = hydro_usable_capacity(&p, q).unwrap();
            let two = hydro_usable_capacity(&p, 2.0 * q).unwrap();
            prop_assert!((two - 2.0 * one).abs() <= 1e-12 * two.max(1.0));
        }
    }
}
