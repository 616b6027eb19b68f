//! Gap-free daily time series.

use std::fmt;

use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    CubicMetresPerSecond,
    DegreesCelsius,
    Kilopascal,
    Percent,
    WattsPerSquareMetre,
    MetresPerSecond,
    Megawatt,
    /// Dimensionless ratio, e.g. a capacity factor.
    Fraction,
}

impl Unit {
    /// Units for which negative values are physically meaningless.
    pub fn is_non_negative(self) -> bool {
        matches!(self, Unit::CubicMetresPerSecond | Unit::WattsPerSquareMetre | Unit::MetresPerSecond)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Unit::CubicMetresPerSecond => "m3_per_s",
            Unit::DegreesCelsius => "degC",
            Unit::Kilopascal => "kPa",
            Unit::Percent => "percent",
            Unit::WattsPerSquareMetre => "W_per_m2",
            Unit::MetresPerSecond => "m_per_s",
            Unit::Megawatt => "MW",
            Unit::Fraction => "fraction",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("non-finite value at {date}")]
    NonFinite { date: NaiveDate },
    #[error("negative value {value} at {date} for unit {unit}")]
    Negative { date: NaiveDate, value: f64, unit: Unit },
    #[error("series is empty")]
    Empty,
}

/// One value per calendar day starting at `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct DailySeries {
    start: NaiveDate,
    values: Vec<f64>,
    unit: Unit,
}

impl DailySeries {
    pub fn new(start: NaiveDate, values: Vec<f64>, unit: Unit) -> Result<Self, SeriesError> {
        if values.is_empty() {
            return Err(SeriesError::Empty);
        }
        for (i, &v) in values.iter().enumerate() {
            let date = start + Days::new(i as u64);
            if !v.is_finite() {
                return Err(SeriesError::NonFinite { date });
            }
            if unit.is_non_negative() && v < 0.0 {
                return Err(SeriesError::Negative { date, value: v, unit });
            }
        }
        Ok(DailySeries { start, values, unit })
    }

    pub fn start(&self) -> NaiveDate {
        self.start
    }

    /// Last covered day (inclusive).
    pub fn end(&self) -> NaiveDate {
        self.date_at(self.values.len() - 1)
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn date_at(&self, index: usize) -> NaiveDate {
        self.start + Days::new(index as u64)
    }

    pub fn dates(&self) -> impl Iterator<Item = NaiveDate> + '_ {
        (0..self.values.len()).map(|i| self.date_at(i))
    }

    pub fn covers(&self, span: DateSpan) -> bool {
        span.start >= self.start && span.end <= self.end()
    }

    /// The sub-series over `span`, or `None` if `span` is not fully covered.
    pub fn window(&self, span: DateSpan) -> Option<DailySeries> {
        if !self.covers(span) {
            return None;
        }
        let offset = (span.start - self.start).num_days() as usize;
        let values = self.values[offset..offset + span.len()].to_vec();
        Some(DailySeries { start: span.start, values, unit: self.unit })
    }

    /// Element-wise transform that keeps dates and unit.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<DailySeries, SeriesError> {
        DailySeries::new(self.start, self.values.iter().map(|&v| f(v)).collect(), self.unit)
    }
}

/// Inclusive range of calendar days.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DateSpan {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateSpan {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Option<Self> {
        (start <= end).then_some(DateSpan { start, end })
    }

    pub fn len(&self) -> usize {
        (self.end - self.start).num_days() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dates(&self) -> impl Iterator<Item = NaiveDate> {
        let start = self.start;
        (0..self.len()).map(move |i| start + Days::new(i as u64))
    }
}
