//! Fleet-wide derating: route each generator to its technology kernel,
//! then roll daily results up into category and fleet capacity factors.

use std::collections::BTreeMap;
use std::fmt;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ct::ct_usable_capacity;
use crate::fleet::{FleetRegistry, GeneratorRecord, HydroChannel, Technology, WeatherChannel};
use crate::hydro::hydro_usable_capacity;
use crate::once_through::{ot_usable_capacity, DischargeLimit};
use crate::psychro::air_state;
use crate::pv::pv_power;
use crate::recirc::rc_usable_capacity;
use crate::series::{DailySeries, DateSpan, Unit};
use crate::wind::wind_usable_capacity;
use crate::DerateError;

/// Reporting group; one per technology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Hydro,
    OnceThrough,
    Recirculating,
    CombustionTurbine,
    SolarPv,
    Wind,
    Other,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::Hydro,
        Category::OnceThrough,
        Category::Recirculating,
        Category::CombustionTurbine,
        Category::SolarPv,
        Category::Wind,
        Category::Other,
    ];

    pub fn of(technology: Technology) -> Category {
        match technology {
            Technology::Hydro => Category::Hydro,
            Technology::SteamOnceThrough => Category::OnceThrough,
            Technology::SteamRecirculating => Category::Recirculating,
            Technology::CombustionTurbine => Category::CombustionTurbine,
            Technology::SolarPV => Category::SolarPv,
            Technology::Wind => Category::Wind,
            Technology::Other => Category::Other,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Category::Hydro => "hydro",
            Category::OnceThrough => "once_through",
            Category::Recirculating => "recirculating",
            Category::CombustionTurbine => "combustion_turbine",
            Category::SolarPv => "solar_pv",
            Category::Wind => "wind",
            Category::Other => "other",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AggregateError {
    #[error("generator `{generator}`: site `{site}` has no {channel} series covering {start}..{end}")]
    MissingSeries { generator: String, site: String, channel: String, start: NaiveDate, end: NaiveDate },
    #[error("generator `{generator}` on {date}: {source}")]
    Compute { generator: String, date: NaiveDate, source: DerateError },
    #[error("generator `{generator}` lacks the parameters its technology needs")]
    MissingParameters { generator: String },
    #[error("fleet has no generators")]
    EmptyFleet,
    #[error("installed capacity sums to zero")]
    EmptyCategory,
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("degenerate regression input: {0}")]
    DegenerateInput(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DerateOptions {
    pub discharge_limit: DischargeLimit,
}

/// Daily usable capacity of one generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSeries {
    pub id: String,
    pub category: Category,
    pub installed_mw: f64,
    pub at_risk: bool,
    pub available: DailySeries,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategorySeries {
    pub installed_mw: f64,
    pub total_mw: DailySeries,
    pub capacity_factor: DailySeries,
}

/// Spread of a daily capacity-factor series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CfSummary {
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

impl CfSummary {
    pub fn of(values: &[f64]) -> CfSummary {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        CfSummary { median: median_of_sorted(&sorted), min: sorted[0], max: sorted[sorted.len() - 1] }
    }
}

fn median_of_sorted(v: &[f64]) -> f64 {
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn median(values: &[f64]) -> f64 {
    CfSummary::of(values).median
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityReport {
    pub span: DateSpan,
    pub per_generator: BTreeMap<String, GeneratorSeries>,
    pub per_category: BTreeMap<Category, CategorySeries>,
    pub fleet_installed_mw: f64,
    pub fleet_total: DailySeries,
    pub fleet_cf: DailySeries,
    pub summary: BTreeMap<Category, CfSummary>,
    pub fleet_summary: CfSummary,
}

impl CapacityReport {
    /// Generators ordered by category, then id. All sums in the report
    /// accumulate in this order.
    pub fn generators_in_order(&self) -> Vec<&GeneratorSeries> {
        let mut v: Vec<&GeneratorSeries> = self.per_generator.values().collect();
        v.sort_by(|a, b| (a.category, &a.id).cmp(&(b.category, &b.id)));
        v
    }

    pub fn dates(&self) -> impl Iterator<Item = NaiveDate> {
        self.span.dates()
    }
}

/// `Σ available / Σ installed`.
pub fn capacity_factor(available: &[f64], installed: &[f64]) -> Result<f64, AggregateError> {
    if available.len() != installed.len() {
        return Err(AggregateError::LengthMismatch(available.len(), installed.len()));
    }
    let total: f64 = installed.iter().sum();
    if !(total > 0.0) {
        return Err(AggregateError::EmptyCategory);
    }
    Ok(available.iter().sum::<f64>() / total)
}

struct Ctx<'a> {
    reg: &'a FleetRegistry,
    g: &'a GeneratorRecord,
    span: DateSpan,
}

impl Ctx<'_> {
    fn missing(&self, channel: impl ToString) -> AggregateError {
        AggregateError::MissingSeries {
            generator: self.g.id.clone(),
            site: self.g.site_id.clone(),
            channel: channel.to_string(),
            start: self.span.start,
            end: self.span.end,
        }
    }

    fn hydro(&self, channel: HydroChannel) -> Result<DailySeries, AggregateError> {
        self.reg
            .hydrology
            .get(&self.g.site_id)
            .and_then(|h| h.channel(channel).window(self.span))
            .ok_or_else(|| self.missing(channel))
    }

    fn weather(&self, channel: WeatherChannel) -> Result<DailySeries, AggregateError> {
        self.reg
            .weather
            .get(&self.g.site_id)
            .and_then(|w| w.channel(channel))
            .and_then(|s| s.window(self.span))
            .ok_or_else(|| self.missing(channel))
    }

    fn params_missing(&self) -> AggregateError {
        AggregateError::MissingParameters { generator: self.g.id.clone() }
    }

    /// Evaluates `f` for each day, tagging failures with the date.
    fn daily(&self, f: impl Fn(usize) -> Result<f64, DerateError>) -> Result<Vec<f64>, AggregateError> {
        (0..self.span.len())
            .map(|i| {
                f(i).map_err(|source| AggregateError::Compute {
                    generator: self.g.id.clone(),
                    date: self.span.dates().nth(i).expect("index within span"),
                    source,
                })
            })
            .collect()
    }
}

/// Daily usable capacity of one generator over `span`, MW.
pub fn derate_generator(
    reg: &FleetRegistry,
    g: &GeneratorRecord,
    span: DateSpan,
    opts: &DerateOptions,
) -> Result<Vec<f64>, AggregateError> {
    let cx = Ctx { reg, g, span };
    if !g.is_at_risk() {
        return Ok(vec![g.installed_capacity; span.len()]);
    }
    match g.technology {
        Technology::Hydro => {
            let p = g.hydro_params().ok_or_else(|| cx.params_missing())?;
            let q = cx.hydro(HydroChannel::Streamflow)?;
            cx.daily(|i| hydro_usable_capacity(&p, q.values()[i]))
        }
        Technology::SteamOnceThrough => {
            let p = g.once_through_params(opts.discharge_limit).ok_or_else(|| cx.params_missing())?;
            let q = cx.hydro(HydroChannel::Streamflow)?;
            let tw = cx.hydro(HydroChannel::WaterTemperature)?;
            cx.daily(|i| ot_usable_capacity(&p, q.values()[i], tw.values()[i]))
        }
        Technology::SteamRecirculating => {
            let p = g.recirc_params().ok_or_else(|| cx.params_missing())?;
            let q = cx.hydro(HydroChannel::Streamflow)?;
            let tw = cx.hydro(HydroChannel::WaterTemperature)?;
            let td = cx.weather(WeatherChannel::DryBulb)?;
            let rh = cx.weather(WeatherChannel::RelativeHumidity)?;
            let pr = cx.weather(WeatherChannel::Pressure)?;
            cx.daily(|i| {
                let air = air_state(td.values()[i], rh.values()[i], pr.values()[i])?;
                rc_usable_capacity(&p, q.values()[i], tw.values()[i], &air)
            })
        }
        Technology::CombustionTurbine => {
            let p = g.ct_params();
            let td = cx.weather(WeatherChannel::DryBulb)?;
            cx.daily(|i| Ok(ct_usable_capacity(&p, td.values()[i])))
        }
        Technology::SolarPV => {
            let p = g.pv_params().ok_or_else(|| cx.params_missing())?;
            let gi = cx.weather(WeatherChannel::Irradiance)?;
            let td = cx.weather(WeatherChannel::DryBulb)?;
            cx.daily(|i| pv_power(&p, gi.values()[i], td.values()[i]))
        }
        Technology::Wind => {
            let p = g.wind_params().ok_or_else(|| cx.params_missing())?;
            let v2 = cx.weather(WeatherChannel::Wind2m)?;
            let v10 = cx.weather(WeatherChannel::Wind10m)?;
            let v50 = cx.weather(WeatherChannel::Wind50m)?;
            cx.daily(|i| {
                wind_usable_capacity(&p, &reg.wind_curves, v2.values()[i], v10.values()[i], v50.values()[i])
            })
        }
        Technology::Other => Ok(vec![g.installed_capacity; span.len()]),
    }
}

/// Derates every generator over `span` and aggregates the results.
///
/// Generators are evaluated on the current rayon pool; the result does not
/// depend on how many threads it has.
pub fn derate_fleet(
    reg: &FleetRegistry,
    span: DateSpan,
    opts: &DerateOptions,
) -> Result<CapacityReport, AggregateError> {
    if reg.generators.is_empty() {
        return Err(AggregateError::EmptyFleet);
    }
    let generators: Vec<&GeneratorRecord> = reg.generators.values().collect();
    let results: Vec<Result<Vec<f64>, AggregateError>> =
        generators.par_iter().map(|g| derate_generator(reg, g, span, opts)).collect();

    let mut per_generator = BTreeMap::new();
    for (g, result) in generators.iter().zip(results) {
        let values = result?;
        log::debug!("derated {} ({})", g.id, g.technology);
        per_generator.insert(
            g.id.clone(),
            GeneratorSeries {
                id: g.id.clone(),
                category: Category::of(g.technology),
                installed_mw: g.installed_capacity,
                at_risk: g.is_at_risk(),
                available: DailySeries::new(span.start, values, Unit::Megawatt)
                    .expect("kernel outputs are finite and non-negative"),
            },
        );
    }
    Ok(summarize(span, per_generator))
}

/// Builds category and fleet totals from per-generator series.
pub fn summarize(span: DateSpan, per_generator: BTreeMap<String, GeneratorSeries>) -> CapacityReport {
    let days = span.len();
    let mut ordered: Vec<&GeneratorSeries> = per_generator.values().collect();
    ordered.sort_by(|a, b| (a.category, &a.id).cmp(&(b.category, &b.id)));

    let mut per_category = BTreeMap::new();
    let mut summary = BTreeMap::new();
    let mut fleet = vec![0.0; days];
    let mut fleet_installed = 0.0;
    for cat in Category::ALL {
        let members: Vec<&&GeneratorSeries> = ordered.iter().filter(|g| g.category == cat).collect();
        if members.is_empty() {
            continue;
        }
        let mut total = vec![0.0; days];
        let mut installed = 0.0;
        for g in &members {
            installed += g.installed_mw;
            for (t, v) in g.available.values().iter().enumerate() {
                total[t] += v;
                fleet[t] += v;
            }
        }
        fleet_installed += installed;
        let cf: Vec<f64> = total.iter().map(|v| v / installed).collect();
        summary.insert(cat, CfSummary::of(&cf));
        per_category.insert(
            cat,
            CategorySeries {
                installed_mw: installed,
                total_mw: DailySeries::new(span.start, total, Unit::Megawatt).expect("finite totals"),
                capacity_factor: DailySeries::new(span.start, cf, Unit::Fraction).expect("finite ratios"),
            },
        );
    }
    let fleet_cf: Vec<f64> = fleet.iter().map(|v| v / fleet_installed).collect();
    CapacityReport {
        span,
        fleet_summary: CfSummary::of(&fleet_cf),
        fleet_total: DailySeries::new(span.start, fleet, Unit::Megawatt).expect("finite totals"),
        fleet_cf: DailySeries::new(span.start, fleet_cf, Unit::Fraction).expect("finite ratios"),
        fleet_installed_mw: fleet_installed,
        per_generator,
        per_category,
        summary,
    }
}

/// Least-squares fit of mean-normalized generation on mean-normalized flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Regression {
    pub r_squared: f64,
    pub slope: f64,
    pub intercept: f64,
}

pub fn flow_generation_correlation(
    annual_flows: &[f64],
    annual_generation: &[f64],
) -> Result<Regression, AggregateError> {
    let n = annual_flows.len();
    if n != annual_generation.len() {
        return Err(AggregateError::LengthMismatch(n, annual_generation.len()));
    }
    if n < 3 {
        return Err(AggregateError::DegenerateInput("need at least three points"));
    }
    if annual_flows.iter().chain(annual_generation).any(|v| !v.is_finite()) {
        return Err(AggregateError::DegenerateInput("non-finite value"));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mf, mg) = (mean(annual_flows), mean(annual_generation));
    if mf == 0.0 || mg == 0.0 {
        return Err(AggregateError::DegenerateInput("zero mean"));
    }
    let x: Vec<f64> = annual_flows.iter().map(|f| f / mf).collect();
    let y: Vec<f64> = annual_generation.iter().map(|g| g / mg).collect();
    let (xm, ym) = (mean(&x), mean(&y));
    let sxx: f64 = x.iter().map(|xi| (xi - xm).powi(2)).sum();
    if sxx == 0.0 {
        return Err(AggregateError::DegenerateInput("flows have no variance"));
    }
    let sxy: f64 = x.iter().zip(&y).map(|(xi, yi)| (xi - xm) * (yi - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let ss_tot: f64 = y.iter().map(|yi| (yi - ym).powi(2)).sum();
    let ss_res: f64 = x.iter().zip(&y).map(|(xi, yi)| (yi - intercept - slope * xi).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 0.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    Ok(Regression { r_squared, slope, intercept })
}
