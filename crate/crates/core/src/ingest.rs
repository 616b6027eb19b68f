//! Reading and writing the on-disk fleet, hydrology, weather, power-curve
//! and PV-coefficient files.
//!
//! Readers keep going after a bad row so that one pass reports every
//! problem. Line numbers count the header as line 1.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};
use thiserror::Error;

use crate::fleet::{
    defaults, FleetRegistry, Fuel, GeneratorRecord, HydroSpec, PvSpec, SiteHydrology, SiteWeather,
    Technology, ThermalSpec, WaterSource, WeatherChannel, WindSpec,
};
use crate::pv::EfficiencyCoefficients;
use crate::series::{DailySeries, Unit};
use crate::wind::{CurveError, WindPowerCurve};

pub const FLEET_COLUMNS: [&str; 21] = [
    "id",
    "name",
    "technology",
    "installed_capacity_mw",
    "site_id",
    "water_source",
    "fuel",
    "head_m",
    "hydro_efficiency",
    "net_efficiency",
    "k_os",
    "tl_max_c",
    "dtl_max_c",
    "n_cc",
    "sigma",
    "t_app_c",
    "k_sens",
    "gamma",
    "c_t",
    "hub_height_m",
    "curve_id",
];

pub const HYDROLOGY_COLUMNS: [&str; 4] = ["site_id", "date", "streamflow_m3s", "water_temp_c"];

pub const WEATHER_COLUMNS: [&str; 9] = [
    "site_id",
    "date",
    "dry_bulb_c",
    "rh_pct",
    "pressure_kpa",
    "irradiance_wm2",
    "wind2_ms",
    "wind10_ms",
    "wind50_ms",
];

pub const CURVE_COLUMNS: [&str; 3] = ["curve_id", "speed_ms", "power_fraction"];

pub const PV_COEFFICIENT_COLUMNS: [&str; 6] = ["k1", "k2", "k3", "k4", "k5", "k6"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoadError {
    #[error("{0}")]
    Io(String),
    #[error("line {line}: malformed CSV: {message}")]
    Csv { line: u64, message: String },
    #[error("missing column `{column}`")]
    MissingColumn { column: String },
    #[error("header must be exactly `{expected}`, found `{found}`")]
    HeaderMismatch { expected: String, found: String },
    #[error("line {row}: bad {column} value `{value}`")]
    BadEnum { row: usize, column: String, value: String },
    #[error("line {row}: `{value}` in column {column} is not a number")]
    BadNumber { row: usize, column: String, value: String },
    #[error("line {row}: `{value}` is not an ISO-8601 date")]
    BadDate { row: usize, value: String },
    #[error("line {row}: {field} {reason}")]
    InvariantViolation { row: usize, field: String, reason: String },
    #[error("line {row}: duplicate generator id `{id}`")]
    DuplicateId { row: usize, id: String },
    #[error("line {row}: site `{site}` has no hydrology or weather data")]
    UnresolvedSite { row: usize, site: String },
    #[error("line {row}: wind power curve `{curve}` is not defined")]
    UnresolvedCurve { row: usize, curve: String },
    #[error("line {row}: site `{site}` repeats date {date}")]
    DuplicateDate { row: usize, site: String, date: NaiveDate },
    #[error("site `{site}`: no data between {after} and {next}")]
    DateGap { site: String, after: NaiveDate, next: NaiveDate },
    #[error("line {row}: site `{site}` is missing {channel} on some days but not others")]
    PartialChannel { row: usize, site: String, channel: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A [`LoadError`] tagged with the file it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub file: String,
    pub error: LoadError,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.file, self.error)
    }
}

/// All problems found while loading.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LoadErrors(pub Vec<Issue>);

impl LoadErrors {
    fn tagged(file: &str, errors: Vec<LoadError>) -> Self {
        LoadErrors(errors.into_iter().map(|error| Issue { file: file.to_string(), error }).collect())
    }

    pub fn issues(&self) -> &[Issue] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every issue is a schema or I/O problem rather than a
    /// failed value check.
    pub fn is_structural(&self) -> bool {
        self.0.iter().any(|i| {
            matches!(
                i.error,
                LoadError::Io(_)
                    | LoadError::Csv { .. }
                    | LoadError::MissingColumn { .. }
                    | LoadError::HeaderMismatch { .. }
                    | LoadError::BadEnum { .. }
                    | LoadError::BadNumber { .. }
                    | LoadError::BadDate { .. }
            )
        })
    }
}

impl fmt::Display for LoadErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadErrors {}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    ReaderBuilder::new().trim(Trim::All).from_reader(r)
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<(), Vec<LoadError>> {
    let headers = rdr.headers().map_err(|e| vec![csv_error(&e)])?.clone();
    let found: Vec<&str> = headers.iter().collect();
    if found == expected {
        return Ok(());
    }
    let missing: Vec<LoadError> = expected
        .iter()
        .filter(|c| !found.contains(c))
        .map(|c| LoadError::MissingColumn { column: c.to_string() })
        .collect();
    if !missing.is_empty() {
        return Err(missing);
    }
    Err(vec![LoadError::HeaderMismatch { expected: expected.join(","), found: found.join(",") }])
}

fn csv_error(e: &csv::Error) -> LoadError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.kind() {
        csv::ErrorKind::Io(io) => LoadError::Io(io.to_string()),
        _ => LoadError::Csv { line, message: e.to_string() },
    }
}

/// Typed access to the cells of one data row.
struct Row<'a> {
    record: &'a StringRecord,
    line: usize,
    columns: &'a [&'a str],
}

impl<'a> Row<'a> {
    fn text(&self, i: usize) -> &'a str {
        self.record.get(i).unwrap_or("")
    }

    fn opt_f64(&self, i: usize, errors: &mut Vec<LoadError>) -> Option<f64> {
        let s = self.text(i);
        if s.is_empty() {
            return None;
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Some(v),
            _ => {
                errors.push(LoadError::BadNumber {
                    row: self.line,
                    column: self.columns[i].to_string(),
                    value: s.to_string(),
                });
                None
            }
        }
    }

    fn date(&self, i: usize, errors: &mut Vec<LoadError>) -> Option<NaiveDate> {
        let s = self.text(i);
        match NaiveDate::parse_from_str(s, "%Y-%m-%d") {
            Ok(d) => Some(d),
            Err(_) => {
                errors.push(LoadError::BadDate { row: self.line, value: s.to_string() });
                None
            }
        }
    }

    fn parsed<T: std::str::FromStr>(&self, i: usize, blank: T, errors: &mut Vec<LoadError>) -> Option<T> {
        let s = self.text(i);
        if s.is_empty() {
            return Some(blank);
        }
        match s.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                errors.push(LoadError::BadEnum {
                    row: self.line,
                    column: self.columns[i].to_string(),
                    value: s.to_string(),
                });
                None
            }
        }
    }

    fn violation(&self, field: &str, reason: &str) -> LoadError {
        LoadError::InvariantViolation { row: self.line, field: field.to_string(), reason: reason.to_string() }
    }
}

/// A generator record with the file line it was read from.
#[derive(Debug, Clone, PartialEq)]
pub struct FleetRow {
    pub line: usize,
    pub record: GeneratorRecord,
}

/// Parses fleet rows, applying defaults to blank optional cells and
/// checking every record invariant.
pub fn read_generators<R: Read>(r: R) -> Result<Vec<FleetRow>, Vec<LoadError>> {
    let mut rdr = reader(r);
    check_header(&mut rdr, &FLEET_COLUMNS)?;
    let mut errors = Vec::new();
    let mut rows: Vec<FleetRow> = Vec::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (i, result) in rdr.records().enumerate() {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                errors.push(csv_error(&e));
                continue;
            }
        };
        let row = Row { record: &record, line: i + 2, columns: &FLEET_COLUMNS };
        let before = errors.len();
        let Some(g) = parse_generator(&row, &mut errors) else { continue };
        if errors.len() > before {
            continue;
        }
        for v in g.violations() {
            errors.push(row.violation(v.field, &v.reason));
        }
        if seen.insert(g.id.clone(), row.line).is_some() {
            errors.push(LoadError::DuplicateId { row: row.line, id: g.id.clone() });
            continue;
        }
        rows.push(FleetRow { line: row.line, record: g });
    }
    if errors.is_empty() {
        Ok(rows)
    } else {
        Err(errors)
    }
}

fn parse_generator(row: &Row<'_>, errors: &mut Vec<LoadError>) -> Option<GeneratorRecord> {
    let technology = match row.text(2) {
        "" => {
            errors.push(row.violation("technology", "is required"));
            None
        }
        _ => row.parsed(2, Technology::Other, errors),
    };
    let water_source = row.parsed(5, WaterSource::None, errors);
    let fuel = row.parsed(6, Fuel::None, errors);
    let capacity = row.opt_f64(3, errors);
    let [head, hydro_eff, net_eff, k_os, tl_max, dtl_max, n_cc, sigma, t_app, k_sens, gamma, c_t, hub] =
        [7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19].map(|i| row.opt_f64(i, errors));
    let (technology, water_source, fuel) = (technology?, water_source?, fuel?);
    let installed_capacity = match capacity {
        Some(c) => c,
        None if row.text(3).is_empty() => {
            errors.push(row.violation("installed_capacity_mw", "is required"));
            return None;
        }
        None => return None,
    };

    let hydro = match technology {
        Technology::Hydro => {
            head.map(|head| HydroSpec { head, efficiency: hydro_eff.unwrap_or(defaults::HYDRO_EFFICIENCY) })
        }
        _ => None,
    };
    let thermal = match technology {
        t if t.is_steam() => net_eff.map(|net_efficiency| ThermalSpec {
            net_efficiency,
            heat_sink_fraction: k_os.unwrap_or_else(|| defaults::heat_sink_fraction(fuel)),
            max_discharge_temp: tl_max.unwrap_or(defaults::MAX_DISCHARGE_TEMP),
            max_condenser_rise: dtl_max,
            cycles_of_concentration: n_cc.unwrap_or(defaults::CYCLES_OF_CONCENTRATION),
            water_air_ratio: sigma.unwrap_or(defaults::WATER_AIR_RATIO),
            tower_approach: t_app.unwrap_or(defaults::TOWER_APPROACH),
            sensible_fraction: k_sens.unwrap_or(defaults::SENSIBLE_FRACTION),
            stream_fraction: gamma.unwrap_or(defaults::STREAM_FRACTION),
        }),
        _ => None,
    };
    let pv = (technology == Technology::SolarPV).then(|| PvSpec {
        thermal_coefficient: c_t.unwrap_or(defaults::PV_THERMAL_COEFFICIENT),
        coefficients: EfficiencyCoefficients::default(),
    });
    let wind = match technology {
        Technology::Wind => hub.map(|hub_height| WindSpec { hub_height, curve_id: row.text(20).to_string() }),
        _ => None,
    };
    Some(GeneratorRecord {
        id: row.text(0).to_string(),
        name: row.text(1).to_string(),
        technology,
        installed_capacity,
        site_id: row.text(4).to_string(),
        water_source,
        fuel,
        hydro,
        thermal,
        pv,
        wind,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes records with every default made explicit.
pub fn write_generators<'a, W: Write>(
    w: W,
    generators: impl IntoIterator<Item = &'a GeneratorRecord>,
) -> csv::Result<()> {
    let mut wtr = WriterBuilder::new().from_writer(w);
    wtr.write_record(FLEET_COLUMNS)?;
    for g in generators {
        let t = g.thermal.as_ref();
        let row = [
            g.id.clone(),
            g.name.clone(),
            g.technology.to_string(),
            g.installed_capacity.to_string(),
            g.site_id.clone(),
            if g.water_source == WaterSource::None { String::new() } else { g.water_source.to_string() },
            if g.fuel == Fuel::None { String::new() } else { g.fuel.to_string() },
            fmt_opt(g.hydro.map(|h| h.head)),
            fmt_opt(g.hydro.map(|h| h.efficiency)),
            fmt_opt(t.map(|t| t.net_efficiency)),
            fmt_opt(t.map(|t| t.heat_sink_fraction)),
            fmt_opt(t.map(|t| t.max_discharge_temp)),
            fmt_opt(t.and_then(|t| t.max_condenser_rise)),
            fmt_opt(t.map(|t| t.cycles_of_concentration)),
            fmt_opt(t.map(|t| t.water_air_ratio)),
            fmt_opt(t.map(|t| t.tower_approach)),
            fmt_opt(t.map(|t| t.sensible_fraction)),
            fmt_opt(t.map(|t| t.stream_fraction)),
            fmt_opt(g.pv.map(|p| p.thermal_coefficient)),
            fmt_opt(g.wind.as_ref().map(|w| w.hub_height)),
            g.wind.as_ref().map(|w| w.curve_id.clone()).unwrap_or_default(),
        ];
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Per-site rows gathered before series assembly.
struct SiteRows<const N: usize> {
    rows: Vec<DayRow<N>>,
}

impl<const N: usize> Default for SiteRows<N> {
    fn default() -> Self {
        SiteRows { rows: Vec::new() }
    }
}

/// Date, source line and channel cells of one input row.
type DayRow<const N: usize> = (NaiveDate, usize, [Option<f64>; N]);

/// Sorts one site's rows by date and rejects duplicates and gaps.
fn ordered_days<const N: usize>(
    site: &str,
    mut rows: Vec<DayRow<N>>,
    errors: &mut Vec<LoadError>,
) -> Option<Vec<DayRow<N>>> {
    rows.sort_by_key(|(d, line, _)| (*d, *line));
    let mut ok = true;
    for pair in rows.windows(2) {
        let (a, b) = (pair[0].0, pair[1].0);
        if a == b {
            errors.push(LoadError::DuplicateDate { row: pair[1].1, site: site.to_string(), date: b });
            ok = false;
        } else if (b - a).num_days() != 1 {
            errors.push(LoadError::DateGap { site: site.to_string(), after: a, next: b });
            ok = false;
        }
    }
    ok.then_some(rows)
}

fn read_site_rows<R: Read, const N: usize>(
    r: R,
    columns: &[&str],
    errors: &mut Vec<LoadError>,
) -> Option<BTreeMap<String, SiteRows<N>>> {
    let mut rdr = reader(r);
    if let Err(e) = check_header(&mut rdr, columns) {
        errors.extend(e);
        return None;
    }
    let mut sites: BTreeMap<String, SiteRows<N>> = BTreeMap::new();
    for (i, result) in rdr.records().enumerate() {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                errors.push(csv_error(&e));
                continue;
            }
        };
        let row = Row { record: &record, line: i + 2, columns };
        let site = row.text(0);
        if site.is_empty() {
            errors.push(row.violation("site_id", "is required"));
            continue;
        }
        let Some(date) = row.date(1, errors) else { continue };
        let values: [Option<f64>; N] = std::array::from_fn(|k| row.opt_f64(k + 2, errors));
        sites.entry(site.to_string()).or_default().rows.push((date, row.line, values));
    }
    Some(sites)
}

fn build_series(
    site: &str,
    start: NaiveDate,
    column: &str,
    values: Vec<f64>,
    unit: Unit,
    errors: &mut Vec<LoadError>,
) -> Option<DailySeries> {
    match DailySeries::new(start, values, unit) {
        Ok(s) => Some(s),
        Err(e) => {
            errors.push(LoadError::InvariantViolation {
                row: 0,
                field: format!("{column} at site {site}"),
                reason: e.to_string(),
            });
            None
        }
    }
}

pub fn read_hydrology<R: Read>(r: R) -> Result<BTreeMap<String, SiteHydrology>, Vec<LoadError>> {
    let mut errors = Vec::new();
    let Some(sites) = read_site_rows::<R, 2>(r, &HYDROLOGY_COLUMNS, &mut errors) else {
        return Err(errors);
    };
    let mut out = BTreeMap::new();
    for (site, rows) in sites {
        let Some(rows) = ordered_days(&site, rows.rows, &mut errors) else { continue };
        let start = rows[0].0;
        let mut flow = Vec::with_capacity(rows.len());
        let mut temp = Vec::with_capacity(rows.len());
        let mut complete = true;
        for (_, line, [q, t]) in &rows {
            for (value, column) in [(q, "streamflow_m3s"), (t, "water_temp_c")] {
                if value.is_none() {
                    errors.push(LoadError::InvariantViolation {
                        row: *line,
                        field: column.to_string(),
                        reason: "is required".to_string(),
                    });
                    complete = false;
                }
            }
            if let Some(q) = q {
                if *q < 0.0 {
                    errors.push(LoadError::InvariantViolation {
                        row: *line,
                        field: "streamflow_m3s".to_string(),
                        reason: "must be non-negative".to_string(),
                    });
                    complete = false;
                }
            }
            flow.push(q.unwrap_or(0.0));
            temp.push(t.unwrap_or(0.0));
        }
        if !complete {
            continue;
        }
        let streamflow =
            build_series(&site, start, "streamflow_m3s", flow, Unit::CubicMetresPerSecond, &mut errors);
        let water_temperature =
            build_series(&site, start, "water_temp_c", temp, Unit::DegreesCelsius, &mut errors);
        if let (Some(streamflow), Some(water_temperature)) = (streamflow, water_temperature) {
            out.insert(site.clone(), SiteHydrology { site_id: site, streamflow, water_temperature });
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}

fn weather_value_violation(channel: WeatherChannel, v: f64) -> Option<&'static str> {
    match channel {
        WeatherChannel::RelativeHumidity if !(0.0..=100.0).contains(&v) => Some("must be in [0, 100]"),
        WeatherChannel::Pressure if v <= 0.0 => Some("must be positive"),
        WeatherChannel::Irradiance
        | WeatherChannel::Wind2m
        | WeatherChannel::Wind10m
        | WeatherChannel::Wind50m
            if v < 0.0 =>
        {
            Some("must be non-negative")
        }
        _ => None,
    }
}

pub fn read_weather<R: Read>(r: R) -> Result<BTreeMap<String, SiteWeather>, Vec<LoadError>> {
    let mut errors = Vec::new();
    let Some(sites) = read_site_rows::<R, 7>(r, &WEATHER_COLUMNS, &mut errors) else {
        return Err(errors);
    };
    let mut out = BTreeMap::new();
    for (site, rows) in sites {
        let Some(rows) = ordered_days(&site, rows.rows, &mut errors) else { continue };
        let start = rows[0].0;
        let mut weather = SiteWeather {
            site_id: site.clone(),
            dry_bulb: None,
            relative_humidity: None,
            pressure: None,
            irradiance: None,
            wind_2m: None,
            wind_10m: None,
            wind_50m: None,
        };
        for (k, channel) in WeatherChannel::ALL.into_iter().enumerate() {
            let present = rows.iter().filter(|r| r.2[k].is_some()).count();
            if present == 0 {
                continue;
            }
            if present < rows.len() {
                let line = rows.iter().find(|r| r.2[k].is_none()).map(|r| r.1).unwrap_or(0);
                errors.push(LoadError::PartialChannel {
                    row: line,
                    site: site.clone(),
                    channel: channel.column().to_string(),
                });
                continue;
            }
            let mut bad = false;
            for (_, line, values) in &rows {
                let v = values[k].expect("checked present");
                if let Some(reason) = weather_value_violation(channel, v) {
                    errors.push(LoadError::InvariantViolation {
                        row: *line,
                        field: channel.column().to_string(),
                        reason: reason.to_string(),
                    });
                    bad = true;
                }
            }
            if bad {
                continue;
            }
            let values = rows.iter().map(|r| r.2[k].expect("checked present")).collect();
            *weather.channel_mut(channel) =
                build_series(&site, start, channel.column(), values, channel.unit(), &mut errors);
        }
        out.insert(site, weather);
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}

/// Reads `curve_id,speed_ms,power_fraction` rows; knots must be listed in
/// increasing speed within each curve.
pub fn read_curves<R: Read>(r: R) -> Result<BTreeMap<String, WindPowerCurve>, Vec<LoadError>> {
    let mut rdr = reader(r);
    check_header(&mut rdr, &CURVE_COLUMNS)?;
    let mut errors = Vec::new();
    let mut points: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (i, result) in rdr.records().enumerate() {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                errors.push(csv_error(&e));
                continue;
            }
        };
        let row = Row { record: &record, line: i + 2, columns: &CURVE_COLUMNS };
        let id = row.text(0);
        let speed = row.opt_f64(1, &mut errors);
        let fraction = row.opt_f64(2, &mut errors);
        match (id.is_empty(), speed, fraction) {
            (false, Some(s), Some(f)) => points.entry(id.to_string()).or_default().push((s, f)),
            (true, ..) => errors.push(row.violation("curve_id", "is required")),
            _ if row.text(1).is_empty() || row.text(2).is_empty() => {
                errors.push(row.violation("speed_ms/power_fraction", "are required"))
            }
            _ => {}
        }
    }
    let mut curves = BTreeMap::new();
    for (id, pts) in points {
        match WindPowerCurve::new(id.clone(), pts) {
            Ok(c) => {
                curves.insert(id, c);
            }
            Err(e) => errors.push(e.into()),
        }
    }
    if errors.is_empty() {
        Ok(curves)
    } else {
        Err(errors)
    }
}

pub fn write_curves<'a, W: Write>(
    w: W,
    curves: impl IntoIterator<Item = &'a WindPowerCurve>,
) -> csv::Result<()> {
    let mut wtr = WriterBuilder::new().from_writer(w);
    wtr.write_record(CURVE_COLUMNS)?;
    for c in curves {
        for (s, f) in c.points() {
            wtr.write_record([c.id().to_string(), s.to_string(), f.to_string()])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_hydrology<'a, W: Write>(
    w: W,
    sites: impl IntoIterator<Item = &'a SiteHydrology>,
) -> csv::Result<()> {
    let mut wtr = WriterBuilder::new().from_writer(w);
    wtr.write_record(HYDROLOGY_COLUMNS)?;
    for s in sites {
        for (i, date) in s.streamflow.dates().enumerate() {
            wtr.write_record([
                s.site_id.clone(),
                date.to_string(),
                s.streamflow.values()[i].to_string(),
                s.water_temperature.values()[i].to_string(),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_weather<'a, W: Write>(
    w: W,
    sites: impl IntoIterator<Item = &'a SiteWeather>,
) -> csv::Result<()> {
    let mut wtr = WriterBuilder::new().from_writer(w);
    wtr.write_record(WEATHER_COLUMNS)?;
    for s in sites {
        let Some(first) = WeatherChannel::ALL.iter().find_map(|&c| s.channel(c)) else { continue };
        for (i, date) in first.dates().enumerate() {
            let mut row = vec![s.site_id.clone(), date.to_string()];
            for c in WeatherChannel::ALL {
                row.push(s.channel(c).map(|x| x.values()[i].to_string()).unwrap_or_default());
            }
            wtr.write_record(&row)?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// Replacement relative-efficiency coefficients for PV generators.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PvCoefficientOverrides {
    /// Applies to every PV generator without its own row.
    pub fleet_default: Option<EfficiencyCoefficients>,
    pub per_generator: BTreeMap<String, EfficiencyCoefficients>,
}

impl PvCoefficientOverrides {
    pub fn for_generator(&self, id: &str) -> Option<EfficiencyCoefficients> {
        self.per_generator.get(id).copied().or(self.fleet_default)
    }
}

/// Reads `k1..k6`, optionally preceded by a `generator_id` column. A row
/// with a blank generator id sets the fleet-wide default.
pub fn read_pv_coefficients<R: Read>(r: R) -> Result<PvCoefficientOverrides, Vec<LoadError>> {
    let mut rdr = reader(r);
    let headers = rdr.headers().map_err(|e| vec![csv_error(&e)])?.clone();
    let found: Vec<&str> = headers.iter().collect();
    let with_id: Vec<&str> = std::iter::once("generator_id").chain(PV_COEFFICIENT_COLUMNS).collect();
    let offset = if found == PV_COEFFICIENT_COLUMNS {
        0
    } else if found == with_id {
        1
    } else {
        return Err(vec![LoadError::HeaderMismatch {
            expected: format!("{} or {}", PV_COEFFICIENT_COLUMNS.join(","), with_id.join(",")),
            found: found.join(","),
        }]);
    };
    let columns: Vec<&str> = found.clone();
    let mut errors = Vec::new();
    let mut out = PvCoefficientOverrides::default();
    for (i, result) in rdr.records().enumerate() {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                errors.push(csv_error(&e));
                continue;
            }
        };
        let row = Row { record: &record, line: i + 2, columns: &columns };
        let ks: [Option<f64>; 6] = std::array::from_fn(|k| row.opt_f64(k + offset, &mut errors));
        if ks.iter().any(Option::is_none) {
            if ks.iter().enumerate().any(|(k, v)| v.is_none() && row.text(k + offset).is_empty()) {
                errors.push(row.violation("k1..k6", "are all required"));
            }
            continue;
        }
        let coeffs = EfficiencyCoefficients(ks.map(|k| k.expect("checked")));
        let id = if offset == 1 { row.text(0) } else { "" };
        if id.is_empty() {
            out.fleet_default = Some(coeffs);
        } else {
            out.per_generator.insert(id.to_string(), coeffs);
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}

/// Input files for one run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FleetPaths {
    pub fleet: PathBuf,
    pub hydrology: PathBuf,
    pub weather: PathBuf,
    /// Bundled default curves are used when absent.
    pub curves: Option<PathBuf>,
    pub pv_coefficients: Option<PathBuf>,
}

fn file_label(path: &Path) -> String {
    path.display().to_string()
}

fn open(path: &Path) -> Result<File, LoadErrors> {
    File::open(path)
        .map_err(|e| LoadErrors::tagged(&file_label(path), vec![LoadError::Io(format!("cannot open: {e}"))]))
}

fn read_file<T>(
    path: &Path,
    parse: impl FnOnce(File) -> Result<T, Vec<LoadError>>,
    issues: &mut LoadErrors,
) -> Option<T> {
    let file = match open(path) {
        Ok(f) => f,
        Err(e) => {
            issues.0.extend(e.0);
            return None;
        }
    };
    match parse(file) {
        Ok(v) => Some(v),
        Err(errors) => {
            issues.0.extend(LoadErrors::tagged(&file_label(path), errors).0);
            None
        }
    }
}

/// Reads only the generator file.
pub fn load_generators(path: &Path) -> Result<Vec<FleetRow>, LoadErrors> {
    let mut issues = LoadErrors::default();
    match read_file(path, read_generators, &mut issues) {
        Some(rows) => Ok(rows),
        None => Err(issues),
    }
}

/// Loads and cross-checks every input file, reporting all problems found.
pub fn load_fleet(paths: &FleetPaths) -> Result<FleetRegistry, LoadErrors> {
    let mut issues = LoadErrors::default();
    let rows = read_file(&paths.fleet, read_generators, &mut issues);
    let hydrology = read_file(&paths.hydrology, read_hydrology, &mut issues);
    let weather = read_file(&paths.weather, read_weather, &mut issues);
    let curves = match &paths.curves {
        Some(p) => read_file(p, read_curves, &mut issues),
        None => Some(crate::wind::default_curves()),
    };
    let overrides = match &paths.pv_coefficients {
        Some(p) => read_file(p, read_pv_coefficients, &mut issues),
        None => Some(PvCoefficientOverrides::default()),
    };
    let (Some(rows), Some(hydrology), Some(weather), Some(curves), Some(overrides)) =
        (rows, hydrology, weather, curves, overrides)
    else {
        return Err(issues);
    };
    match assemble(rows, hydrology, weather, curves, &overrides) {
        Ok(reg) if issues.is_empty() => Ok(reg),
        Ok(_) => Err(issues),
        Err(errors) => {
            issues.0.extend(LoadErrors::tagged(&file_label(&paths.fleet), errors).0);
            Err(issues)
        }
    }
}

/// Joins parsed inputs into a registry, checking that every site and
/// power curve a generator names exists.
pub fn assemble(
    rows: Vec<FleetRow>,
    hydrology: BTreeMap<String, SiteHydrology>,
    weather: BTreeMap<String, SiteWeather>,
    wind_curves: BTreeMap<String, WindPowerCurve>,
    overrides: &PvCoefficientOverrides,
) -> Result<FleetRegistry, Vec<LoadError>> {
    let mut errors = Vec::new();
    let mut generators = BTreeMap::new();
    for FleetRow { line, mut record } in rows {
        if !hydrology.contains_key(&record.site_id) && !weather.contains_key(&record.site_id) {
            errors.push(LoadError::UnresolvedSite { row: line, site: record.site_id.clone() });
        }
        if let Some(w) = &record.wind {
            if !wind_curves.contains_key(&w.curve_id) {
                errors.push(LoadError::UnresolvedCurve { row: line, curve: w.curve_id.clone() });
            }
        }
        if let (Some(pv), Some(k)) = (record.pv.as_mut(), overrides.for_generator(&record.id)) {
            pv.coefficients = k;
        }
        generators.insert(record.id.clone(), record);
    }
    if errors.is_empty() {
        Ok(FleetRegistry { generators, hydrology, weather, wind_curves })
    } else {
        Err(errors)
    }
}

/// Writes all four registry files into `dir` using the standard names.
pub fn write_registry(reg: &FleetRegistry, dir: &Path) -> std::io::Result<FleetPaths> {
    std::fs::create_dir_all(dir)?;
    let paths = FleetPaths {
        fleet: dir.join("fleet.csv"),
        hydrology: dir.join("hydrology.csv"),
        weather: dir.join("weather.csv"),
        curves: Some(dir.join("curves.csv")),
        pv_coefficients: None,
    };
    let io = |e: csv::Error| std::io::Error::other(e.to_string());
    write_generators(File::create(&paths.fleet)?, reg.generators.values()).map_err(io)?;
    write_hydrology(File::create(&paths.hydrology)?, reg.hydrology.values()).map_err(io)?;
    write_weather(File::create(&paths.weather)?, reg.weather.values()).map_err(io)?;
    write_curves(File::create(paths.curves.as_ref().expect("set above"))?, reg.wind_curves.values())
        .map_err(io)?;
    Ok(paths)
}
