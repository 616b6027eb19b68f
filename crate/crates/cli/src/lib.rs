//! Command implementations behind the `droughtcap` binary.

use std::fmt;
use std::fs;
use std::io;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use droughtcap::aggregate::{derate_fleet, AggregateError, CapacityReport, DerateOptions};
use droughtcap::fleet::FleetRegistry;
use droughtcap::ingest::{load_fleet, FleetPaths, LoadErrors};
use droughtcap::once_through::DischargeLimit;
use droughtcap::report::{write_report_dir, write_scenario_table, SCENARIO_TABLE_FILE};
use droughtcap::scenario::{apply_to_registry, load_scenarios, standard_scenarios, Scenario, ScenarioError};
use droughtcap::series::DateSpan;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_COMPUTE: u8 = 3;

/// Everything a derate or scenario run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: FleetPaths,
    pub scenario_path: Option<PathBuf>,
    pub date_start: NaiveDate,
    pub date_end: NaiveDate,
    pub output_dir: PathBuf,
    pub parallelism: NonZeroUsize,
    pub no_regulatory_limit: bool,
    /// Replaces every scenario's air-to-water temperature response.
    pub water_temp_response: Option<f64>,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Load(LoadErrors),
    Scenario(ScenarioError),
    Derate { scenario: Option<String>, source: AggregateError },
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Write { .. } => EXIT_IO,
            CliError::Load(e) if e.is_structural() => EXIT_IO,
            CliError::Load(_) => EXIT_VALIDATION,
            CliError::Scenario(ScenarioError::Io(_) | ScenarioError::Parse(_)) => EXIT_IO,
            CliError::Scenario(_) => EXIT_VALIDATION,
            CliError::Derate { source, .. } => match source {
                AggregateError::MissingSeries { .. }
                | AggregateError::MissingParameters { .. }
                | AggregateError::EmptyFleet => EXIT_VALIDATION,
                _ => EXIT_COMPUTE,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration: {m}"),
            CliError::Load(e) => write!(f, "{e}"),
            CliError::Scenario(e) => write!(f, "{e}"),
            CliError::Derate { scenario: Some(s), source } => write!(f, "scenario `{s}`: {source}"),
            CliError::Derate { scenario: None, source } => write!(f, "{source}"),
            CliError::Write { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl RunConfig {
    pub fn span(&self) -> Result<DateSpan, CliError> {
        DateSpan::new(self.date_start, self.date_end).ok_or_else(|| {
            CliError::Config(format!("start {} is after end {}", self.date_start, self.date_end))
        })
    }

    fn options(&self) -> DerateOptions {
        DerateOptions {
            discharge_limit: if self.no_regulatory_limit {
                DischargeLimit::Unregulated
            } else {
                DischargeLimit::Regulated
            },
        }
    }

    fn validate(&self) -> Result<DateSpan, CliError> {
        let span = self.span()?;
        let mut paths = vec![&self.inputs.fleet, &self.inputs.hydrology, &self.inputs.weather];
        paths.extend(self.inputs.curves.iter());
        paths.extend(self.inputs.pv_coefficients.iter());
        paths.extend(self.scenario_path.iter());
        let missing: Vec<String> =
            paths.iter().filter(|p| !p.is_file()).map(|p| p.display().to_string()).collect();
        if !missing.is_empty() {
            return Err(CliError::Config(format!("input file not found: {}", missing.join(", "))));
        }
        if let Some(r) = self.water_temp_response {
            if !r.is_finite() {
                return Err(CliError::Config("water temperature response must be finite".into()));
            }
        }
        Ok(span)
    }

    fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallelism.get())
            .build()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))
    }
}

fn load(config: &RunConfig) -> Result<FleetRegistry, CliError> {
    let reg = load_fleet(&config.inputs).map_err(CliError::Load)?;
    log::info!(
        "loaded {} generators, {} hydrology sites, {} weather sites",
        reg.generators.len(),
        reg.hydrology.len(),
        reg.weather.len()
    );
    Ok(reg)
}

fn derate(
    config: &RunConfig,
    pool: &rayon::ThreadPool,
    reg: &FleetRegistry,
    span: DateSpan,
    scenario: Option<&str>,
) -> Result<CapacityReport, CliError> {
    let opts = config.options();
    pool.install(|| derate_fleet(reg, span, &opts))
        .map_err(|source| CliError::Derate { scenario: scenario.map(str::to_owned), source })
}

fn write_dir(report: &CapacityReport, scenario: Option<&str>, dir: &Path) -> Result<(), CliError> {
    write_report_dir(report, scenario, dir).map_err(|source| CliError::Write { path: dir.to_owned(), source })
}

/// Derates the fleet once and writes `report.csv` and `summary.json`.
pub fn cmd_derate(config: &RunConfig) -> Result<CapacityReport, CliError> {
    let span = config.validate()?;
    let pool = config.pool()?;
    let reg = load(config)?;
    let report = derate(config, &pool, &reg, span, None)?;
    write_dir(&report, None, &config.output_dir)?;
    log::info!("wrote report for {} days to {}", span.len(), config.output_dir.display());
    Ok(report)
}

/// Scenarios from `--scenarios`, or the standard seven.
pub fn scenarios_for(config: &RunConfig) -> Result<Vec<Scenario>, CliError> {
    let list = match &config.scenario_path {
        Some(p) => load_scenarios(p).map_err(CliError::Scenario)?,
        None => standard_scenarios(),
    };
    Ok(match config.water_temp_response {
        Some(r) => list.into_iter().map(|s| s.with_water_temp_response(r)).collect(),
        None => list,
    })
}

/// Runs every scenario into `<out>/<name>/` and writes the cross-scenario
/// median table to `<out>/scenario_summary.csv`.
pub fn cmd_scenario(config: &RunConfig) -> Result<Vec<(String, CapacityReport)>, CliError> {
    let span = config.validate()?;
    let pool = config.pool()?;
    let scenarios = scenarios_for(config)?;
    let reg = load(config)?;
    let mut reports = Vec::with_capacity(scenarios.len());
    for s in &scenarios {
        log::info!("scenario {}", s.name);
        let perturbed = apply_to_registry(&reg, s).map_err(CliError::Scenario)?;
        let report = derate(config, &pool, &perturbed, span, Some(&s.name))?;
        write_dir(&report, Some(&s.name), &config.output_dir.join(&s.name))?;
        reports.push((s.name.clone(), report));
    }
    let table_path = config.output_dir.join(SCENARIO_TABLE_FILE);
    let rows: Vec<(String, &CapacityReport)> = reports.iter().map(|(n, r)| (n.clone(), r)).collect();
    fs::File::create(&table_path)
        .and_then(|f| write_scenario_table(&rows, f))
        .map_err(|source| CliError::Write { path: table_path, source })?;
    Ok(reports)
}

/// Outcome of `validate`: every problem found in the inputs.
#[derive(Debug)]
pub struct Validation {
    pub generators: usize,
    pub issues: Option<LoadErrors>,
}

impl Validation {
    pub fn exit_code(&self) -> u8 {
        match &self.issues {
            None => EXIT_OK,
            Some(e) if e.is_structural() => EXIT_IO,
            Some(_) => EXIT_VALIDATION,
        }
    }
}

/// Schema and invariant checks only.
pub fn cmd_validate(inputs: &FleetPaths) -> Validation {
    match load_fleet(inputs) {
        Ok(reg) => Validation { generators: reg.generators.len(), issues: None },
        Err(e) => Validation { generators: 0, issues: Some(e) },
    }
}
