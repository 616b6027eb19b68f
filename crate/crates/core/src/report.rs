//! Report files: long-form `report.csv`, `summary.json`, and the
//! cross-scenario median table.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::aggregate::{CapacityReport, Category, CfSummary};

pub const REPORT_FILE: &str = "report.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const SCENARIO_TABLE_FILE: &str = "scenario_summary.csv";

pub const REPORT_COLUMNS: [&str; 5] = ["date", "generator_id", "category", "available_mw", "installed_mw"];

/// One line of `report.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub date: NaiveDate,
    pub generator_id: String,
    pub category: String,
    pub available_mw: f64,
    pub installed_mw: f64,
}

/// Writes one row per date and generator, dates ascending, generators by id.
pub fn write_report_csv<W: Write>(report: &CapacityReport, out: W) -> io::Result<()> {
    let mut w = io::BufWriter::new(out);
    writeln!(w, "{}", REPORT_COLUMNS.join(","))?;
    for (t, date) in report.dates().enumerate() {
        for g in report.per_generator.values() {
            writeln!(
                w,
                "{},{},{},{},{}",
                date.format("%Y-%m-%d"),
                g.id,
                g.category,
                g.available.values()[t],
                g.installed_mw
            )?;
        }
    }
    w.flush()
}

pub fn read_report_csv<R: io::Read>(input: R) -> Result<Vec<ReportRow>, csv::Error> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize().collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategorySummary {
    pub installed_mw: f64,
    pub generators: usize,
    #[serde(flatten)]
    pub cf: CfSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub days: usize,
    pub fleet: CategorySummary,
    pub categories: BTreeMap<Category, CategorySummary>,
}

impl Summary {
    pub fn new(report: &CapacityReport, scenario: Option<&str>) -> Summary {
        let categories = report
            .per_category
            .iter()
            .map(|(cat, s)| {
                let generators = report.per_generator.values().filter(|g| g.category == *cat).count();
                (*cat, CategorySummary { installed_mw: s.installed_mw, generators, cf: report.summary[cat] })
            })
            .collect();
        Summary {
            scenario: scenario.map(str::to_owned),
            start: report.span.start,
            end: report.span.end,
            days: report.span.len(),
            fleet: CategorySummary {
                installed_mw: report.fleet_installed_mw,
                generators: report.per_generator.len(),
                cf: report.fleet_summary,
            },
            categories,
        }
    }
}

pub fn write_summary_json<W: Write>(summary: &Summary, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, summary)?;
    writeln!(out)
}

/// Writes `report.csv` and `summary.json` into `dir`, creating it if needed.
pub fn write_report_dir(report: &CapacityReport, scenario: Option<&str>, dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    write_report_csv(report, fs::File::create(dir.join(REPORT_FILE))?)?;
    write_summary_json(&Summary::new(report, scenario), fs::File::create(dir.join(SUMMARY_FILE))?)
}

/// Scenario × category table of median CF. Categories missing from the
/// fleet are left blank.
pub fn write_scenario_table<W: Write>(rows: &[(String, &CapacityReport)], out: W) -> io::Result<()> {
    let mut w = io::BufWriter::new(out);
    write!(w, "scenario,fleet")?;
    for cat in Category::ALL {
        write!(w, ",{cat}")?;
    }
    writeln!(w)?;
    for (name, report) in rows {
        write!(w, "{},{}", name, report.fleet_summary.median)?;
        for cat in Category::ALL {
            match report.summary.get(&cat) {
                Some(s) => write!(w, ",{}", s.median)?,
                None => write!(w, ",")?,
            }
        }
        writeln!(w)?;
    }
    w.flush()
}
