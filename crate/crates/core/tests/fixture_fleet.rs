use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use droughtcap::aggregate::{derate_fleet, Category, DerateOptions};
use droughtcap::fleet::Technology;
use droughtcap::ingest::{load_fleet, write_registry, FleetPaths};
use droughtcap::report::{write_report_csv, write_summary_json, Summary};
use droughtcap::series::DateSpan;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn paths() -> FleetPaths {
    let d = fixtures();
    FleetPaths {
        fleet: d.join("fleet.csv"),
        hydrology: d.join("hydrology.csv"),
        weather: d.join("weather.csv"),
        curves: Some(d.join("curves.csv")),
        pv_coefficients: None,
    }
}

fn span(a: (u32, u32), b: (u32, u32)) -> DateSpan {
    DateSpan::new(
        NaiveDate::from_ymd_opt(2024, a.0, a.1).unwrap(),
        NaiveDate::from_ymd_opt(2024, b.0, b.1).unwrap(),
    )
    .unwrap()
}

#[test]
fn registry_round_trips_through_files() {
    let reg = load_fleet(&paths()).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let written = write_registry(&reg, tmp.path()).unwrap();
    assert_eq!(load_fleet(&written).unwrap(), reg);
}

#[test]
fn kernels_are_routed_by_technology() {
    let reg = load_fleet(&paths()).unwrap();
    let s = span((7, 1), (7, 31));
    let r = derate_fleet(&reg, s, &DerateOptions::default()).unwrap();
    for g in reg.generators.values() {
        let series = &r.per_generator[&g.id];
        assert_eq!(series.category, Category::of(g.technology));
        if !g.is_at_risk() {
            assert!(series.available.values().iter().all(|&v| v == g.installed_capacity), "{}", g.id);
            continue;
        }
        let hyd = &reg.hydrology[&g.site_id];
        let offset = (s.start - hyd.streamflow.start()).num_days() as usize;
        for (t, &mw) in series.available.values().iter().enumerate() {
            let expected = match g.technology {
                Technology::Hydro => {
                    let h = g.hydro.unwrap();
                    let q = hyd.streamflow.values()[offset + t];
                    (h.efficiency * 1000.0 * 9.81 * q * h.head / 1e6).min(g.installed_capacity)
                }
                Technology::CombustionTurbine => {
                    let td = reg.weather[&g.site_id].dry_bulb.as_ref().unwrap().values()[offset + t];
                    g.installed_capacity * (1.15 - 0.0083 * td).clamp(0.0, 1.0)
                }
                _ => continue,
            };
            assert!(
                (mw - expected).abs() <= 1e-9 * g.installed_capacity,
                "{} day {t}: {mw} vs {expected}",
                g.id
            );
        }
    }
}

#[test]
fn ocean_cooled_unit_is_not_derated() {
    let reg = load_fleet(&paths()).unwrap();
    let r = derate_fleet(&reg, span((6, 1), (8, 31)), &DerateOptions::default()).unwrap();
    let ocean = &r.per_generator["ot_ocean"];
    assert!(!ocean.at_risk);
    assert!(ocean.available.values().iter().all(|&v| v == 800.0));
}

/// Set `DROUGHTCAP_BLESS=1` to rewrite the golden files.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("DROUGHTCAP_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(actual, expected, "{name} differs from golden copy");
}

#[test]
fn report_files_match_golden_copies() {
    let reg = load_fleet(&paths()).unwrap();
    let r = derate_fleet(&reg, span((7, 20), (7, 22)), &DerateOptions::default()).unwrap();
    let mut csv = Vec::new();
    write_report_csv(&r, &mut csv).unwrap();
    golden("report.csv", &String::from_utf8(csv).unwrap());
    let mut json = Vec::new();
    write_summary_json(&Summary::new(&r, None), &mut json).unwrap();
    golden("summary.json", &String::from_utf8(json).unwrap());
}
