//! Regenerates the synthetic fixture fleet under `fixtures/`.
//!
//! ```text
//! cargo run -p droughtcap-core --example make_fixture -- fixtures
//! ```

use std::f64::consts::PI;
use std::path::PathBuf;

use chrono::NaiveDate;
use droughtcap::fleet::{
    defaults, FleetRegistry, Fuel, GeneratorRecord, HydroSpec, PvSpec, SiteHydrology, SiteWeather,
    Technology, ThermalSpec, WaterSource, WindSpec,
};
use droughtcap::ingest::write_registry;
use droughtcap::pv::EfficiencyCoefficients;
use droughtcap::scenario::standard_scenarios;
use droughtcap::series::{DailySeries, Unit};
use droughtcap::wind::default_curves;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const DAYS: usize = 92;

fn start() -> NaiveDate {
    NaiveDate::from_ymd_opt(2024, 6, 1).unwrap()
}

/// Summer arc peaking late July, in [0, 1].
fn season(t: usize) -> f64 {
    (PI * t as f64 / (DAYS - 1) as f64).sin()
}

fn series(values: Vec<f64>, unit: Unit) -> DailySeries {
    DailySeries::new(start(), values, unit).unwrap()
}

struct SiteClimate {
    /// Mean flow at the start of summer, m³/s.
    base_flow: f64,
    /// Peak-summer dry-bulb, °C.
    peak_temp: f64,
    /// Water temperature at the summer peak, °C.
    peak_water: f64,
}

fn make_site(id: &str, c: &SiteClimate, rng: &mut StdRng) -> (SiteHydrology, SiteWeather) {
    let mut flow = Vec::with_capacity(DAYS);
    let mut water = Vec::with_capacity(DAYS);
    let mut dry = Vec::with_capacity(DAYS);
    let mut rh = Vec::with_capacity(DAYS);
    let mut pr = Vec::with_capacity(DAYS);
    let mut irr = Vec::with_capacity(DAYS);
    let (mut w2, mut w10, mut w50) = (Vec::new(), Vec::new(), Vec::new());
    for t in 0..DAYS {
        let s = season(t);
        // recession through the summer with storm noise
        let recession = 1.0 - 0.55 * t as f64 / DAYS as f64;
        flow.push(c.base_flow * recession * rng.gen_range(0.75..1.3));
        water.push(c.peak_water - 8.0 * (1.0 - s) + rng.gen_range(-1.0..1.0));
        let td = c.peak_temp - 9.0 * (1.0 - s) + rng.gen_range(-3.0..3.0);
        dry.push(td);
        rh.push(rng.gen_range(30.0..85.0));
        pr.push(rng.gen_range(99.5..102.0));
        irr.push(rng.gen_range(350.0..950.0));
        let v10: f64 = rng.gen_range(2.0..9.0);
        let shear = rng.gen_range(0.6..1.6);
        w2.push(v10 - shear * (10f64 / 2.0).ln() * 0.5);
        w10.push(v10);
        w50.push(v10 + shear * (50f64 / 10.0).ln() * 0.5);
    }
    let clamp0 = |v: Vec<f64>| v.into_iter().map(|x| x.max(0.0)).collect::<Vec<_>>();
    (
        SiteHydrology {
            site_id: id.into(),
            streamflow: series(flow, Unit::CubicMetresPerSecond),
            water_temperature: series(water, Unit::DegreesCelsius),
        },
        SiteWeather {
            site_id: id.into(),
            dry_bulb: Some(series(dry, Unit::DegreesCelsius)),
            relative_humidity: Some(series(rh, Unit::Percent)),
            pressure: Some(series(pr, Unit::Kilopascal)),
            irradiance: Some(series(irr, Unit::WattsPerSquareMetre)),
            wind_2m: Some(series(clamp0(w2), Unit::MetresPerSecond)),
            wind_10m: Some(series(w10, Unit::MetresPerSecond)),
            wind_50m: Some(series(w50, Unit::MetresPerSecond)),
        },
    )
}

fn base(id: &str, tech: Technology, cap: f64, site: &str, ws: WaterSource, fuel: Fuel) -> GeneratorRecord {
    GeneratorRecord {
        id: id.into(),
        name: format!("Synthetic {id}"),
        technology: tech,
        installed_capacity: cap,
        site_id: site.into(),
        water_source: ws,
        fuel,
        hydro: None,
        thermal: None,
        pv: None,
        wind: None,
    }
}

fn thermal(eta: f64, fuel: Fuel, dtl: Option<f64>, n_cc: f64, t_app: f64) -> ThermalSpec {
    ThermalSpec {
        net_efficiency: eta,
        heat_sink_fraction: defaults::heat_sink_fraction(fuel),
        max_discharge_temp: defaults::MAX_DISCHARGE_TEMP,
        max_condenser_rise: dtl,
        cycles_of_concentration: n_cc,
        water_air_ratio: defaults::WATER_AIR_RATIO,
        tower_approach: t_app,
        sensible_fraction: defaults::SENSIBLE_FRACTION,
        stream_fraction: defaults::STREAM_FRACTION,
    }
}

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    let mut rng = StdRng::seed_from_u64(20240601);
    let mut reg = FleetRegistry { wind_curves: default_curves(), ..Default::default() };
    let add_site = |reg: &mut FleetRegistry, id: &str, c: SiteClimate, rng: &mut StdRng| {
        let (h, w) = make_site(id, &c, rng);
        reg.hydrology.insert(id.into(), h);
        reg.weather.insert(id.into(), w);
    };

    // Hydro: each plant on its own reach, always below rated flow.
    let hydro = [(120.0, 45.0), (60.0, 30.0), (250.0, 80.0), (35.0, 20.0), (90.0, 55.0), (180.0, 38.0)];
    for (i, (cap, head)) in hydro.into_iter().enumerate() {
        let site = format!("HY{}", i + 1);
        let rated = cap * 1e6 / (1000.0 * 9.81 * head * defaults::HYDRO_EFFICIENCY);
        let climate = SiteClimate { base_flow: 0.55 * rated, peak_temp: 30.0, peak_water: 21.0 };
        add_site(&mut reg, &site, climate, &mut rng);
        let mut g = base(
            &format!("hydro_{:02}", i + 1),
            Technology::Hydro,
            cap,
            &site,
            WaterSource::FreshSurface,
            Fuel::None,
        );
        g.hydro = Some(HydroSpec { head, efficiency: defaults::HYDRO_EFFICIENCY });
        reg.generators.insert(g.id.clone(), g);
    }

    // Thermal river sites: warm mainstem, mid river, cool tributary, low creek.
    add_site(&mut reg, "RV1", SiteClimate { base_flow: 140.0, peak_temp: 35.0, peak_water: 29.0 }, &mut rng);
    add_site(&mut reg, "RV2", SiteClimate { base_flow: 90.0, peak_temp: 33.0, peak_water: 26.5 }, &mut rng);
    add_site(&mut reg, "RV3", SiteClimate { base_flow: 60.0, peak_temp: 31.0, peak_water: 24.0 }, &mut rng);
    add_site(&mut reg, "CK1", SiteClimate { base_flow: 1.1, peak_temp: 34.0, peak_water: 25.0 }, &mut rng);
    add_site(&mut reg, "CST", SiteClimate { base_flow: 0.0, peak_temp: 28.0, peak_water: 20.0 }, &mut rng);
    add_site(&mut reg, "DST", SiteClimate { base_flow: 0.0, peak_temp: 38.0, peak_water: 20.0 }, &mut rng);
    add_site(&mut reg, "PLN", SiteClimate { base_flow: 0.0, peak_temp: 32.0, peak_water: 20.0 }, &mut rng);

    let ot = [
        ("ot_01", 600.0, "RV1", 0.34, Fuel::Coal, 10.0),
        ("ot_02", 450.0, "RV1", 0.33, Fuel::Coal, 8.0),
        ("ot_03", 900.0, "RV2", 0.33, Fuel::Nuclear, 11.0),
        ("ot_04", 300.0, "RV3", 0.36, Fuel::NaturalGas, 9.0),
        ("ot_05", 250.0, "RV2", 0.32, Fuel::Coal, 12.0),
    ];
    for (id, cap, site, eta, fuel, dtl) in ot {
        let mut g = base(id, Technology::SteamOnceThrough, cap, site, WaterSource::FreshSurface, fuel);
        g.thermal =
            Some(thermal(eta, fuel, Some(dtl), defaults::CYCLES_OF_CONCENTRATION, defaults::TOWER_APPROACH));
        reg.generators.insert(id.into(), g);
    }
    let mut g =
        base("ot_ocean", Technology::SteamOnceThrough, 800.0, "CST", WaterSource::Ocean, Fuel::Nuclear);
    g.thermal = Some(thermal(
        0.33,
        Fuel::Nuclear,
        Some(10.0),
        defaults::CYCLES_OF_CONCENTRATION,
        defaults::TOWER_APPROACH,
    ));
    reg.generators.insert(g.id.clone(), g);

    let rc = [
        ("rc_01", 700.0, "RV3", 0.35, Fuel::Coal, 5.0, 5.0),
        ("rc_02", 550.0, "CK1", 0.38, Fuel::NaturalGas, 4.0, 4.0),
        ("rc_03", 1100.0, "RV2", 0.33, Fuel::Nuclear, 6.0, 6.0),
        ("rc_04", 400.0, "CK1", 0.34, Fuel::Coal, 5.0, 5.5),
        ("rc_05", 350.0, "RV1", 0.37, Fuel::NaturalGas, 7.0, 4.5),
    ];
    for (id, cap, site, eta, fuel, n_cc, t_app) in rc {
        let mut g = base(id, Technology::SteamRecirculating, cap, site, WaterSource::FreshSurface, fuel);
        g.thermal = Some(thermal(eta, fuel, None, n_cc, t_app));
        reg.generators.insert(id.into(), g);
    }

    for (i, (cap, site)) in [(180.0, "DST"), (120.0, "PLN"), (240.0, "RV1"), (90.0, "DST"), (150.0, "CST")]
        .into_iter()
        .enumerate()
    {
        let id = format!("ct_{:02}", i + 1);
        let g = base(&id, Technology::CombustionTurbine, cap, site, WaterSource::None, Fuel::NaturalGas);
        reg.generators.insert(id, g);
    }

    for (i, (cap, site, c_t)) in
        [(100.0, "DST", 0.035), (60.0, "PLN", 0.03), (150.0, "DST", 0.045), (40.0, "CST", 0.028)]
            .into_iter()
            .enumerate()
    {
        let id = format!("pv_{:02}", i + 1);
        let mut g = base(&id, Technology::SolarPV, cap, site, WaterSource::None, Fuel::None);
        g.pv = Some(PvSpec { thermal_coefficient: c_t, coefficients: EfficiencyCoefficients::default() });
        reg.generators.insert(id, g);
    }

    for (i, (cap, site, hub, curve)) in [
        (200.0, "PLN", 100.0, "low_specific_power"),
        (150.0, "PLN", 80.0, "medium_specific_power"),
        (120.0, "CST", 120.0, "high_specific_power"),
    ]
    .into_iter()
    .enumerate()
    {
        let id = format!("wind_{:02}", i + 1);
        let mut g = base(&id, Technology::Wind, cap, site, WaterSource::None, Fuel::None);
        g.wind = Some(WindSpec { hub_height: hub, curve_id: curve.into() });
        reg.generators.insert(id, g);
    }

    let g = base("other_01", Technology::Other, 75.0, "PLN", WaterSource::Ground, Fuel::Other);
    reg.generators.insert(g.id.clone(), g);

    assert_eq!(reg.generators.len(), 30);
    write_registry(&reg, &out).expect("write fixture");

    let mut toml = String::new();
    for s in standard_scenarios() {
        toml.push_str(&format!(
            "[[scenario]]\nname = \"{}\"\nair_temp_delta_c = {:?}\nstreamflow_scale = {:?}\n\n",
            s.name, s.air_temp_delta, s.streamflow_scale
        ));
    }
    std::fs::write(out.join("scenarios.toml"), toml).expect("write scenarios");
    println!("wrote {} generators to {}", reg.generators.len(), out.display());
}
