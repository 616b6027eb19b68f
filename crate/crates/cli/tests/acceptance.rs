//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use droughtcap::aggregate::{derate_fleet, flow_generation_correlation, CapacityReport, DerateOptions};
use droughtcap::ct::{ct_derate_factor, ct_usable_capacity, CtParams};
use droughtcap::fleet::FleetRegistry;
use droughtcap::hydro::{hydro_usable_capacity, HydroParams};
use droughtcap::ingest::{load_fleet, FleetPaths};
use droughtcap::once_through::{
    ot_rated_withdrawal, ot_usable_capacity, DischargeLimit, OnceThroughParams, Withdrawal,
};
use droughtcap::psychro::{air_state, wet_bulb_temperature};
use droughtcap::pv::{pv_power, EfficiencyCoefficients, PvParams};
use droughtcap::recirc::{rc_evaluate, rc_usable_capacity, RecircParams};
use droughtcap::scenario::{apply_to_registry, standard_scenarios};
use droughtcap::series::DateSpan;
use droughtcap::wind::{default_curves, power_from_curve};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    check(elapsed.as_secs_f64() < limit_s, || {
        format!("runtime {:.3} s exceeds {limit_s} s", elapsed.as_secs_f64())
    })
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_paths() -> FleetPaths {
    let d = fixtures();
    FleetPaths {
        fleet: d.join("fleet.csv"),
        hydrology: d.join("hydrology.csv"),
        weather: d.join("weather.csv"),
        curves: Some(d.join("curves.csv")),
        pv_coefficients: None,
    }
}

fn summer() -> DateSpan {
    DateSpan::new(NaiveDate::from_ymd_opt(2024, 6, 1).unwrap(), NaiveDate::from_ymd_opt(2024, 8, 31).unwrap())
        .unwrap()
}

fn magnus(t: f64) -> f64 {
    0.61094 * (17.625 * t / (t + 243.04)).exp()
}

fn c01_ct_band() -> Outcome {
    let t0 = Instant::now();
    let p = CtParams::new(100.0);
    let factor = |t: f64| ct_usable_capacity(&p, t) / p.installed_capacity;
    let at_hot = factor(30.12);
    check((at_hot - 0.900).abs() <= 1e-3, || format!("factor at 30.12 °C = {at_hot}"))?;
    for i in 0..=1205 {
        let t = 18.07 + (30.12 - 18.07) * i as f64 / 1205.0;
        let f = factor(t);
        check((0.90 - 1e-3..=1.0).contains(&f), || format!("factor {f} at {t} °C outside [0.90, 1.00]"))?;
        let raw = ct_derate_factor(&p, t).min(1.0);
        check((f - raw).abs() <= 1e-12, || format!("clamped factor {f} != equation value {raw} at {t} °C"))?;
    }
    let at_cool = factor(18.07);
    check((at_cool - 1.0).abs() <= 1e-3, || format!("factor at 18.07 °C = {at_cool}"))?;
    within(t0.elapsed(), 1.0)?;
    Ok(format!("factor(30.12 °C) = {at_hot:.6}, factor(18.07 °C) = {at_cool:.6}"))
}

fn random_ot(rng: &mut StdRng) -> OnceThroughParams {
    let eta = rng.gen_range(0.25..0.45);
    OnceThroughParams {
        installed_capacity: rng.gen_range(10.0..1500.0),
        net_efficiency: eta,
        heat_sink_fraction: rng.gen_range(0.05..(0.95 - eta).min(0.25)),
        max_discharge_temp: rng.gen_range(25.0..38.0),
        max_condenser_rise: rng.gen_range(3.0..15.0),
        stream_fraction: rng.gen_range(0.05..0.6),
        limit: DischargeLimit::Regulated,
    }
}

fn c02_once_through_closure() -> Outcome {
    let t0 = Instant::now();
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let p = random_ot(&mut rng);
        let t_w = rng.gen_range(0.0..p.max_discharge_temp);
        let w_on = match ot_rated_withdrawal(&p, t_w) {
            Withdrawal::Finite(w) => w,
            Withdrawal::Unbounded => return Err(format!("unbounded withdrawal at T_w={t_w} < Tl_max")),
        };
        let cap = ot_usable_capacity(&p, w_on / p.stream_fraction, t_w).map_err(|e| e.to_string())?;
        let rel = (cap - p.installed_capacity).abs() / p.installed_capacity;
        worst = worst.max(rel);
        check(rel < 1e-12, || format!("relative error {rel:e} for {p:?} at T_w={t_w}"))?;
        let hot = p.max_discharge_temp + rng.gen_range(0.0..10.0);
        let flow = rng.gen_range(0.0..1e4);
        let zero = ot_usable_capacity(&p, flow, hot).map_err(|e| e.to_string())?;
        check(zero == 0.0, || format!("{zero} MW at T_w={hot} ≥ Tl_max"))?;
    }
    within(t0.elapsed(), 1.0)?;
    Ok(format!("500 draws, worst relative error {worst:e}"))
}

/// Sequential evaluation of the tower chain from the raw inputs.
fn recirc_oracle(p: &RecircParams, flow: f64, t_mu: f64, td: f64, rh: f64, ptot: f64) -> f64 {
    const K: f64 = 0.000662;
    const B: f64 = 0.6219907;
    const C_PW: f64 = 4.186e-3;
    // saturation and ambient vapor pressure
    let p_ws = magnus(td);
    let p_w = rh / 100.0 * p_ws;
    // wet bulb by Newton from the dry bulb
    let mut twb = td;
    for _ in 0..100 {
        let s = magnus(twb);
        let f = twb - td + (s - p_w) / (K * ptot);
        let df = 1.0 + s * 17.625 * 243.04 / (twb + 243.04).powi(2) / (K * ptot);
        let step = f / df;
        twb -= step;
        if step.abs() < 1e-14 {
            break;
        }
    }
    // humidity ratios and enthalpies
    let w_in = B * p_w / (ptot - p_w);
    let w_out = B * p_ws / (ptot - p_ws);
    let h_in = td * (1.01 + 0.00189 * w_in) + 2.5 * w_in;
    let h_out = td * (1.01 + 0.00189 * w_out) + 2.5 * w_out;
    let t_c = twb + p.tower_approach;
    // makeup at nameplate, then circulating flow
    let n = p.cycles_of_concentration;
    let q_cond = p.installed_capacity * (1.0 - p.net_efficiency - p.heat_sink_fraction) / p.net_efficiency;
    let w_mu = n / (n - 1.0) * q_cond * (1.0 - p.sensible_fraction) / (1000.0 * p.latent_heat);
    let makeup = if p.stream_fraction * flow < w_mu { p.stream_fraction * flow } else { w_mu };
    let gap = if w_out - w_in < 1e-6 { 1e-6 } else { w_out - w_in };
    let w_circ = makeup * p.water_air_ratio / gap;
    let bracket = h_out + t_c * C_PW * (w_out - w_in) / n - t_mu * C_PW * (w_out - w_in) - h_in;
    1000.0 * w_circ * bracket * p.net_efficiency
        / (p.water_air_ratio * (1.0 - p.net_efficiency - p.heat_sink_fraction))
}

fn random_recirc(rng: &mut StdRng) -> RecircParams {
    let eta = rng.gen_range(0.25..0.45);
    RecircParams {
        installed_capacity: rng.gen_range(10.0..1500.0),
        net_efficiency: eta,
        heat_sink_fraction: rng.gen_range(0.05..0.25),
        cycles_of_concentration: rng.gen_range(1.5..10.0),
        water_air_ratio: rng.gen_range(0.5..1.5),
        tower_approach: rng.gen_range(2.0..10.0),
        sensible_fraction: rng.gen_range(0.0..0.5),
        stream_fraction: rng.gen_range(0.05..0.6),
        latent_heat: 2.45,
    }
}

fn c03_recirc_oracle() -> Outcome {
    let t0 = Instant::now();
    let mut rng = StdRng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p = random_recirc(&mut rng);
        let (td, rh, ptot) =
            (rng.gen_range(0.0..45.0), rng.gen_range(1.0..100.0), rng.gen_range(80.0..105.0));
        let t_mu = rng.gen_range(5.0..35.0);
        let flow = rng.gen_range(0.0..10.0);
        let air = air_state(td, rh, ptot).map_err(|e| e.to_string())?;
        let got = rc_evaluate(&p, flow, t_mu, &air).map_err(|e| e.to_string())?.unclamped;
        let expected = recirc_oracle(&p, flow, t_mu, td, rh, ptot);
        let rel = if expected == 0.0 { got.abs() } else { ((got - expected) / expected).abs() };
        worst = worst.max(rel);
        check(rel <= 1e-9, || {
            format!("{got} vs oracle {expected} (rel {rel:e}) at T_d={td}, rh={rh}, p={ptot}, T_mu={t_mu}, Q={flow}")
        })?;
    }
    within(t0.elapsed(), 5.0)?;
    Ok(format!("1000 draws, worst relative difference {worst:e}"))
}

fn c04_wet_bulb_residual() -> Outcome {
    let t0 = Instant::now();
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let (td, rh, ptot) =
            (rng.gen_range(0.0..45.0), rng.gen_range(1.0..=100.0), rng.gen_range(80.0..105.0));
        let twb = wet_bulb_temperature(td, rh, ptot).map_err(|e| e.to_string())?;
        let p_w = rh / 100.0 * magnus(td);
        let residual = (twb - (td - (magnus(twb) - p_w) / (0.000662 * ptot))).abs();
        worst = worst.max(residual);
        check(residual < 1e-3, || format!("residual {residual} °C at ({td}, {rh}, {ptot})"))?;
    }
    for _ in 0..1000 {
        let (td, ptot) = (rng.gen_range(0.0..45.0), rng.gen_range(80.0..105.0));
        let twb = wet_bulb_temperature(td, 100.0, ptot).map_err(|e| e.to_string())?;
        check((twb - td).abs() < 1e-4, || format!("saturated T_wb {twb} vs T_d {td}"))?;
    }
    within(t0.elapsed(), 5.0)?;
    Ok(format!("10000 samples, worst residual {worst:e} °C; rh=100 returns T_d"))
}

fn ordered(rng: &mut StdRng, lo: f64, hi: f64) -> (f64, f64) {
    let (a, b) = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Each monotonicity property as a named sub-check over 1000 samples.
fn c05_monotonicity() -> Outcome {
    let t0 = Instant::now();
    const N: usize = 1000;
    let mut failures = Vec::new();
    let mut run = |name: &str, f: &mut dyn FnMut(&mut StdRng) -> Result<(), String>| {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..N {
            if let Err(e) = f(&mut rng) {
                failures.push(format!("{name}: {e}"));
                return;
            }
        }
    };
    let err = |e: droughtcap::DerateError| e.to_string();

    run("hydro in Q", &mut |rng| {
        let p = HydroParams {
            head: rng.gen_range(5.0..300.0),
            efficiency: rng.gen_range(0.5..0.95),
            installed_capacity: rng.gen_range(1.0..2000.0),
        };
        let (q1, q2) = ordered(rng, 0.0, 2.0 * p.rated_flow());
        let (a, b) =
            (hydro_usable_capacity(&p, q1).map_err(err)?, hydro_usable_capacity(&p, q2).map_err(err)?);
        check(a <= b, || format!("P({q1})={a} > P({q2})={b}"))
    });
    run("once-through in T_w", &mut |rng| {
        let p = random_ot(rng);
        let q = rng.gen_range(0.0..500.0);
        let (t1, t2) = ordered(rng, 0.0, 40.0);
        let (a, b) =
            (ot_usable_capacity(&p, q, t1).map_err(err)?, ot_usable_capacity(&p, q, t2).map_err(err)?);
        check(b <= a, || format!("P(T_w={t2})={b} > P(T_w={t1})={a}"))
    });
    run("once-through in Q", &mut |rng| {
        let p = random_ot(rng);
        let t = rng.gen_range(0.0..40.0);
        let (q1, q2) = ordered(rng, 0.0, 500.0);
        let (a, b) =
            (ot_usable_capacity(&p, q1, t).map_err(err)?, ot_usable_capacity(&p, q2, t).map_err(err)?);
        check(a <= b, || format!("P(Q={q1})={a} > P(Q={q2})={b}"))
    });
    run("recirculating in T_d", &mut |rng| {
        let p = random_recirc(rng);
        let (rh, ptot, t_mu) =
            (rng.gen_range(5.0..95.0), rng.gen_range(80.0..105.0), rng.gen_range(5.0..35.0));
        let flow = rng.gen_range(0.0..10.0);
        let (t1, t2) = ordered(rng, 0.0, 45.0);
        let cap = |td: f64| -> Result<f64, String> {
            let air = air_state(td, rh, ptot).map_err(|e| e.to_string())?;
            rc_usable_capacity(&p, flow, t_mu, &air).map_err(err)
        };
        let (a, b) = (cap(t1)?, cap(t2)?);
        check(b <= a, || {
            format!("P(T_d={t2:.3})={b:.6} > P(T_d={t1:.3})={a:.6} MW (rh={rh:.1}, p={ptot:.1}, T_mu={t_mu:.2}, Q={flow:.3})")
        })
    });
    run("recirculating in T_mu", &mut |rng| {
        let p = random_recirc(rng);
        let air = air_state(rng.gen_range(0.0..45.0), rng.gen_range(5.0..95.0), rng.gen_range(80.0..105.0))
            .map_err(|e| e.to_string())?;
        let flow = rng.gen_range(0.0..10.0);
        let (t1, t2) = ordered(rng, 5.0, 35.0);
        let (a, b) = (
            rc_usable_capacity(&p, flow, t1, &air).map_err(err)?,
            rc_usable_capacity(&p, flow, t2, &air).map_err(err)?,
        );
        check(b <= a, || format!("P(T_mu={t2})={b} > P(T_mu={t1})={a}"))
    });
    run("CT strictly in T_d", &mut |rng| {
        let p = CtParams::new(rng.gen_range(10.0..500.0));
        // unclamped region: factor strictly inside (0, 1)
        let (t1, t2) = ordered(rng, 18.1, 138.0);
        if t1 == t2 {
            return Ok(());
        }
        let (a, b) = (ct_usable_capacity(&p, t1), ct_usable_capacity(&p, t2));
        check(b < a, || format!("P({t2})={b} not below P({t1})={a}"))
    });
    run("PV in T_amb", &mut |rng| {
        let p = PvParams {
            installed_capacity: rng.gen_range(1.0..500.0),
            thermal_coefficient: rng.gen_range(0.025..0.05),
            coefficients: EfficiencyCoefficients::default(),
        };
        let (t1, t2) = ordered(rng, 0.0, 45.0);
        if t1 == t2 {
            return Ok(());
        }
        // strict where the nameplate clamp cannot bind
        let g = rng.gen_range(200.0..=1000.0);
        let (a, b) = (pv_power(&p, g, t1).map_err(err)?, pv_power(&p, g, t2).map_err(err)?);
        check(b < a, || format!("P(T={t2})={b} not below P(T={t1})={a} at G={g}"))?;
        let g = rng.gen_range(1000.0..1400.0);
        let (a, b) = (pv_power(&p, g, t1).map_err(err)?, pv_power(&p, g, t2).map_err(err)?);
        check(b <= a, || format!("P(T={t2})={b} above P(T={t1})={a} at G={g}"))
    });
    let curves = default_curves();
    run("wind outside support", &mut |rng| {
        for c in curves.values() {
            let below = rng.gen_range(0.0..=c.cut_in());
            let above = rng.gen_range(c.cut_out()..c.cut_out() + 40.0);
            check(power_from_curve(c, below) == 0.0, || format!("{} nonzero at {below}", c.id()))?;
            check(power_from_curve(c, above) == 0.0, || format!("{} nonzero at {above}", c.id()))?;
        }
        Ok(())
    });

    if let Err(e) = within(t0.elapsed(), 10.0) {
        failures.push(e);
    }
    if failures.is_empty() {
        Ok(format!("8 properties × {N} samples"))
    } else {
        Err(format!("{} of 8 properties violated: {}", failures.len(), failures.join("; ")))
    }
}

fn scenario_reports(reg: &FleetRegistry) -> Result<Vec<(String, CapacityReport)>, String> {
    standard_scenarios()
        .into_iter()
        .map(|s| {
            let perturbed = apply_to_registry(reg, &s).map_err(|e| e.to_string())?;
            let r =
                derate_fleet(&perturbed, summer(), &DerateOptions::default()).map_err(|e| e.to_string())?;
            Ok((s.name, r))
        })
        .collect()
}

fn c06_scenario_ordering(reports: &[(String, CapacityReport)], elapsed: Duration) -> Outcome {
    let reg_count = reports[0].1.per_generator.len();
    check(reg_count == 30, || format!("fixture has {reg_count} generators"))?;
    check(reports[0].1.span.len() == 92, || "fixture summer is not 92 days".into())?;
    let m: BTreeMap<&str, f64> = reports.iter().map(|(n, r)| (n.as_str(), r.fleet_summary.median)).collect();
    let chain = |names: [&str; 4]| -> Result<(), String> {
        for w in names.windows(2) {
            check(m[w[1]] <= m[w[0]], || {
                format!("median fleet CF {} = {} > {} = {}", w[1], m[w[1]], w[0], m[w[0]])
            })?;
        }
        Ok(())
    };
    chain(["baseline", "C1", "C2", "C3"])?;
    chain(["baseline", "R10", "R20", "R30"])?;
    let hydro = |n: &str| {
        reports.iter().find(|(name, _)| name == n).unwrap().1.summary[&droughtcap::aggregate::Category::Hydro]
            .median
    };
    let (h10, h20, h30) = (hydro("R10"), hydro("R20"), hydro("R30"));
    check(h10 > h20 && h20 > h30, || format!("hydro medians R10={h10} R20={h20} R30={h30}"))?;
    within(elapsed, 30.0)?;
    Ok(format!(
        "fleet medians baseline {:.4} C1 {:.4} C2 {:.4} C3 {:.4} R10 {:.4} R20 {:.4} R30 {:.4}; hydro {h10:.4} > {h20:.4} > {h30:.4}",
        m["baseline"], m["C1"], m["C2"], m["C3"], m["R10"], m["R20"], m["R30"]
    ))
}

fn c07_conservation(reports: &[(String, CapacityReport)]) -> Outcome {
    let mut days = 0;
    for (name, r) in reports {
        let order = r.generators_in_order();
        for t in 0..r.span.len() {
            let mut sum = 0.0;
            for g in &order {
                sum += g.available.values()[t];
            }
            let total = r.fleet_total.values()[t];
            check(sum == total, || format!("{name} day {t}: fleet_total {total} != Σ generators {sum}"))?;
            days += 1;
        }
        for (cat, s) in &r.per_category {
            for &cf in s.capacity_factor.values() {
                check((0.0..=1.0).contains(&cf), || format!("{name} {cat} CF {cf}"))?;
            }
        }
        for &cf in r.fleet_cf.values() {
            check((0.0..=1.0).contains(&cf), || format!("{name} fleet CF {cf}"))?;
        }
    }
    Ok(format!("{} reports, {days} report-days", reports.len()))
}

fn run_derate(out: &Path, extra: &[&str]) -> Result<String, String> {
    let d = fixtures();
    let status = Command::new(env!("CARGO_BIN_EXE_droughtcap"))
        .arg("derate")
        .arg("--fleet")
        .arg(d.join("fleet.csv"))
        .arg("--hydrology")
        .arg(d.join("hydrology.csv"))
        .arg("--weather")
        .arg(d.join("weather.csv"))
        .arg("--curves")
        .arg(d.join("curves.csv"))
        .args(["--start", "2024-06-01", "--end", "2024-08-31", "--out"])
        .arg(out)
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    check(status.status.success(), || {
        format!("derate {extra:?} failed: {}", String::from_utf8_lossy(&status.stderr))
    })?;
    fs::read_to_string(out.join("report.csv")).map_err(|e| e.to_string())
}

fn parse_report(text: &str) -> BTreeMap<(NaiveDate, String), f64> {
    droughtcap::report::read_report_csv(text.as_bytes())
        .expect("report.csv parses")
        .into_iter()
        .map(|r| ((r.date, r.generator_id), r.available_mw))
        .collect()
}

fn c08_regulatory_dominance(reg: &FleetRegistry) -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let limited = parse_report(&run_derate(&tmp.path().join("limited"), &[])?);
    let free = parse_report(&run_derate(&tmp.path().join("free"), &["--no-regulatory-limit"])?);
    let (mut compared, mut strict) = (0, 0);
    for g in reg
        .generators
        .values()
        .filter(|g| g.is_at_risk() && g.once_through_params(DischargeLimit::Regulated).is_some())
    {
        let p = g.once_through_params(DischargeLimit::Regulated).unwrap();
        let water = &reg.hydrology[&g.site_id].water_temperature;
        for date in summer().dates() {
            let key = (date, g.id.clone());
            let (a, b) = (limited[&key], free[&key]);
            check(b >= a, || format!("{} on {date}: unregulated {b} < limited {a}", g.id))?;
            compared += 1;
            let t_w = water.values()[(date - water.start()).num_days() as usize];
            if t_w > p.max_discharge_temp - p.max_condenser_rise && b > a {
                strict += 1;
            }
        }
    }
    check(compared > 0, || "no once-through generators in fixture".into())?;
    check(strict > 0, || "no strict improvement on a day with T_w > Tl_max − ΔTl_max".into())?;
    Ok(format!("{compared} generator-days dominated, {strict} strictly improved on hot-water days"))
}

fn c09_determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let one = run_derate(&tmp.path().join("j1"), &["--jobs", "1"])?;
    let many = run_derate(&tmp.path().join("j8"), &["--jobs", "8"])?;
    check(one.as_bytes() == many.as_bytes(), || "report.csv differs between --jobs 1 and --jobs 8".into())?;
    Ok(format!("report.csv identical ({} bytes) for --jobs 1 and 8", one.len()))
}

fn c10_correlation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let flows: Vec<f64> = (0..100).map(|_| rng.gen_range(20.0..400.0)).collect();
    let proportional: Vec<f64> = flows.iter().map(|q| 0.42 * q).collect();
    let r1 = flow_generation_correlation(&flows, &proportional).map_err(|e| e.to_string())?;
    check((r1.r_squared - 1.0).abs() <= 1e-9, || format!("proportional basin R² = {}", r1.r_squared))?;
    let independent: Vec<f64> = (0..100).map(|_| rng.gen_range(50.0..150.0)).collect();
    let r2 = flow_generation_correlation(&flows, &independent).map_err(|e| e.to_string())?;
    check(r2.r_squared < 0.05, || format!("independent basin R² = {}", r2.r_squared))?;
    Ok(format!("proportional R² = {:.12}, independent R² = {:.4}", r1.r_squared, r2.r_squared))
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(e) => Err(e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into())),
    }
}

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let reg = load_fleet(&fixture_paths()).expect("fixture fleet loads");
    let t0 = Instant::now();
    let reports = scenario_reports(&reg);
    let scenario_time = t0.elapsed();

    let results: Vec<(&str, Outcome)> = vec![
        ("CT derate band", guarded(c01_ct_band)),
        ("once-through closure", guarded(c02_once_through_closure)),
        ("recirculating oracle equivalence", guarded(c03_recirc_oracle)),
        ("wet-bulb residual", guarded(c04_wet_bulb_residual)),
        ("monotonicity suite", guarded(c05_monotonicity)),
        (
            "scenario ordering",
            guarded(|| c06_scenario_ordering(reports.as_ref().map_err(|e| e.clone())?, scenario_time)),
        ),
        ("fleet total conservation", guarded(|| c07_conservation(reports.as_ref().map_err(|e| e.clone())?))),
        ("regulatory-limit dominance", guarded(|| c08_regulatory_dominance(&reg))),
        ("determinism across --jobs", guarded(c09_determinism)),
        ("flow-generation correlation", guarded(c10_correlation)),
    ];

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
