use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};
use droughtcap::ingest::FleetPaths;
use droughtcap_cli::{cmd_derate, cmd_scenario, cmd_validate, CliError, RunConfig, EXIT_OK};

/// Drought-driven capacity derating for a generator fleet.
#[derive(Parser)]
#[command(name = "droughtcap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derate the fleet over a date range.
    Derate(RunArgs),
    /// Run every scenario and tabulate median capacity factors.
    Scenario(RunArgs),
    /// Check input files without computing anything.
    Validate(InputArgs),
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    fleet: PathBuf,
    #[arg(long)]
    hydrology: PathBuf,
    #[arg(long)]
    weather: PathBuf,
    /// Wind power curves; bundled generic curves if omitted.
    #[arg(long)]
    curves: Option<PathBuf>,
    /// PV efficiency coefficient overrides (k1..k6).
    #[arg(long = "pv-coeffs")]
    pv_coeffs: Option<PathBuf>,
}

impl InputArgs {
    fn paths(self) -> FleetPaths {
        FleetPaths {
            fleet: self.fleet,
            hydrology: self.hydrology,
            weather: self.weather,
            curves: self.curves,
            pv_coefficients: self.pv_coeffs,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    inputs: InputArgs,
    /// Scenario TOML; the seven standard scenarios if omitted.
    #[arg(long)]
    scenarios: Option<PathBuf>,
    #[arg(long)]
    start: NaiveDate,
    #[arg(long)]
    end: NaiveDate,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = default_jobs())]
    jobs: NonZeroUsize,
    /// Ignore the discharge temperature limit on once-through units.
    #[arg(long)]
    no_regulatory_limit: bool,
    /// Water temperature change per °C of air warming.
    #[arg(long)]
    water_temp_response: Option<f64>,
}

fn default_jobs() -> NonZeroUsize {
    std::thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)
}

impl RunArgs {
    fn config(self) -> RunConfig {
        RunConfig {
            inputs: self.inputs.paths(),
            scenario_path: self.scenarios,
            date_start: self.start,
            date_end: self.end,
            output_dir: self.out,
            parallelism: self.jobs,
            no_regulatory_limit: self.no_regulatory_limit,
            water_temp_response: self.water_temp_response,
        }
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DROUGHTCAP_LOG", "warn")).init();
    match Cli::parse().command {
        Command::Derate(args) => match cmd_derate(&args.config()) {
            Ok(report) => {
                println!(
                    "{} generators, {} days, median fleet CF {:.4}",
                    report.per_generator.len(),
                    report.span.len(),
                    report.fleet_summary.median
                );
                ExitCode::from(EXIT_OK)
            }
            Err(e) => fail(e),
        },
        Command::Scenario(args) => match cmd_scenario(&args.config()) {
            Ok(reports) => {
                for (name, r) in &reports {
                    println!("{name}: median fleet CF {:.4}", r.fleet_summary.median);
                }
                ExitCode::from(EXIT_OK)
            }
            Err(e) => fail(e),
        },
        Command::Validate(args) => {
            let v = cmd_validate(&args.paths());
            match &v.issues {
                None => println!("ok: {} generators", v.generators),
                Some(issues) => {
                    for issue in issues.issues() {
                        println!("{issue}");
                    }
                    eprintln!("{} problem(s) found", issues.len());
                }
            }
            ExitCode::from(v.exit_code())
        }
    }
}
