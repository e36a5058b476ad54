use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use g2u_core::{
    circular, straight, Config, EnergyPoint, Error, ErrorKind, ParetoCurve, StraightGeometry,
    SystemParams,
};

mod report;
mod validate;

const REFERENCE_CONFIG: &str = include_str!("../../../configs/reference.conf");

/// GT/UAV energy trade-off for ground-to-UAV data collection.
#[derive(Parser, Debug)]
#[command(name = "g2u", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// GT-optimal and UAV-optimal circular designs.
    CircularExtremes(Common),
    /// Sweep of the circular Pareto boundary.
    CircularPareto(Sweep),
    /// GT-optimal and UAV-optimal straight designs.
    StraightExtremes(Common),
    /// Sweep of the straight Pareto boundary.
    StraightPareto(Sweep),
    /// Check the closed-form solvers against the numerical oracles.
    Validate(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Config file; the built-in reference config when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the GT circuit power, W.
    #[arg(long)]
    pc: Option<f64>,
    /// Override the data volume, bits.
    #[arg(long)]
    q_bits: Option<f64>,
}

#[derive(Args, Debug)]
struct Sweep {
    #[command(flatten)]
    common: Common,
    /// Number of UAV energies in the sweep.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(2..))]
    points: u32,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(String),
    Validation(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e.kind() {
                ErrorKind::Config => 2,
                ErrorKind::Infeasible => 3,
                ErrorKind::Numerical => 1,
            },
            Failure::Io(_) => 2,
            Failure::Validation(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => {
                let label = match e.kind() {
                    ErrorKind::Config => "config error",
                    ErrorKind::Infeasible => "infeasible",
                    ErrorKind::Numerical => "numerical error",
                };
                format!("{label}: {e}")
            }
            Failure::Io(msg) => format!("config error: {msg}"),
            Failure::Validation(n) => format!("validation failed: {n} check(s) did not pass"),
        }
    }
}

fn load(common: &Common) -> Result<Config, Failure> {
    let text = match &common.config {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
        }
        None => REFERENCE_CONFIG.to_string(),
    };
    let mut config = Config::parse(&text)?;
    if let Some(pc) = common.pc {
        config.params = config.params.with_circuit_power(pc)?;
    }
    if let Some(q) = common.q_bits {
        config.params = config.params.with_data_bits(q)?;
    }
    Ok(config)
}

fn geometry(config: &Config) -> Result<StraightGeometry, Failure> {
    let (a, b) = config.require_endpoints()?;
    Ok(StraightGeometry::from_params(a, b, &config.params)?)
}

/// CSV goes to `--out` with the summary on stdout, or to stdout with the
/// summary on stderr.
fn emit(common: &Common, csv: &str, summary: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => {
            fs::write(path, csv).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            print!("{summary}");
        }
        None => {
            eprint!("{summary}");
            io::stdout()
                .write_all(csv.as_bytes())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))?;
        }
    }
    Ok(())
}

fn extremes_curve(
    points: [EnergyPoint; 2],
    kind: g2u_core::TrajectoryKind,
    params: &SystemParams,
) -> ParetoCurve {
    let mut points = points.to_vec();
    points.sort_by(|a, b| a.e2.total_cmp(&b.e2));
    ParetoCurve {
        points,
        kind,
        params: *params,
        skipped: Vec::new(),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::CircularExtremes(common) => {
            let config = load(&common)?;
            let p = &config.params;
            let gt = circular::gt_min_energy(p)?;
            let uav = circular::uav_min_energy(p)?;
            let curve = extremes_curve([uav, gt], g2u_core::TrajectoryKind::Circular, p);
            let comment = "# circular extremes: UAV-optimal row then GT-optimal row";
            emit(
                &common,
                &report::csv(&curve, comment),
                &report::extremes_summary(&uav, &gt, p),
            )
        }
        Command::StraightExtremes(common) => {
            let config = load(&common)?;
            let geom = geometry(&config)?;
            let p = &config.params;
            let gt = straight::gt_min_energy(&geom, p)?;
            let uav = straight::uav_min_energy(&geom, p)?;
            let curve = extremes_curve([uav, gt], g2u_core::TrajectoryKind::Straight, p);
            let comment = "# straight extremes: UAV-optimal row then GT-optimal row";
            emit(
                &common,
                &report::csv(&curve, comment),
                &report::extremes_summary(&uav, &gt, p),
            )
        }
        Command::CircularPareto(sweep) => {
            let config = load(&sweep.common)?;
            let curve = circular::pareto_curve(&config.params, sweep.points as usize)?;
            let comment = report::grid_comment(&curve, sweep.points as usize);
            emit(
                &sweep.common,
                &report::csv(&curve, &comment),
                &report::sweep_summary(&curve),
            )
        }
        Command::StraightPareto(sweep) => {
            let config = load(&sweep.common)?;
            let geom = geometry(&config)?;
            let curve = straight::pareto_curve(&geom, &config.params, sweep.points as usize)?;
            let comment = report::grid_comment(&curve, sweep.points as usize);
            emit(
                &sweep.common,
                &report::csv(&curve, &comment),
                &report::sweep_summary(&curve),
            )
        }
        Command::Validate(common) => {
            let config = load(&common)?;
            let geom = geometry(&config)?;
            let checks = validate::run_all(&config.params, &geom)?;
            let text = validate::render(&checks);
            match &common.out {
                Some(path) => fs::write(path, &text)
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            match checks.iter().filter(|c| !c.pass).count() {
                0 => Ok(()),
                n => Err(Failure::Validation(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("g2u: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
