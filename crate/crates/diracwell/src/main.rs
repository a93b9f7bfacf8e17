use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use diracwell::plot::{plot_script, PlotKind};
use diracwell::sweep::{
    run_compare_nonrel, run_energy_sweep, run_packet, run_threshold_table, run_width_sweep,
    trace_file_name, write_output, Grid,
};
use diracwell::validate;

#[derive(Parser)]
#[command(
    name = "diracwell",
    version,
    about = "Transmission, phase shift, and group delay for Dirac particles crossing a 1-D rectangular potential well"
)]
struct Cli {
    #[command(subcommand)]
    mode: Mode,
}

#[derive(Subcommand)]
enum Mode {
    /// Transmission, phase, and delays over a k'a grid
    WidthSweep(Flags),
    /// Same table, plotted for the phase staircase
    PhaseSweep(Flags),
    /// Delay versus incident energy alpha at fixed beta and gamma
    EnergySweep(Flags),
    /// Wave-packet simulation against the stationary-phase delay
    Packet(Flags),
    /// Threshold energy E_t over a depth grid, closed form vs bisection
    ThresholdTable(Flags),
    /// Relativistic versus non-relativistic delay, each on its own k'a axis
    CompareNonrel(Flags),
    /// Run the cross-module invariant suite; nonzero exit on failure
    Validate(Flags),
}

impl Mode {
    fn flags(&self) -> &Flags {
        match self {
            Mode::WidthSweep(f)
            | Mode::PhaseSweep(f)
            | Mode::EnergySweep(f)
            | Mode::Packet(f)
            | Mode::ThresholdTable(f)
            | Mode::CompareNonrel(f)
            | Mode::Validate(f) => f,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Mode::WidthSweep(_) => "width-sweep",
            Mode::PhaseSweep(_) => "phase-sweep",
            Mode::EnergySweep(_) => "energy-sweep",
            Mode::Packet(_) => "packet",
            Mode::ThresholdTable(_) => "threshold-table",
            Mode::CompareNonrel(_) => "compare-nonrel",
            Mode::Validate(_) => "validate",
        }
    }
}

#[derive(Args, Clone, Default)]
struct Flags {
    /// Total incident energy alpha = E/mu c^2 (central energy in packet mode)
    #[arg(long)]
    alpha: Option<f64>,
    /// Well depth beta = V0/mu c^2
    #[arg(long)]
    beta: Option<f64>,
    /// Inverse width gamma = 1/a (energy-sweep mode)
    #[arg(long)]
    gamma: Option<f64>,
    /// Lower k'a bound of the width grid
    #[arg(long)]
    width_min: Option<f64>,
    /// Upper k'a bound of the width grid
    #[arg(long)]
    width_max: Option<f64>,
    /// Grid points of the swept variable
    #[arg(long)]
    points: Option<usize>,
    /// Packet temporal width w in tau0
    #[arg(long)]
    w: Option<f64>,
    /// Quadrature nodes for the packet spectral integral
    #[arg(long)]
    nodes: Option<usize>,
    /// Output CSV path (default: <mode>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV
    #[arg(long)]
    plot: bool,
    /// Flat key = value configuration file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Export per-width intensity traces into this directory (packet mode)
    #[arg(long)]
    trace_dir: Option<PathBuf>,
    /// Lower alpha bound (energy-sweep mode)
    #[arg(long)]
    alpha_min: Option<f64>,
    /// Upper alpha bound (energy-sweep mode)
    #[arg(long)]
    alpha_max: Option<f64>,
    /// Lower beta bound (threshold-table mode)
    #[arg(long)]
    beta_min: Option<f64>,
    /// Upper beta bound (threshold-table mode)
    #[arg(long)]
    beta_max: Option<f64>,
}

enum Failure {
    Config(String),
    Physics(diracwell::Error),
    Io(String),
    Validation,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) | Failure::Io(_) => 2,
            Failure::Physics(_) => 3,
            Failure::Validation => 4,
        }
    }

    fn report(&self) {
        match self {
            Failure::Config(msg) => eprintln!("configuration error: {msg}"),
            Failure::Physics(e) => eprintln!("physics domain error: {e}"),
            Failure::Io(msg) => eprintln!("i/o error: {msg}"),
            Failure::Validation => eprintln!("validation failed"),
        }
    }
}

impl From<diracwell::Error> for Failure {
    fn from(e: diracwell::Error) -> Self {
        Failure::Physics(e)
    }
}

fn merge_config(flags: &Flags) -> Result<Flags, Failure> {
    let Some(path) = &flags.config else {
        return Ok(flags.clone());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut merged = flags.clone();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::Config(format!(
                "{}:{}: expected `key = value`, got `{raw}`",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        let bad = |field: &str| {
            Failure::Config(format!(
                "{}:{}: invalid value `{value}` for `{field}`",
                path.display(),
                lineno + 1
            ))
        };
        macro_rules! set {
            ($field:ident, $ty:ty) => {{
                if merged.$field.is_none() {
                    merged.$field =
                        Some(value.parse::<$ty>().map_err(|_| bad(stringify!($field)))?);
                }
            }};
        }
        match key.as_str() {
            "alpha" => set!(alpha, f64),
            "beta" => set!(beta, f64),
            "gamma" => set!(gamma, f64),
            "width-min" => set!(width_min, f64),
            "width-max" => set!(width_max, f64),
            "points" => set!(points, usize),
            "w" => set!(w, f64),
            "nodes" => set!(nodes, usize),
            "out" => set!(out, PathBuf),
            "trace-dir" => set!(trace_dir, PathBuf),
            "alpha-min" => set!(alpha_min, f64),
            "alpha-max" => set!(alpha_max, f64),
            "beta-min" => set!(beta_min, f64),
            "beta-max" => set!(beta_max, f64),
            "plot" => {
                merged.plot |= value.parse::<bool>().map_err(|_| bad("plot"))?;
            }
            other => {
                return Err(Failure::Config(format!(
                    "{}:{}: unknown key `{other}`",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(merged)
}

fn grid(start: f64, stop: f64, points: usize, what: &str) -> Result<Grid, Failure> {
    if points < 2 {
        return Err(Failure::Config(format!(
            "{what}: points must be at least 2, got {points}"
        )));
    }
    if !(stop > start) {
        return Err(Failure::Config(format!(
            "{what}: need max > min, got [{start}, {stop}]"
        )));
    }
    Ok(Grid {
        start,
        stop,
        points,
    })
}

fn emit(
    out: &Path,
    csv: &str,
    plot: bool,
    kind: PlotKind,
) -> Result<(), Failure> {
    write_output(out, csv).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    println!("wrote {}", out.display());
    if plot {
        let csv_name = out
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .ok_or_else(|| Failure::Config(format!("{}: not a file path", out.display())))?;
        let script_path = out.with_extension("gp");
        write_output(&script_path, &plot_script(kind, &csv_name))
            .map_err(|e| Failure::Io(format!("{}: {e}", script_path.display())))?;
        println!("wrote {}", script_path.display());
    }
    Ok(())
}

fn run(mode: &Mode) -> Result<(), Failure> {
    let flags = merge_config(mode.flags())?;
    let out = flags
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", mode.name())));
    match mode {
        Mode::WidthSweep(_) | Mode::PhaseSweep(_) => {
            let alpha = flags.alpha.unwrap_or(1.01);
            let beta = flags.beta.unwrap_or(0.4);
            let g = grid(
                flags.width_min.unwrap_or(0.05),
                flags.width_max.unwrap_or(4.0 * std::f64::consts::PI),
                flags.points.unwrap_or(2000),
                "width grid",
            )?;
            let csv = run_width_sweep(alpha, beta, &g)?;
            let kind = if matches!(mode, Mode::PhaseSweep(_)) {
                PlotKind::PhaseSweep
            } else {
                PlotKind::WidthSweep
            };
            emit(&out, &csv, flags.plot, kind)
        }
        Mode::EnergySweep(_) => {
            let beta = flags.beta.unwrap_or(0.4);
            let gamma = flags.gamma.unwrap_or(0.01);
            if !(gamma > 0.0) {
                return Err(Failure::Config(format!("gamma must be positive, got {gamma}")));
            }
            let g = grid(
                flags.alpha_min.unwrap_or(1.0005),
                flags.alpha_max.unwrap_or(1.2),
                flags.points.unwrap_or(2000),
                "alpha grid",
            )?;
            let csv = run_energy_sweep(beta, gamma, &g)?;
            emit(&out, &csv, flags.plot, PlotKind::EnergySweep)
        }
        Mode::Packet(_) => {
            let alpha = flags.alpha.unwrap_or(1.01);
            let beta = flags.beta.unwrap_or(0.4);
            let w = flags.w.unwrap_or(300.0);
            let nodes = flags.nodes.unwrap_or(4096);
            let g = grid(
                flags.width_min.unwrap_or(0.2 * std::f64::consts::PI),
                flags.width_max.unwrap_or(2.95 * std::f64::consts::PI),
                flags.points.unwrap_or(20),
                "width grid",
            )?;
            let output = run_packet(alpha, beta, w, nodes, &g, flags.trace_dir.is_some())?;
            if let Some(dir) = &flags.trace_dir {
                for (i, trace) in &output.traces {
                    let path = dir.join(trace_file_name(*i));
                    write_output(&path, trace)
                        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                }
                println!("wrote {} traces to {}", output.traces.len(), dir.display());
            }
            println!("{}", output.summary);
            emit(&out, &output.csv, flags.plot, PlotKind::Packet)
        }
        Mode::ThresholdTable(_) => {
            let g = grid(
                flags.beta_min.unwrap_or(1e-4),
                flags.beta_max.unwrap_or(2.0),
                flags.points.unwrap_or(100),
                "beta grid",
            )?;
            let csv = run_threshold_table(&g)?;
            emit(&out, &csv, flags.plot, PlotKind::ThresholdTable)
        }
        Mode::CompareNonrel(_) => {
            let alpha = flags.alpha.unwrap_or(1.01);
            let beta = flags.beta.unwrap_or(0.2);
            let g = grid(
                flags.width_min.unwrap_or(0.1),
                flags.width_max.unwrap_or(4.0 * std::f64::consts::PI),
                flags.points.unwrap_or(1000),
                "width grid",
            )?;
            let csv = run_compare_nonrel(alpha, beta, &g)?;
            emit(&out, &csv, flags.plot, PlotKind::CompareNonrel)
        }
        Mode::Validate(_) => {
            let checks = validate::run_all();
            let mut all_ok = true;
            for check in &checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", check.name, check.detail);
                all_ok &= check.passed;
            }
            if all_ok {
                println!("all {} checks passed", checks.len());
                Ok(())
            } else {
                Err(Failure::Validation)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.mode) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            failure.report();
            ExitCode::from(failure.exit_code())
        }
    }
}
