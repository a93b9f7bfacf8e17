//! Sweep engines behind the CLI: deterministic CSV tables for the
//! width/phase, energy, packet, threshold, and comparison runs.
//!
//! All numeric cells are written in scientific notation with 17
//! significant digits; identical configurations therefore produce
//! byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use crate::delay::{
    group_delay_nonrel, group_delay_rel, low_energy_limit_delay, nonrel_k_prime,
    threshold_energy_bisection, threshold_energy_with_branch,
};
use crate::error::Result;
use crate::packet::{propagate_transmitted, PacketSpec};
use crate::scattering::{phase_shift, transmission_probability, wavenumbers, WellScenario};

/// Uniform sweep grid, inclusive of both endpoints.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn value(&self, i: usize) -> f64 {
        if self.points == 1 {
            self.start
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.value(i))
    }
}

/// 17-significant-digit scientific notation.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_bool(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// Transmission, phase, and both delays over a k'a grid.
pub fn run_width_sweep(alpha: f64, beta: f64, grid: &Grid) -> Result<String> {
    let mut out = String::from("k_prime_a,a,T,phi,tau_rel,tau_nonrel,is_resonant\n");
    for x in grid.values() {
        let scenario = WellScenario::from_phase(alpha, beta, x)?;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_num(x),
            fmt_num(scenario.well_width),
            fmt_num(transmission_probability(&scenario)),
            fmt_num(phase_shift(&scenario)),
            fmt_num(group_delay_rel(&scenario)),
            fmt_num(group_delay_nonrel(&scenario)),
            fmt_bool(scenario.is_resonant()),
        );
    }
    Ok(out)
}

/// Delay versus incident energy at fixed beta and gamma
/// (gamma = 1/a), with the alpha -> 1 asymptote alongside.
pub fn run_energy_sweep(beta: f64, gamma: f64, alpha_grid: &Grid) -> Result<String> {
    let a = 1.0 / gamma;
    let mut out = String::from("alpha,k_prime_a,T,tau_rel,asymptotic_tau\n");
    for alpha in alpha_grid.values() {
        let scenario = WellScenario::new(alpha, beta, a)?;
        let x = scenario.inside_phase();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(alpha),
            fmt_num(x),
            fmt_num(transmission_probability(&scenario)),
            fmt_num(group_delay_rel(&scenario)),
            fmt_num(low_energy_limit_delay(alpha, beta, x)),
        );
    }
    Ok(out)
}

/// Relativistic versus non-relativistic delay, each
/// evaluated at the width where its own k'a equals the grid value.
pub fn run_compare_nonrel(alpha: f64, beta: f64, grid: &Grid) -> Result<String> {
    let mut out = String::from("k_prime_a,tau_rel,tau_nonrel,excess\n");
    for x in grid.values() {
        let rel = WellScenario::from_phase(alpha, beta, x)?;
        let tau_rel = group_delay_rel(&rel);
        let nr = WellScenario::new(alpha, beta, x / nonrel_k_prime(alpha, beta))?;
        let tau_nr = group_delay_nonrel(&nr);
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_num(x),
            fmt_num(tau_rel),
            fmt_num(tau_nr),
            fmt_num(tau_rel - tau_nr),
        );
    }
    Ok(out)
}

/// Threshold-energy table over a depth grid: closed form, bisection
/// oracle, branch, and their difference.
pub fn run_threshold_table(beta_grid: &Grid) -> Result<String> {
    let mut out = String::from("beta,E_t_closed_form,E_t_bisection,branch,abs_diff\n");
    for beta in beta_grid.values() {
        let (closed, branch) = threshold_energy_with_branch(beta)?;
        let root = threshold_energy_bisection(beta)?;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(beta),
            fmt_num(closed),
            fmt_num(root),
            branch.name(),
            fmt_num((closed - root).abs()),
        );
    }
    Ok(out)
}

/// Per-row outcome of a packet sweep.
pub struct PacketSweepOutput {
    pub csv: String,
    pub summary: String,
    /// (row index, trace CSV) when trace export was requested.
    pub traces: Vec<(usize, String)>,
}

/// Stationary-phase delay against the packet simulation, width by width.
/// Failed rows are recorded with a status column instead of aborting.
pub fn run_packet(
    central_energy: f64,
    beta: f64,
    temporal_width: f64,
    quadrature_nodes: usize,
    grid: &Grid,
    export_traces: bool,
) -> Result<PacketSweepOutput> {
    let mut csv = String::from(
        "k_prime_a,tau_theory,tau_numeric,transmitted_fraction,distortion,validity_ok,status\n",
    );
    let mut traces = Vec::new();
    let mut max_gap: f64 = 0.0;
    let mut ok_rows = 0usize;
    let mut failed_rows = 0usize;
    for (i, x) in grid.values().enumerate() {
        let scenario = WellScenario::from_phase(central_energy, beta, x)?;
        let tau_theory = group_delay_rel(&scenario);
        let mut spec =
            PacketSpec::new(central_energy, temporal_width, beta, scenario.well_width)?;
        spec.quadrature_nodes = quadrature_nodes;
        match propagate_transmitted(&spec) {
            Ok(result) => {
                max_gap = max_gap.max((tau_theory - result.numerical_delay).abs());
                ok_rows += 1;
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},ok",
                    fmt_num(x),
                    fmt_num(tau_theory),
                    fmt_num(result.numerical_delay),
                    fmt_num(result.transmitted_fraction),
                    fmt_num(result.distortion),
                    fmt_bool(result.validity_ok),
                );
                if export_traces {
                    let mut t = String::from("t,intensity\n");
                    for &(time, intensity) in &result.intensity_trace {
                        let _ = writeln!(t, "{},{}", fmt_num(time), fmt_num(intensity));
                    }
                    traces.push((i, t));
                }
            }
            Err(e) => {
                failed_rows += 1;
                let nan = fmt_num(f64::NAN);
                let _ = writeln!(
                    csv,
                    "{},{},{nan},{nan},{nan},0,failed: {e}",
                    fmt_num(x),
                    fmt_num(tau_theory),
                );
            }
        }
    }
    let summary = format!(
        "packet sweep: {ok_rows} ok, {failed_rows} failed; max |tau_theory - tau_numeric| = {}",
        fmt_num(max_gap)
    );
    Ok(PacketSweepOutput {
        csv,
        summary,
        traces,
    })
}

/// k' at the central energy, for converting k'a grids to widths.
pub fn relativistic_k_prime(alpha: f64, beta: f64) -> Result<f64> {
    let scenario = WellScenario::new(alpha, beta, 0.0)?;
    Ok(wavenumbers(&scenario).1)
}

/// Trace file name for row `i` of a packet sweep.
pub fn trace_file_name(i: usize) -> String {
    format!("trace_{i:04}.csv")
}

/// Writes content to `path`, creating parent directories.
pub fn write_output(path: &Path, content: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, content)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_is_17_significant_digits() {
        assert_eq!(fmt_num(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_num(-0.25), "-2.5000000000000000e-1");
        assert_eq!(fmt_num(13.490805473480689), "1.3490805473480689e1");
    }

    #[test]
    fn width_sweep_headers_and_determinism() {
        let grid = Grid {
            start: 0.05,
            stop: 4.0 * std::f64::consts::PI,
            points: 50,
        };
        let a = run_width_sweep(1.01, 0.4, &grid).unwrap();
        let b = run_width_sweep(1.01, 0.4, &grid).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("k_prime_a,a,T,phi,tau_rel,tau_nonrel,is_resonant\n"));
        assert_eq!(a.lines().count(), 51);
        assert!(!a.contains('\r'));
    }

    #[test]
    fn free_well_rows_are_trivial() {
        let grid = Grid {
            start: 0.5,
            stop: 2.0,
            points: 4,
        };
        let csv = run_width_sweep(1.7, 0.0, &grid).unwrap();
        for line in csv.lines().skip(1) {
            let cells: Vec<&str> = line.split(',').collect();
            let t: f64 = cells[2].parse().unwrap();
            assert!((t - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn threshold_table_rows() {
        let grid = Grid {
            start: 0.2,
            stop: 0.4,
            points: 2,
        };
        let csv = run_threshold_table(&grid).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "beta,E_t_closed_form,E_t_bisection,branch,abs_diff");
        assert!(lines[1].contains(",trig,"));
        assert!(lines[2].contains(",real-radical,"));
        for line in &lines[1..] {
            let diff: f64 = line.split(',').last().unwrap().parse().unwrap();
            assert!(diff < 1e-9);
        }
    }

    #[test]
    fn compare_table_excess_column_is_consistent() {
        let grid = Grid {
            start: 2.0,
            stop: 3.0,
            points: 3,
        };
        let csv = run_compare_nonrel(1.01, 0.2, &grid).unwrap();
        for line in csv.lines().skip(1) {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert!((cells[3] - (cells[1] - cells[2])).abs() < 1e-12);
        }
    }
}
