//! Black-box tests of the command-line harness.

use std::process::{Command, Output};

fn run_in(dir: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diracwell"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

#[test]
fn width_sweep_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["width-sweep", "--points", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("width-sweep.csv")).unwrap();
    assert!(csv.starts_with("k_prime_a,a,T,phi,tau_rel,tau_nonrel,is_resonant\n"));
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn energy_sweep_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["energy-sweep", "--points", "12", "--out", "e.csv", "--plot"],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("e.csv")).unwrap();
    assert!(csv.starts_with("alpha,k_prime_a,T,tau_rel,asymptotic_tau\n"));
    let script = std::fs::read_to_string(dir.path().join("e.gp")).unwrap();
    assert!(script.contains("'e.csv'"));
    assert!(!script.contains(dir.path().to_str().unwrap()));
}

#[test]
fn config_file_fills_in_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("run.conf"),
        "alpha = 1.02\npoints = 5 # small grid\nout = from-config.csv\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["width-sweep", "--config", "run.conf"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("from-config.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);

    // A flag beats the same key in the file.
    let out = run_in(
        dir.path(),
        &["width-sweep", "--config", "run.conf", "--points", "3", "--out", "flag.csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("flag.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.conf"), "alpha 1.02\n").unwrap();
    let out = run_in(dir.path(), &["width-sweep", "--config", "bad.conf"]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(dir.path().join("unknown.conf"), "frobnicate = 3\n").unwrap();
    let out = run_in(dir.path(), &["width-sweep", "--config", "unknown.conf"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("frobnicate"));

    let out = run_in(dir.path(), &["width-sweep", "--points", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run_in(dir.path(), &["width-sweep", "--config", "missing.conf"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn physics_domain_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["width-sweep", "--alpha", "0.9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("physics"));

    let out = run_in(dir.path(), &["threshold-table", "--beta-min=-1.0", "--beta-max", "1.0", "--points", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn packet_mode_writes_table_and_traces() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "packet",
            "--points", "3",
            "--width-min", "1.2",
            "--width-max", "2.2",
            "--trace-dir", "traces",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("packet.csv")).unwrap();
    assert!(csv.starts_with(
        "k_prime_a,tau_theory,tau_numeric,transmitted_fraction,distortion,validity_ok,status\n"
    ));
    assert_eq!(csv.lines().count(), 4);
    assert_eq!(csv.matches(",ok").count(), 3);
    for i in 0..3 {
        let trace = dir.path().join("traces").join(format!("trace_{i:04}.csv"));
        let text = std::fs::read_to_string(trace).unwrap();
        assert!(text.starts_with("t,intensity\n"));
        assert!(text.lines().count() > 100);
    }
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("packet sweep: 3 ok, 0 failed"));
}
