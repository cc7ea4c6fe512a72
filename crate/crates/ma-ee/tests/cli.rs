//! End-to-end checks of the `ma-ee` binary: output formats, config
//! precedence, and exit codes.

// Expected-value literals keep every digit their extended-precision
// computation produced.
#![allow(clippy::excessive_precision)]

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ma-ee"));
    // Keep the ambient environment from leaking a config into the tests.
    cmd.env_remove("MA_EE_CONFIG");
    cmd
}

fn stdout_of(out: Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

fn write_cfg(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn motor_curve_emits_the_full_curve() {
    let text = stdout_of(bin().arg("motor-curve").output().unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1002);
    assert_eq!(lines[0], "omega_rad_s,torque_nm,power_w");
    assert_eq!(lines[1], "0.00000000000e0,2.19696000000e-2,0.00000000000e0");

    let last: Vec<f64> = lines[1001].split(',').map(|f| f.parse().unwrap()).collect();
    assert!((last[0] - 582.65889568719714).abs() < 1e-6, "no-load speed {}", last[0]);
    assert!(last[1].abs() < 1e-9, "torque at no-load speed {}", last[1]);
    assert!(last[2].abs() < 1e-6, "power at no-load speed {}", last[2]);

    // Power rises from rest before collapsing at the no-load speed.
    let mid: Vec<f64> = lines[501].split(',').map(|f| f.parse().unwrap()).collect();
    assert!(mid[2] > 2.0, "mid-curve power {}", mid[2]);
}

#[test]
fn solve_output_is_stable_and_json_is_well_formed() {
    let a = stdout_of(bin().args(["solve", "--seed", "7"]).output().unwrap());
    let b = stdout_of(bin().args(["solve", "--seed", "7"]).output().unwrap());
    assert_eq!(a, b);
    assert!(a.starts_with("scheme,x_t_m,power_w,speed_m_s,tau_s,ee_bits_per_hz_j,dinkelbach_iters\n"));

    let text = stdout_of(bin().args(["solve", "--seed", "7", "--json"]).output().unwrap());
    let sol: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(sol["scheme"], "Proposed");
    let x = sol["x_t_m"].as_f64().unwrap();
    assert!((0.0..=0.12).contains(&x), "position {x} outside the rail");
    assert!(sol["power_w"].as_f64().unwrap() <= 39.810717055349725 * (1.0 + 1e-12));
    assert!(sol["ee_bits_per_hz_j"].as_f64().unwrap() > 0.0);
    assert!(sol["tau_s"].as_f64().unwrap() >= 0.0);
    assert!(sol["dinkelbach_iters"].as_u64().unwrap() <= 100);
}

#[test]
fn solve_trace_goes_to_a_sidecar_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sol.csv");
    let status = bin()
        .args(["solve", "--seed", "3", "--trace", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let record = std::fs::read_to_string(&out).unwrap();
    assert!(record.starts_with("scheme,x_t_m,"));

    let trace = std::fs::read_to_string(dir.path().join("sol.csv.trace.csv")).unwrap();
    let mut lines = trace.lines();
    assert_eq!(
        lines.next().unwrap(),
        "candidate,position_m,reachable,iteration,eta,power_w"
    );
    let indices: Vec<usize> = trace
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    // Every grid candidate shows up, in order.
    assert_eq!(indices.first(), Some(&0));
    assert_eq!(indices.last(), Some(&90));
}

#[test]
fn solve_trace_on_stdout_separates_record_and_trace() {
    let text = stdout_of(bin().args(["solve", "--seed", "3", "--trace"]).output().unwrap());
    assert!(text.starts_with("scheme,"));
    assert!(
        text.contains("\n\ncandidate,position_m,reachable,"),
        "missing blank-line separator before the trace table"
    );
}

#[test]
fn sweep_emits_one_row_per_value_and_scheme() {
    let text = stdout_of(
        bin()
            .args([
                "sweep",
                "--param",
                "array_len",
                "--values",
                "0.03,0.06,0.12,0.18,0.24",
                "--realizations",
                "5",
                "--seed",
                "0",
            ])
            .output()
            .unwrap(),
    );
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "param,scheme,mean_ee,std_ee,mean_move_m,mean_power_w");
    assert_eq!(lines.len(), 1 + 5 * 4, "5 values x 4 schemes");
    for scheme in ["Proposed", "Benchmark1", "Benchmark2", "FPA"] {
        assert_eq!(
            lines.iter().filter(|l| l.contains(&format!(",{scheme},"))).count(),
            5,
            "{scheme} row count"
        );
    }
}

#[test]
fn config_file_flag_beats_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let env_cfg = write_cfg(dir.path(), "env.json", r#"{"seed_base": 11}"#);
    let flag_cfg = write_cfg(dir.path(), "flag.json", r#"{"seed_base": 29}"#);

    let from_env = stdout_of(
        bin()
            .arg("solve")
            .env("MA_EE_CONFIG", &env_cfg)
            .output()
            .unwrap(),
    );
    let from_flag = stdout_of(bin().args(["--config", &flag_cfg, "solve"]).output().unwrap());
    let both = stdout_of(
        bin()
            .args(["--config", &flag_cfg, "solve"])
            .env("MA_EE_CONFIG", &env_cfg)
            .output()
            .unwrap(),
    );

    assert_ne!(from_env, from_flag, "the two seeds must give different channels");
    assert_eq!(both, from_flag);

    // And either source must match the equivalent --seed flag run.
    let seeded = stdout_of(bin().args(["solve", "--seed", "11"]).output().unwrap());
    assert_eq!(from_env, seeded);
}

#[test]
fn sweep_section_in_the_config_drives_a_bare_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "sweep.json",
        r#"{"sweep": {"param": "num_paths", "values": [1, 4],
             "realizations": 3, "schemes": ["FPA"]}}"#,
    );
    let text = stdout_of(
        bin()
            .arg("sweep")
            .env("MA_EE_CONFIG", &cfg)
            .output()
            .unwrap(),
    );
    assert_eq!(text.lines().count(), 3, "header + 2 values x 1 scheme");

    // Without any sweep source the subcommand must refuse to guess.
    let out = bin().arg("sweep").output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "stderr: {err}");
    assert!(err.contains("sweep"), "stderr: {err}");
}

#[test]
fn bad_inputs_exit_nonzero_and_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();

    let bad_key = write_cfg(dir.path(), "bad_key.json", r#"{"system": {"init_pos": 0.2}}"#);
    let out = bin().args(["--config", &bad_key, "solve"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:") && err.contains("system"), "stderr: {err}");

    let not_json = write_cfg(dir.path(), "broken.json", "{ nope");
    let out = bin().args(["--config", &not_json, "solve"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = bin()
        .args(["sweep", "--param", "bogus", "--values", "1,2", "--realizations", "1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bogus") && err.contains("sweep.param"), "stderr: {err}");

    let out = bin()
        .args(["sweep", "--param", "speed", "--values", "1,zz", "--realizations", "1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep.values"));
}
