//! End-to-end tests of the `qc` binary: exit codes, artifact layout,
//! format contracts, and cross-checks against the library.

use std::path::Path;
use std::process::{Command, Output};

fn qc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qc"))
        .args(args)
        .output()
        .expect("spawn qc")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("read {name}: {e}"))
}

const RESONANT: &str = r#"{
  "params": { "beta": 10.0, "inv_a1": 0.0, "a0": 1.0, "r0": 2.0, "theta0": 0.0 },
  "potential": { "rho_min": 2.0, "rho_max": 1000.0, "points_per_decade": 8 },
  "scattering": { "a1_min": 10.0, "a1_max": 1000000.0, "points": 300 },
  "detcheck": { "rho_values": [10.0, 100.0], "m_max": 1 }
}"#;

#[test]
fn help_exits_zero_and_lists_all_subcommands() {
    let out = qc(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["potential", "spectrum", "scattering", "detcheck"] {
        assert!(text.contains(sub), "--help does not list {sub}");
    }
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{ "bogus": 1 }"#);
    let out = qc(&["potential", "--config", &config]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_command_section_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{ "params": { "beta": 10.0, "inv_a1": 0.0, "a0": 1.0, "r0": 2.0 } }"#,
    );
    let out = qc(&[
        "spectrum",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_physical_params_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{ "params": { "beta": 0.2, "inv_a1": 0.0, "a0": 1.0, "r0": 2.0 },
             "potential": { "rho_min": 2.0, "rho_max": 10.0, "points_per_decade": 4 } }"#,
    );
    let out = qc(&[
        "potential",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn potential_resonant_header_and_empty_branch1_minus() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), RESONANT);
    let out = qc(&[
        "potential",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = read(dir.path(), "potential.csv");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "rho,v_branchI_plus,v_branchI_minus,v_branchII_plus,v_branchII_minus,v_I0_asympt,v_II0_asympt,v_asympt"
    );
    let mut plus_seen = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 8);
        // at exact resonance branch I binds only with the plus sign
        assert!(cells[2].is_empty(), "v_branchI_minus populated: {line}");
        if !cells[1].is_empty() {
            plus_seen += 1;
        }
    }
    assert!(
        plus_seen > 10,
        "v_branchI_plus mostly empty ({plus_seen} rows)"
    );

    // manifest accompanies the data and checksums it
    let manifest: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "manifest.json")).unwrap();
    assert!(manifest["outputs"]["potential.csv"].is_string());
    assert!(manifest["config_sha256"].as_str().unwrap().len() == 64);
}

#[test]
fn potential_a1_50_branch1_minus_turns_on_near_rho_10() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{ "params": { "beta": 10.0, "inv_a1": 0.02, "a0": 1.0, "r0": 2.0 },
             "potential": { "rho_min": 2.0, "rho_max": 100.0, "points_per_decade": 48 } }"#,
    );
    let out = qc(&[
        "potential",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // the minus-sign branch-I potential vanishes at rho = sqrt(2 a1) = 10:
    // empty below, shallow (near-zero) just above
    let csv = read(dir.path(), "potential.csv");
    let mut first_on: Option<(f64, f64)> = None;
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let rho: f64 = cells[0].parse().unwrap();
        if cells[2].is_empty() {
            assert!(
                first_on.is_none() || rho < 10.5,
                "gap after onset at rho = {rho}"
            );
        } else if first_on.is_none() {
            first_on = Some((rho, cells[2].parse().unwrap()));
        }
    }
    let (rho_on, v_on) = first_on.expect("v_branchI_minus never populated");
    assert!((9.5..=11.5).contains(&rho_on), "onset at rho = {rho_on}");
    assert!(v_on < 0.0 && v_on > -1e-2, "onset value {v_on} not shallow");
}

#[test]
fn spectrum_summary_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{ "params": { "beta": 20.0, "inv_a1": 0.0, "a0": 1.0, "r0": 2.0 },
             "spectrum": { "n_min": 1, "n_max": 8, "rho_min": 0.5, "rho_max": 10000.0,
                           "points": 24000, "cap": 1000.0 } }"#,
    );
    let out_dir = dir.path().join("run1");
    let out = qc(&[
        "spectrum",
        "--config",
        &config,
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = read(&out_dir, "spectrum.csv");
    assert!(csv.starts_with("n,E_wkb,E_numerov,R_n\n"));
    assert_eq!(csv.lines().count(), 9);

    let summary: serde_json::Value =
        serde_json::from_str(&read(&out_dir, "spectrum_summary.json")).unwrap();
    let slope_fit = summary["slope_fit"].as_f64().unwrap();
    let slope_theory = summary["slope_theory"].as_f64().unwrap();
    let ratio = slope_fit / slope_theory;
    assert!((0.85..=1.15).contains(&ratio), "slope ratio {ratio}");
    assert!(summary["numerov_node_count"].as_u64().unwrap() >= 8);
    assert!(summary["n0_estimate"].is_null(), "N0 finite at resonance");

    // byte-identical rerun: no timestamps or ordering noise in data files
    let out_dir2 = dir.path().join("run2");
    let out = qc(&[
        "spectrum",
        "--config",
        &config,
        "--out",
        out_dir2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(csv, read(&out_dir2, "spectrum.csv"));
    assert_eq!(
        read(&out_dir, "spectrum_summary.json"),
        read(&out_dir2, "spectrum_summary.json")
    );
}

#[test]
fn scattering_pole_count_matches_resonance_positions() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), RESONANT);
    let out = qc(&[
        "scattering",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = read(dir.path(), "scattering.csv");
    assert!(csv.starts_with("a1,N0,A0,is_pole\n"));
    let pole_count = csv.lines().filter(|l| l.ends_with(",true")).count();

    let params = quasicoulomb::ModelParams::from_beta(10.0, 0.0, 1.0, 2.0, 0.0).unwrap();
    let expected = quasicoulomb::resonance_positions(&params, &(1..=20).collect::<Vec<_>>())
        .into_iter()
        .filter(|r| (10.0..=1e6).contains(&r.a1_exact))
        .count();
    assert_eq!(pole_count, expected);
}

#[test]
fn detcheck_default_passes_below_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), RESONANT);
    let out = qc(&[
        "detcheck",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let summary: serde_json::Value =
        serde_json::from_str(&read(dir.path(), "detcheck_summary.json")).unwrap();
    assert_eq!(summary["pass"], serde_json::Value::Bool(true));
    assert!(summary["max_rel_diff"].as_f64().unwrap() < 1e-8);
    assert!(summary["rows"].as_u64().unwrap() >= 4);
}

#[test]
fn json_format_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), RESONANT);
    let out = qc(&[
        "potential",
        "--config",
        &config,
        "--out",
        dir.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows: Vec<serde_json::Value> =
        serde_json::from_str(&read(dir.path(), "potential.json")).unwrap();
    assert!(rows.len() > 10);
    assert!(rows.iter().all(|r| r["rho"].is_f64()));
    assert!(rows.iter().all(|r| r["v_branchI_minus"].is_null()));
}
