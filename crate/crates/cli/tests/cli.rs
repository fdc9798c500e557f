use std::fs;
use std::process::Command;
use std::time::Instant;

use ritzlag::{main_with, PRESET_NAMES};

struct Output {
    code: u8,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with(
        std::iter::once("ritzlag").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

const HEADER: &str = "problem,N,s,basis,nu,central_err_pct,boundary_err_pct,sup_err,energy,wall_ms";

#[test]
fn table1_has_the_published_rows() {
    let out = run(&["run", "table1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().next().unwrap(), HEADER);
    let rows = csv_rows(&out.stdout);
    let pairs: Vec<(&str, &str)> = rows
        .iter()
        .map(|r| (r[1].as_str(), r[2].as_str()))
        .collect();
    assert_eq!(pairs, [("3", "2"), ("4", "3"), ("5", "4")]);
    assert!(rows.iter().all(|r| r[9].is_empty()));
    assert!(out.stderr.contains("3 rows"));
}

#[test]
fn markdown_mirrors_the_table_layout() {
    let out = run(&["run", "--preset", "table2", "--format", "markdown"]);
    assert_eq!(out.code, 0);
    assert!(out
        .stdout
        .contains("| central error % | boundary error % |"));
    assert_eq!(
        out.stdout
            .lines()
            .filter(|l| l.starts_with("| P5 |"))
            .count(),
        4
    );
}

#[test]
fn frequencies_list_the_three_by_three_block() {
    let out = run(&["run", "frequencies"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next().unwrap(), "m,n,omega_est,omega_exact,rel_err");
    let rows = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 9);
    for r in &rows {
        let rel: f64 = r[4].parse().unwrap();
        assert!(rel.abs() < 2e-2, "{r:?}");
    }
    let md = run(&["run", "frequencies", "--format", "markdown"]);
    assert!(md.stdout.contains("| m \\ n | 1 | 2 | 3 |"));
}

#[test]
fn tau_demo_prints_verdicts() {
    let out = run(&["run", "tau-demo", "--format", "markdown"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("m = 0..4: inconsistent"));
    assert!(out.stdout.contains("m = 2..6: trivial_only"));
    assert!(out
        .stdout
        .contains("boundary-term Galerkin, N = 6: inconsistent"));
}

#[test]
fn completeness_demo_separates_the_families() {
    let out = run(&["run", "completeness-demo"]);
    assert_eq!(out.code, 0);
    for r in csv_rows(&out.stdout) {
        let residual: f64 = r[3].parse().unwrap();
        match (r[0].as_str(), r[1].as_str()) {
            ("cosine", "W22") => assert!(residual > 3.5),
            ("augmented", _) => assert!(residual < 1e-10),
            _ => {}
        }
    }
}

#[test]
fn p1_sweep_error_decreases() {
    let out = run(&["sweep", "--problem", "p1", "--n", "5,10,20,40"]);
    assert_eq!(out.code, 0);
    let sup = column(&csv_rows(&out.stdout), 7);
    assert_eq!(sup.len(), 4);
    assert!(sup.windows(2).all(|w| w[1] < w[0]), "{sup:?}");
}

#[test]
fn disk_sweep_energy_is_nondecreasing_in_s() {
    let out = run(&["sweep", "--problem", "p4", "--n", "6", "--s", "2,3,4,5"]);
    assert_eq!(out.code, 0);
    let energy = column(&csv_rows(&out.stdout), 8);
    assert!(
        energy.windows(2).all(|w| w[1] >= w[0] - 1e-10),
        "{energy:?}"
    );
}

#[test]
fn plate_bases_contrast() {
    let plain = run(&["sweep", "--problem", "p5", "--n", "10", "--s", "5"]);
    let aug = run(&[
        "sweep",
        "--problem",
        "p5",
        "--n",
        "10",
        "--s",
        "5",
        "--basis",
        "augmented",
    ]);
    let (p, a) = (csv_rows(&plain.stdout), csv_rows(&aug.stdout));
    assert_eq!(
        (p[0][3].as_str(), a[0][3].as_str()),
        ("cosine", "augmented")
    );
    // Each is scored against the plate its basis actually represents.
    let (cp, ca): (f64, f64) = (p[0][5].parse().unwrap(), a[0][5].parse().unwrap());
    assert!(cp.abs() <= 1.0 && ca.abs() <= 1.5);
    assert!(p[0][8] != a[0][8]);
}

#[test]
fn degenerate_pairs_are_skipped_in_sweeps() {
    let out = run(&["sweep", "--problem", "p4", "--n", "2,5", "--s", "4"]);
    assert_eq!(out.code, 0);
    assert_eq!(csv_rows(&out.stdout).len(), 1);
    assert!(out.stderr.contains("skipped P4 N=2 s=4"));

    let out = run(&["sweep", "--problem", "p4", "--n", "2", "--s", "2,3"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn degenerate_single_run_cites_the_rule() {
    let out = run(&["run", "--problem", "p4", "--n", "2", "--s", "2"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("N_tot > s_tot"), "{}", out.stderr);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["run", "table9"]).code, 1);
    assert_eq!(run(&["run", "--problem", "p4", "--n", "5"]).code, 1);
    assert_eq!(
        run(&[
            "run",
            "--problem",
            "p4",
            "--n",
            "5",
            "--s",
            "4",
            "--basis",
            "augmented"
        ])
        .code,
        1
    );
    assert_eq!(run(&["sweep", "--n", "5"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = run(&["run", "tau-demo", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 4, "{}", out.stderr);
}

#[test]
fn files_are_byte_stable_with_timings_in_the_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.csv"), dir.path().join("b.csv")];
    for p in &paths {
        let out = run(&["run", "table1", "--out", p.to_str().unwrap()]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("table1"));
    }
    assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.csv.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["timings"].as_array().unwrap().len(), 3);
}

#[test]
fn json_carries_coefficients() {
    let out = run(&["run", "--problem", "p1", "--n", "9", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let row = &v["sections"][0]["rows"][0];
    assert_eq!(row["coefficients"].as_array().unwrap().len(), 9);
    let lambda = row["multipliers"][0].as_f64().unwrap();
    assert!((lambda + std::f64::consts::FRAC_PI_2).abs() < 1e-10);
}

#[test]
fn config_files_drive_single_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(
        &path,
        r#"{"problem": "P5", "n": 6, "s": 3, "basis": "augmented", "seed": 7}"#,
    )
    .unwrap();
    let from_file = run(&["run", "--config", path.to_str().unwrap()]);
    let from_flags = run(&[
        "run",
        "--problem",
        "p5",
        "--n",
        "6",
        "--s",
        "3",
        "--basis",
        "augmented",
    ]);
    assert_eq!(from_file.code, 0, "{}", from_file.stderr);
    assert_eq!(from_file.stdout, from_flags.stdout);
}

#[test]
fn every_preset_finishes_within_a_minute() {
    for name in PRESET_NAMES {
        let start = Instant::now();
        let out = run(&["run", name]);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert!(start.elapsed().as_secs() < 60, "{name}");
    }
}

#[test]
fn binary_reports_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_ritzlag");
    let ok = Command::new(exe)
        .args(["run", "tau-demo"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let degenerate = Command::new(exe)
        .args(["run", "--problem", "p4", "--n", "2", "--s", "2"])
        .output()
        .unwrap();
    assert_eq!(degenerate.status.code(), Some(2));
}
