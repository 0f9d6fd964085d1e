//! Behavior of the command-line front end: exit codes, the no-partial-file
//! contract for invalid configs, and the catalog listing.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shearlab"))
}

fn tmp_dir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("shearlab-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn list_prints_twelve_catalog_lines() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().any(|l| l.starts_with("weak-check")));
    assert!(lines.iter().any(|l| l.starts_with("example2")));
    // Stable across invocations.
    let again = bin().arg("list").output().unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn malformed_config_exits_2_without_output_files() {
    let dir = tmp_dir("invalid");
    let cfg = dir.join("bad.toml");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(&cfg, "experiment = \"holder\"\nunknown_key = 1\n").unwrap();
    let out_dir = dir.join("out");
    let out = bin()
        .arg("run")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(
        !Path::new(&out_dir).exists(),
        "validation failure must not create output files"
    );
}

#[test]
fn missing_config_file_exits_2() {
    let out = bin()
        .arg("run")
        .arg("--config")
        .arg("/nonexistent/nope.toml")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn passing_experiment_exits_0_and_writes_report() {
    let dir = tmp_dir("pass");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("kh2d.toml");
    std::fs::write(&cfg, "experiment = \"kh2d\"\n").unwrap();
    let out_dir = dir.join("out");
    let out = bin()
        .arg("run")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report = std::fs::read_to_string(out_dir.join("report.json")).unwrap();
    assert!(report.contains("\"passed\": true"));
    assert!(out_dir.join("results-kh2d-growth.csv").exists());
    assert!(out_dir.join("plot-kh2d-growth.svg").exists());
}

#[test]
fn failing_tolerance_exits_1_and_names_the_criterion() {
    let dir = tmp_dir("fail");
    std::fs::create_dir_all(&dir).unwrap();
    // Force a failure: run the weak check on an extremely coarse grid where
    // the two-level flow's residual cannot meet the tolerance.
    let cfg = dir.join("weak.toml");
    std::fs::write(
        &cfg,
        "experiment = \"weak-check\"\n[params]\nn = 8\nq = 4\ncount = 5\n",
    )
    .unwrap();
    let out_dir = dir.join("out");
    let out = bin()
        .arg("run")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("criterion failed:"),
        "stderr must name the failing criterion, got: {stderr}"
    );
    // The report is still written, with passed = false.
    let report = std::fs::read_to_string(out_dir.join("report.json")).unwrap();
    assert!(report.contains("\"passed\": false"));
}

#[test]
fn profiles_in_the_config_are_honored() {
    let dir = tmp_dir("profiles");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("weak.toml");
    // Band-limited profiles: the residual collapses to the time-rule floor
    // and the experiment passes easily.
    std::fs::write(
        &cfg,
        "experiment = \"weak-check\"\n\
         [profiles.u1]\nkind = \"trig\"\nk = 1\n\
         [profiles.u3]\nkind = \"trig\"\nk = 2\nphase = 0.3\n\
         [params]\nn = 32\ncount = 4\n",
    )
    .unwrap();
    let out_dir = dir.join("out");
    let out = bin()
        .arg("run")
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report = std::fs::read_to_string(out_dir.join("report.json")).unwrap();
    assert!(report.contains("\"kind\": \"trig\""), "config echo must carry the profiles");
}

#[test]
fn seed_override_changes_the_report() {
    let dir = tmp_dir("seed");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("kh3d.toml");
    std::fs::write(&cfg, "experiment = \"kh3d\"\n[params]\nsamples = 5\n").unwrap();
    let run = |seed: &str, sub: &str| -> Vec<u8> {
        let out_dir = dir.join(sub);
        let st = bin()
            .arg("run")
            .arg("--config")
            .arg(&cfg)
            .arg("--seed")
            .arg(seed)
            .arg("--out")
            .arg(&out_dir)
            .output()
            .unwrap();
        assert!(st.status.success());
        std::fs::read(out_dir.join("results-kh3d-spectra.csv")).unwrap()
    };
    let a = run("1", "a");
    let b = run("2", "b");
    assert_ne!(a, b, "different seeds must draw different samples");
}
