use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn heis(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heis"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("HEIS_THREADS")
        .output()
        .expect("spawn heis")
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verdict_on_plane() {
    let dir = tempfile::tempdir().unwrap();
    let o = heis(&["verdict", "--field", "plane:0.3,0.1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Plane"), "{}", stdout(&o));
    let r = report(dir.path());
    assert_eq!(r["passed"], true);
    assert_eq!(r["command"], "verdict");
    for c in r["checks"].as_array().unwrap() {
        assert!(!c["anchor"].as_str().unwrap().is_empty());
        assert!(c["measured"].is_number() && c["threshold"].is_number());
    }
    assert!(dir.path().join("profile.csv").exists());
}

#[test]
#[allow(clippy::approx_constant)]
fn cantor_suite_reports_tau_integral() {
    let dir = tempfile::tempdir().unwrap();
    let o = heis(&["cantor-suite", "--n", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = report(dir.path())["values"]["tau_integral"]
        .as_f64()
        .unwrap();
    assert!((v - 0.7071067812).abs() <= 1e-10, "{v}");
    assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-12);
}

#[test]
fn flow_t2_warns_about_blowup() {
    let dir = tempfile::tempdir().unwrap();
    let o = heis(
        &["flow", "--field", "t2", "--tau", "1", "--to", "0.5"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning"), "{}", stdout(&o));
    let r = report(dir.path());
    let g = r["values"]["gamma_at_target"].as_f64().unwrap();
    assert!((g - 2.0).abs() <= 1e-6, "{g}");
    assert_eq!(r["values"]["blowup"], true);
    assert!(r["values"]["blowup_near"].as_f64().unwrap() < 1.0);
    assert!(!r["warnings"].as_array().unwrap().is_empty());
    // past the blow-up the target is unreachable and the run fails
    let dir = tempfile::tempdir().unwrap();
    let o = heis(
        &["flow", "--field", "t2", "--tau", "1", "--to", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(heis(&["bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(
        heis(&["area", "--field", "nope"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(heis(&[], dir.path()).status.code(), Some(2));
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "command = [").unwrap();
    assert_eq!(
        heis(&["--config", cfg.to_str().unwrap()], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "command = \"verdict\"\nfield = \"plane:0.3,0.1\"\n").unwrap();
    let a = dir.path().join("a");
    let o = heis(&["--config", cfg.to_str().unwrap()], &a);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Plane"));
    let b = dir.path().join("b");
    let o = heis(
        &["--config", cfg.to_str().unwrap(), "--field", "cantor:5"],
        &b,
    );
    assert!(stdout(&o).starts_with("NotPlane"), "{}", stdout(&o));
    assert_ne!(report(&a)["config_hash"], report(&b)["config_hash"]);
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        let dir = tempfile::tempdir().unwrap();
        let o = Command::new(env!("CARGO_BIN_EXE_heis"))
            .args(["second-variation", "--field", "cone-eps:0.1", "--out"])
            .arg(dir.path())
            .env("HEIS_THREADS", threads)
            .output()
            .unwrap();
        (
            o.status.code(),
            std::fs::read(dir.path().join("report.json")).unwrap(),
        )
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn cone_suite_flags_the_bound_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let o = heis(&["cone-suite"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let r = report(dir.path());
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["bound_ratio_nonincreasing"]);
}

#[test]
fn mesh_counts_and_determinism() {
    let args = [
        "mesh",
        "--field",
        "cantor-limit",
        "--s-range",
        "-2,2",
        "--tau-range",
        "-0.5,1.5",
        "--grid",
        "100x100",
    ];
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(heis(&args, a.path()).status.code(), Some(0));
    assert_eq!(heis(&args, b.path()).status.code(), Some(0));
    let obj = std::fs::read_to_string(a.path().join("mesh.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 10000);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 19602);
    assert_eq!(
        obj.as_bytes(),
        std::fs::read(b.path().join("mesh.obj")).unwrap().as_slice()
    );
}

#[test]
fn every_command_writes_its_report() {
    for cmd in heis::suite::Command::ALL {
        let dir = tempfile::tempdir().unwrap();
        let o = heis(&[cmd.name()], dir.path());
        assert!(
            matches!(o.status.code(), Some(0) | Some(1)),
            "{}: {:?}",
            cmd.name(),
            o
        );
        let r = report(dir.path());
        assert_eq!(r["command"], cmd.name());
        assert_eq!(r["passed"], o.status.code() == Some(0));
        for line in stdout(&o).lines().filter_map(|l| l.strip_prefix("wrote ")) {
            assert!(Path::new(line).exists(), "{line}");
        }
    }
}
