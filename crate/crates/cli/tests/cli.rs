use std::fs;
use std::path::{Path, PathBuf};

use hcyc::export::fixture_names;
use hcyc::resolve::Resolved;
use hcyc::{parse_spec, run_cli, Outcome};
use hopf_cyclic::fixtures::{catalog, fixture};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture_path(name: &str) -> String {
    fixtures_dir()
        .join(format!("{name}.hcs"))
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Outcome {
    run_cli(std::iter::once("hcyc").chain(args.iter().copied()))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn every_fixture_is_shipped_and_byte_canonical() {
    for name in fixture_names() {
        let path = fixture_path(&name);
        let bytes = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        let generated = run(&["fixture", &name]);
        assert_eq!(generated.code, 0, "{name}");
        assert_eq!(generated.stdout, bytes, "{name} differs from the generator");
        let formatted = run(&["fmt", &path]);
        assert_eq!(formatted.code, 0, "{name}: {}", formatted.stderr);
        assert_eq!(formatted.stdout, bytes, "{name} is not canonical");
    }
}

#[test]
fn catalog_files_resolve_to_the_catalog_structures() {
    for name in catalog() {
        let text = fs::read_to_string(fixture_path(name)).unwrap();
        let doc = parse_spec(&text).unwrap();
        let res = Resolved::new(&doc).unwrap();
        let expected = fixture(name).unwrap().payload;
        assert_eq!(res.payload(name), Some(expected), "{name}");
    }
}

#[test]
fn valid_fixtures_verify_and_mutants_fail() {
    let mut mutants = 0;
    for name in fixture_names() {
        let out = run(&["verify", &fixture_path(name.as_str())]);
        let negative = hopf_cyclic::fixtures::mutant_by_name(&name).is_some() || name.ends_with("badAYD");
        if negative {
            mutants += 1;
            assert_eq!(out.code, 1, "{name} should fail:\n{}", out.stdout);
            assert!(out.stdout.contains("FAIL"), "{name}");
            assert!(out.stdout.contains("witness"), "{name}");
        } else {
            assert_eq!(out.code, 0, "{name}:\n{}", out.stdout);
        }
    }
    assert!(mutants >= 20);
}

#[test]
fn mutants_report_their_recorded_axiom() {
    for m in hopf_cyclic::fixtures::mutants() {
        let out = run(&["verify", &fixture_path(m.name)]);
        let line = out
            .stdout
            .lines()
            .find(|l| l.starts_with("FAIL") && l.contains(m.breaks))
            .unwrap_or_else(|| panic!("{}: no failure of {}\n{}", m.name, m.breaks, out.stdout));
        assert!(line.contains("witness ("), "{line}");
    }
}

#[test]
fn zero_denominator_is_a_positioned_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixture_path("Mtriv"))
        .unwrap()
        .replacen("\"value\": \"1\"", "\"value\": \"1/0\"", 1);
    let path = write_temp(&dir, "bad.hcs", &text);
    let out = run(&["verify", &path]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with(&format!("error: {path}:")), "{}", out.stderr);
    let pos = out.stderr[format!("error: {path}:").len()..]
        .split(':')
        .take(2)
        .collect::<Vec<_>>();
    assert!(pos.iter().all(|p| p.parse::<usize>().is_ok()), "{}", out.stderr);
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "broken.hcs", "{\n  \"field\": \"Q\",\n  \"spaces\": {\n");
    let out = run(&["fmt", &path]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains(&format!("{path}:4:")), "{}", out.stderr);
}

#[test]
fn undefined_label_is_a_resolution_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixture_path("Mtriv")).unwrap().replacen(
        "\"inputs\": [\"g\", \"m\"]",
        "\"inputs\": [\"h\", \"m\"]",
        1,
    );
    let path = write_temp(&dir, "bad.hcs", &text);
    let out = run(&["verify", &path]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("\"h\""), "{}", out.stderr);
}

#[test]
fn missing_file_and_bad_arguments_exit_two() {
    assert_eq!(run(&["verify", "/nonexistent/x.hcs"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["hc", &fixture_path("signA"), "--bundle", "nope"]).code, 2);
}

#[test]
fn tiny_budget_exits_three() {
    let out = run(&["--budget", "10", "hc", &fixture_path("C=H-kZ3"), "--bundle", "C=H-kZ3"]);
    assert_eq!(out.code, 3, "{}", out.stdout);
    assert!(out.stdout.contains("budget"), "{}", out.stdout);
}

#[test]
fn reports_are_deterministic() {
    for name in [
        "cup1-signA-kZ2",
        "cup2-signA-action",
        "homotopy-M2graded",
        "C=H-kZ2",
        "kZ2-badcoassoc",
    ] {
        for out in ["text", "json"] {
            let a = run(&["--out", out, "jobs", &fixture_path(name)]);
            let b = run(&["--out", out, "jobs", &fixture_path(name)]);
            assert_eq!(a, b, "{name} {out}");
        }
    }
}

#[test]
fn ground_coalgebra_dimensions() {
    let out = run(&[
        "--max-degree",
        "2",
        "hc",
        &fixture_path("C=H-kZ2"),
        "--bundle",
        "C=H-kZ2",
    ]);
    assert_eq!(out.code, 0);
    for (d, h) in [(0, 1), (1, 0), (2, 1)] {
        assert!(out.stdout.contains(&format!("HC^{d} = {h} ")), "{}", out.stdout);
    }
}

#[test]
fn json_lists_every_verdict() {
    let text = run(&["jobs", &fixture_path("cup1-signA-kZ2")]);
    let json = run(&["--out", "json", "jobs", &fixture_path("cup1-signA-kZ2")]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    let verdicts: usize = v
        .as_array()
        .map(|rs| rs.iter().map(|r| r["verdicts"].as_array().unwrap().len()).sum())
        .unwrap_or_else(|| v["verdicts"].as_array().unwrap().len());
    let lines = text
        .stdout
        .lines()
        .filter(|l| l.starts_with("pass") || l.starts_with("FAIL"))
        .count();
    assert_eq!(verdicts, lines);
    assert!(verdicts > 0);
    assert_eq!(text.code, json.code);
}

#[test]
fn cup_demos_pass() {
    let cup2 = run(&["jobs", &fixture_path("cup2-signA-action")]);
    assert_eq!(cup2.code, 0, "{}", cup2.stdout);
    assert!(cup2.stdout.contains("pass  closed-form check: exact match"));
    let cup1 = run(&["jobs", &fixture_path("cup1-signA-kZ2")]);
    assert_eq!(cup1.code, 0, "{}", cup1.stdout);
    assert!(cup1.stdout.contains("pass  class invariance"));
    let h = run(&["jobs", &fixture_path("homotopy-M2graded")]);
    assert_eq!(h.code, 0, "{}", h.stdout);
}

#[test]
fn bad_ayd_control_fails_an_identity() {
    let out = run(&["jobs", &fixture_path("signA-badAYD")]);
    assert_eq!(out.code, 1);
    assert!(
        out.stdout.lines().any(|l| l.starts_with("FAIL  lambda-order")),
        "{}",
        out.stdout
    );
}

#[test]
fn binary_exit_code_matches_the_report() {
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_hcyc"))
        .args(["verify", &fixture_path("kZ2-badcoassoc")])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let ok = std::process::Command::new(env!("CARGO_BIN_EXE_hcyc"))
        .args(["verify", &fixture_path("kZ2")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}
