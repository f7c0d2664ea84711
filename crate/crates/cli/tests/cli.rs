use std::process::{Command, Output};

fn hexweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexweb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_lists_main_webs_and_experiments() {
    let o = hexweb(&["catalog"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let entries: Vec<&str> = text.lines().filter(|l| !l.starts_with(' ') && !l.is_empty()).collect();
    assert_eq!(entries.iter().filter(|l| l.starts_with("main-")).count(), 5);
    for k in ["pappus", "brianchon", "blaschke"] {
        assert!(entries.iter().any(|l| l.split_whitespace().next() == Some(k)));
    }
    assert!(entries.contains(&"cubic-series [experimental]"));
}

#[test]
fn verify_exit_status_matches_report() {
    let dir = tempfile::tempdir().unwrap();
    for (key, ok) in [("main-b", true), ("main-e-ecc072", false)] {
        let out = dir.path().join(format!("{key}.toml"));
        let o = hexweb(&["verify", &format!("preset:{key}"), "--samples", "20", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.success(), ok, "{key}");
        if !ok {
            assert_eq!(o.status.code(), Some(1));
        }
        let report = std::fs::read_to_string(&out).unwrap();
        assert!(report.contains(&format!("pass = {ok}")), "{key}");
    }
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let out = dir.path().join(name);
        let mut args = vec!["verify", "preset:main-d", "--samples", "30", "--seed", "7", "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert!(hexweb(&args).status.success());
        std::fs::read(out).unwrap()
    };
    let a = run("a.toml", &[]);
    assert_eq!(a, run("b.toml", &[]));
    assert_eq!(a, run("c.toml", &["--sequential"]));
}

#[test]
fn config_files_work_like_presets() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("main-c.toml");
    assert!(hexweb(&["preset", "main-c", "--out", cfg.to_str().unwrap()]).status.success());
    let from_file = hexweb(&["verify", cfg.to_str().unwrap(), "--samples", "10"]);
    let from_preset = hexweb(&["verify", "preset:main-c", "--samples", "10"]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), stdout(&from_preset));
}

#[test]
fn bad_inputs_exit_with_error() {
    assert_eq!(hexweb(&["verify", "preset:nope"]).status.code(), Some(2));
    assert_eq!(hexweb(&["verify", "/nonexistent/web.toml"]).status.code(), Some(2));
    assert_eq!(hexweb(&["scan-experimental", "4.7"]).status.code(), Some(2));
}

#[test]
fn render_writes_svg_with_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("web.svg");
    let o = hexweb(&["render", "preset:blaschke", "--out", out.to_str().unwrap(), "--hexagon", "1,0.55,1.03,0.55"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains("<svg") && svg.contains(">A1</text>") && svg.contains(">A7</text>"));
    let again = dir.path().join("again.svg");
    hexweb(&["render", "preset:blaschke", "--out", again.to_str().unwrap(), "--hexagon", "1,0.55,1.03,0.55"]);
    assert_eq!(svg, std::fs::read_to_string(again).unwrap());
}

#[test]
fn experimental_scans_report_rows_and_seed() {
    let o = hexweb(&["scan-experimental", "4.1", "--samples", "20", "--seed", "12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("web = \"elliptic-swap\"") && text.contains("web = \"elliptic-swap-parabola\""));
    assert!(text.contains("seed = 12") && text.contains("label = \"experimental\""));
    let o = hexweb(&["scan-experimental", "4.2", "--samples", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[region]"));
}
