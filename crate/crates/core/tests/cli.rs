use std::process::Command;

use qism_ladder::cli::Report;

fn verify(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("verify runs")
}

#[test]
fn json_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = verify(&["--suite", "pairs", "--precision", "128", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.checks.len(), 11);
    assert_eq!(r.config.precision, 128);
    assert_eq!(r.config.seed, 3);
    assert!(r.checks.iter().all(|c| c.pass && c.backend == "mp128"));
}

#[test]
fn markdown_lists_every_pair() {
    let o = verify(&["--suite", "pairs", "--format", "markdown"]);
    assert_eq!(o.status.code(), Some(0));
    let md = String::from_utf8(o.stdout).unwrap();
    for k in 1..=11 {
        assert!(md.contains(&format!(":P{k}` |")), "P{k} missing");
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "suites = [\"gab\"]\nprecision = 96\n[params.B]\na = \"3/7\"\n").unwrap();
    let out = dir.path().join("r.json");
    let o = verify(&["--config", cfg.to_str().unwrap(), "--precision", "160", "--out", out.to_str().unwrap()]);
    // only the flagged D' entry fails, so the exit status is clean
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = Report::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.config.precision, 160);
    assert_eq!(r.summary.flagged, 1);
    assert_eq!(r.config.params["B"]["a"], "3/7");
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(verify(&["--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(verify(&["--suite", "pairs", "--precision", "32"]).status.code(), Some(2));
    assert_eq!(verify(&["--config", "/nonexistent/verify.toml"]).status.code(), Some(2));
}
