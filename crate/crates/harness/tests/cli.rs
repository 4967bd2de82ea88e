//! End-to-end checks of the command-line surface: exit codes, fail-closed
//! configuration, and the selection semantics of the operator list.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_laguerre-harness"))
}

#[test]
fn malformed_config_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "dimnension = 1\n").unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "verify"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown key"), "{stderr}");
}

#[test]
fn hypothesis_violation_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("p1.cfg");
    std::fs::write(
        &cfg,
        "exponent.kind = constant\nexponent.constant = 1.0\n",
    )
    .unwrap();
    let out = bin()
        .args([
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            dir.path().join("out").to_str().unwrap(),
            "verify",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("hypotheses"), "{stderr}");
}

#[test]
fn empty_operator_list_runs_core_suites_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("core.cfg");
    std::fs::write(
        &cfg,
        "operators = \n\
         samples.pairs = 100\n\
         samples.product = 5000\n\
         grid.order = 24\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = bin()
        .args([
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
            "verify",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    let ids: Vec<&str> = summary
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ids, vec!["1", "2", "7", "12", "13", "16"]);
    assert!(!out_dir.join("semigroup.csv").exists());
    assert!(out_dir.join("specfun.csv").exists());
}

#[test]
fn report_reads_back_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    std::fs::create_dir_all(&out_dir).unwrap();
    std::fs::write(
        out_dir.join("summary.csv"),
        "criterion,name,rows,failures,pass\n1,orthonormality,4,0,true\n",
    )
    .unwrap();
    let out = bin()
        .args(["--out", out_dir.to_str().unwrap(), "report"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    // a failing summary row propagates to the exit code
    std::fs::write(
        out_dir.join("summary.csv"),
        "criterion,name,rows,failures,pass\n1,orthonormality,4,1,false\n",
    )
    .unwrap();
    let out = bin()
        .args(["--out", out_dir.to_str().unwrap(), "report"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn filter_limits_the_battery() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("f.cfg");
    std::fs::write(&cfg, "samples.product = 5000\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = bin()
        .args([
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
            "--filter",
            "product*",
            "verify",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("product-inequality"));
    assert!(!stdout.contains("orthonormality"));
}
