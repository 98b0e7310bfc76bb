//! End-to-end tests of the `moduli` binary: output contracts, exit codes,
//! cache round trips, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn moduli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli"))
        .args(args)
        .env_remove("MODULI_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn correlator_json_contract() {
    let out = moduli(&["correlator", "--g", "2", "--d", "4", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        r#"{"normalized":"1","raw":"1/1152"}"#
    );
}

#[test]
fn volume_json_contract() {
    let out = moduli(&["volume", "--g", "1", "--n", "1", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["kind"], "volume");
    assert_eq!(value["coefficient"], "2/3");
    assert_eq!(value["pi_power"], 2);
    assert!(value["breakdown"].as_array().unwrap().len() >= 2);
}

#[test]
fn svc_json_contract() {
    let out = moduli(&["svc", "--g", "2", "--n", "0", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["kind"], "c_area");
    assert_eq!(value["c_area"]["coefficient"], "19/6");
    assert_eq!(value["c_area"]["pi_power"], -2);
    assert_eq!(value["kappa"].as_array().unwrap().len(), 3);
}

#[test]
fn graphs_text_contract() {
    let out = moduli(&["graphs", "--g", "1", "--n", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("V=1;E=1;vertices=[(0,1,legs{1})];edges=[]"));
    assert!(text.contains("V=1;E=0;vertices=[(1,0,legs{1})];edges=[]"));
}

#[test]
fn exit_codes() {
    // Unknown flag: usage error 64.
    let usage = moduli(&["volume", "--bogus", "3"]);
    assert_eq!(usage.status.code(), Some(64));
    // Dimension violation: domain error 1.
    let domain = moduli(&["correlator", "--g", "1", "--d", "5"]);
    assert_eq!(domain.status.code(), Some(1));
    // A passing verify suite: 0.
    let verify = moduli(&["verify", "--suite", "graphs"]);
    assert_eq!(verify.status.code(), Some(0));
    let text = stdout(&verify);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn output_is_deterministic() {
    let a = moduli(&["volume", "--g", "2", "--n", "1", "--format", "json"]);
    let b = moduli(&["volume", "--g", "2", "--n", "1", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    // Single-threaded run produces identical bytes.
    let c = moduli(&[
        "volume", "--g", "2", "--n", "1", "--format", "json", "--threads", "1",
    ]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("moduli-cli-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache: PathBuf = dir.join("cache.txt");
    let cache_str = cache.to_str().unwrap();

    let first = moduli(&["correlator", "--g", "3", "--d", "7", "--cache", cache_str]);
    assert!(first.status.success());
    let contents = std::fs::read_to_string(&cache).unwrap();
    assert!(contents.starts_with("MKCACHE v1\n"));
    assert!(contents.lines().count() > 1);

    // Second run loads and re-saves the identical file.
    let second = moduli(&["correlator", "--g", "3", "--d", "7", "--cache", cache_str]);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&cache).unwrap(), contents);

    // The environment variable is an equivalent default.
    let env_run = Command::new(env!("CARGO_BIN_EXE_moduli"))
        .args(["correlator", "--g", "3", "--d", "7"])
        .env("MODULI_CACHE", cache_str)
        .output()
        .unwrap();
    assert!(env_run.status.success());
    assert_eq!(env_run.stdout, first.stdout);

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn hsum_exact_contract() {
    let out = moduli(&["hsum", "--k", "2", "--N", "3", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // H_2(3) = 1; Z_2(3) = 2 * zeta(2) zeta(4) / 2 = pi^6/540, exactly.
    assert_eq!(value["H"], "1");
    assert_eq!(value["Z"], "1/540 * pi^6");
}

#[test]
fn report_runs_and_is_deterministic() {
    let a = moduli(&["report", "--max-g", "2", "--format", "csv"]);
    assert!(a.status.success());
    let b = moduli(&["report", "--max-g", "2", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("g,n,statistic,value,deviation"));
    assert!(text.contains("volume ratio"));
    assert!(text.contains("c_area"));
}
