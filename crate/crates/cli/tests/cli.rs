use std::process::Command;

use clap::Parser;
use serde_json::Value;
use symbell_cli::{run_at, Cli, CliError};

fn run(args: &[&str]) -> Result<(String, i32), CliError> {
    let cli = Cli::try_parse_from(std::iter::once("symbell").chain(args.iter().copied())).expect("valid arguments");
    run_at(&cli, 0).map(|o| (o.output, o.exit_code))
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run(args).unwrap().0).unwrap()
}

fn bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_symbell")).args(args).output().unwrap()
}

#[test]
fn envelope_and_config_echo() {
    let v = json(&["dicke", "--n", "4", "--m", "2"]);
    assert_eq!(v["schema"], "symbell.report/1");
    assert_eq!(v["command"], "dicke");
    assert_eq!(v["config"]["n"], 4);
    assert_eq!(v["config"]["format"], "json");
    assert_eq!(v["result"]["support_size"], 6);
    assert_eq!(v["result"]["norm_sq"], 6);
    assert!(v["result"].get("amplitudes").is_none());
    let v = json(&["dicke", "--n", "3", "--m", "1", "--amplitudes"]);
    let kets: Vec<&str> = v["result"]["amplitudes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["ket"].as_str().unwrap())
        .collect();
    assert_eq!(kets, ["001", "010", "100"]);
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &[
            "spectrum",
            "--op",
            "dicke-bell",
            "--n",
            "9",
            "--method",
            "iter",
            "--seed",
            "5",
            "--workers",
            "2",
        ][..],
        &["spectrum", "--op", "mabk4", "--eigenvalues"][..],
        &["table", "--n-max", "8", "--format", "csv"][..],
        &["bound", "--op", "mabk4", "--method", "brute"][..],
    ] {
        assert_eq!(run(args).unwrap().0, run(args).unwrap().0, "{args:?}");
    }
}

#[test]
fn timestamp_is_the_only_varying_field() {
    let cli = Cli::try_parse_from(["symbell", "expect", "--op", "mermin3", "--state", "ghz:3"]).unwrap();
    let a: Value = serde_json::from_str(&run_at(&cli, 1).unwrap().output).unwrap();
    let mut b: Value = serde_json::from_str(&run_at(&cli, 2).unwrap().output).unwrap();
    assert_ne!(a, b);
    b["timestamp"] = a["timestamp"].clone();
    assert_eq!(a, b);
}

#[test]
fn worker_count_does_not_change_results() {
    let base = [
        "spectrum",
        "--op",
        "dicke-bell",
        "--n",
        "13",
        "--method",
        "iter",
        "--seed",
        "3",
    ];
    let one = json(&[&base[..], &["--workers", "1"]].concat());
    let four = json(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one["result"], four["result"]);
}

#[test]
fn cached_report_equals_fresh_computation() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [
        &["spectrum", "--op", "dicke-bell", "--n", "7", "--eigenvalues"][..],
        &[
            "spectrum",
            "--op",
            "dicke-bell",
            "--n",
            "11",
            "--method",
            "iter",
            "--seed",
            "9",
        ][..],
        &["conjecture", "--n-max", "6"][..],
    ] {
        let fresh = json(args);
        let with_cache = [args, &["--cache-dir", d]].concat();
        let first = json(&with_cache);
        let entries = std::fs::read_dir(d).unwrap().count();
        assert!(entries > 0);
        let second = json(&with_cache);
        assert_eq!(
            std::fs::read_dir(d).unwrap().count(),
            entries,
            "second run must hit the cache"
        );
        assert_eq!(fresh["result"], first["result"], "{args:?}");
        assert_eq!(fresh["result"], second["result"], "{args:?}");
    }
}

#[test]
fn cache_hits_keep_the_requested_operator_name() {
    // w-bell and dicke-bell:3 share a hash
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = json(&["spectrum", "--op", "dicke-bell", "--n", "3", "--cache-dir", d]);
    let b = json(&["spectrum", "--op", "w-bell", "--cache-dir", d]);
    assert_eq!(a["result"]["operator"], "dicke-bell:3");
    assert_eq!(b["result"]["operator"], "w-bell");
    assert_eq!(a["result"]["operator_hash"], b["result"]["operator_hash"]);
}

#[test]
fn expectation_values() {
    let v = json(&["expect", "--op", "w-bell", "--state", "dicke:1,3"]);
    assert_eq!(v["result"]["value"], "4");
    assert_eq!(v["result"]["exact"], true);
    let v = json(&["expect", "--op", "dicke-bell", "--state", "dicke:3,7"]);
    assert_eq!(v["result"]["value"], "24");
    let v = json(&["expect", "--op", "dicke-bell", "--n", "3", "--state", "basis:000"]);
    assert_eq!(v["result"]["value"], "0");
    let v = json(&["expect", "--op", "mabk4", "--state", "ghz:4,1"]);
    assert!((v["result"]["value_f64"].as_f64().unwrap() - 8.0 * 2f64.sqrt()).abs() < 1e-9);
    assert!(v["result"]["value"].is_null());
    assert!(matches!(
        run(&["expect", "--op", "mermin3", "--state", "w:4"]),
        Err(CliError::Usage(_))
    ));
}

#[test]
fn spectrum_of_mabk4() {
    let v = json(&["spectrum", "--op", "mabk4"]);
    let max = v["result"]["max_eigenvalue"].as_f64().unwrap();
    assert!((max - 11.3137085).abs() < 1e-7);
    assert!(v["result"].get("eigenvalues").is_none());
    let v = json(&["spectrum", "--op", "mabk4", "--eigenvalues"]);
    assert_eq!(v["result"]["eigenvalues"].as_array().unwrap().len(), 16);
}

#[test]
fn bound_command() {
    let v = json(&["bound", "--op", "dicke-bell", "--n", "3", "--method", "brute"]);
    assert_eq!(v["result"]["L"], "6");
    assert_eq!(v["result"]["method"], "brute");
    assert_eq!(v["result"]["dicke_max_eigenvalue"], 4);
    let v = json(&["bound", "--op", "mermin3"]);
    assert_eq!(v["result"]["L"], "2");
    assert_eq!(v["result"]["method"], "symmetric");
    let v = json(&[
        "bound",
        "--op",
        "pi",
        "--notation",
        "[0 0; 0 0 0; 0 0 0 0; 1 1 -1 -1 1]",
    ]);
    assert_eq!(v["result"]["L"], "4");
    assert!(matches!(
        run(&["bound", "--op", "dicke-bell", "--n", "7", "--method", "brute"]),
        Err(CliError::Core(symbell_core::Error::GuardExceeded { .. }))
    ));
}

#[test]
fn parse_command() {
    let v = json(&["parse", "--notation", "[0 0 ; 0 0 0 ; 1 0 \u{2212}1 0]"]);
    assert_eq!(v["result"]["canonical"], "[0 0; 0 0 0; 1 0 -1 0]");
    assert_eq!(v["result"]["terms"], 4);
    assert_eq!(v["result"]["roundtrip"], true);
    assert!(matches!(
        run(&["parse", "--notation", "[1 2; 3 4]"]),
        Err(CliError::Core(_))
    ));
}

#[test]
fn op_text_roundtrips() {
    let (text, _) = run(&["op", "--op", "dicke-bell", "--n", "3", "--format", "text"]).unwrap();
    assert!(text.starts_with("coefficient  string\n1            XXZ\n"));
    let v = json(&["op", "--op", "dicke-bell", "--n", "4"]);
    let sum = symbell_core::PauliSum::from_text(v["result"]["text"].as_str().unwrap()).unwrap();
    assert_eq!(sum.len(), 12);
    assert_eq!(sum.content_hash(), v["result"]["operator_hash"]);
}

#[test]
fn table_csv() {
    let (csv, code) = run(&["table", "--n-max", "10", "--format", "csv"]).unwrap();
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,lambda_n,eigenstate,sign_matches_paper");
    assert_eq!(lines[1], "3,4,\"1,3\",false");
    assert_eq!(lines[2], "3,-4,\"2,3\",false");
    assert_eq!(lines[3], "4,-8,\"2,4\",true");
    assert_eq!(lines.len(), 13);
    let (csv, _) = run(&["table", "--n-max", "11", "--format", "csv"]).unwrap();
    assert!(csv.ends_with("11,60,\"5,11\",\n11,-60,\"6,11\",\n"));
}

#[test]
fn conjecture_command() {
    let v = json(&["conjecture", "--n", "11"]);
    let r = &v["result"]["reports"][0];
    assert_eq!(r["formula"], 60);
    assert_eq!(r["agrees"], true);
    assert!(matches!(run(&["conjecture", "--n", "13"]), Err(CliError::Usage(_))));
    let v = json(&["conjecture", "--n", "15", "--method", "iter"]);
    assert_eq!(v["result"]["all_agree"], true);
}

#[test]
fn binary_exit_codes() {
    let ok = bin(&["verify-theorem", "--n-max", "10"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["result"]["pairs"], 44);
    assert_eq!(v["result"]["passed"], 44);

    let small = bin(&["verify-theorem", "--n-max", "3", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(small.stdout).unwrap(),
        "n,m,eigenvalue,expected,residual_norm_sq,pass\n3,1,4,4,0,true\n3,2,-4,-4,0,true\n"
    );

    assert_eq!(bin(&["verify-theorem", "--n-max", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["verify-theorem", "--n-max", "15"]).status.code(), Some(2));
    let bad = bin(&["expect", "--op", "w-bell", "--state", "nonsense"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().starts_with("error: bad --state"));
    assert_eq!(bin(&["parse", "--notation", "[1 2; 3 4]"]).status.code(), Some(1));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_symbell"))
        .args(["spectrum", "--op", "mermin3"])
        .env("SYMBELL_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
