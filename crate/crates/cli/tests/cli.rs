use std::process::{Command, Output};

fn cyclohecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclohecke"))
        .args(args)
        .env_remove("CYCLOHECKE_CACHE")
        .output()
        .expect("binary runs")
}

fn reports(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn verify_main_single() {
    let out = cyclohecke(&["verify-main", "--n", "3", "--r", "2", "--no-cache"]);
    assert_eq!(out.status.code(), Some(0));
    let reps = reports(&out);
    assert_eq!(reps.len(), 1);
    assert_eq!(reps[0]["status"], "pass");
    assert_eq!(reps[0]["data"]["rows"], 10);
}

#[test]
fn verify_main_suite_is_parallel_and_ordered() {
    let serial = cyclohecke(&["verify-main", "--no-cache"]);
    let parallel = cyclohecke(&["verify-main", "--no-cache", "--jobs", "4"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
    let covered: Vec<(u64, u64)> = reports(&serial)
        .iter()
        .map(|r| (r["params"]["n"].as_u64().unwrap(), r["params"]["r"].as_u64().unwrap()))
        .collect();
    for nr in [(4, 1), (3, 2), (2, 3)] {
        assert!(covered.contains(&nr));
    }
}

#[test]
fn blocks_example() {
    let out = cyclohecke(&["blocks", "--n", "3", "--r", "1", "--ell", "2", "--charge", "0", "--no-cache"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["data"]["blocks"], 2);
}

#[test]
fn center_example() {
    let out = cyclohecke(&["center", "--n", "2", "--r", "1", "--q", "-1", "--Q", "1", "--no-cache"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = &reports(&out)[0];
    assert_eq!(rep["data"]["center_dim"], 2);
    assert_eq!(rep["mode"], "specialized");
}

#[test]
fn center_generic_is_sampled() {
    let out = cyclohecke(&["center", "--n", "2", "--r", "2", "--q", "generic", "--samples", "2", "--no-cache"]);
    let reps = reports(&out);
    assert_eq!(reps.len(), 2);
    for rep in &reps {
        assert_eq!(rep["mode"], "generic (sampled)");
        assert_eq!(rep["data"]["cocenter_dim"], 5);
    }
}

#[test]
fn usage_errors() {
    for args in [
        &["center", "--n", "2", "--q", "3/", "--Q", "1"][..],
        &["center", "--n", "2", "--q", "zeta_x", "--Q", "1"],
        &["verify-main", "--n", "9", "--r", "2"],
        &["pairing", "--n", "5", "--r", "3"],
        &["no-such-command"],
        &["blocks", "--n", "2", "--r", "2", "--ell", "2", "--charge", "0"],
        &["blocks", "--n", "2", "--ell", "1"],
        &["hilb", "--n", "2", "--q", "1"],
        &["dims", "--n", "2", "--format", "csv"],
    ] {
        let out = cyclohecke(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn table_exports() {
    let csv = cyclohecke(&["table", "--n", "1", "--r", "2", "--format", "csv"]);
    assert_eq!(
        String::from_utf8_lossy(&csv.stdout),
        "multipartition,e1,det_inv\n\"[[1],[]]\",Q1,Q1^-1\n\"[[],[1]]\",Q2,Q2^-1\n"
    );
    let json = cyclohecke(&["table", "--n", "2", "--r", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn cache_reproduces_uncached_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["pairing", "--n", "2", "--r", "2", "--trials", "20", "--samples", "1", "--seed", "7"];
    let plain = cyclohecke(&[&args[..], &["--no-cache"]].concat());
    let path = dir.path().to_str().unwrap();
    let first = cyclohecke(&[&args[..], &["--cache-dir", path]].concat());
    let second = cyclohecke(&[&args[..], &["--cache-dir", path]].concat());
    assert_eq!(plain.status.code(), Some(0));
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn cache_env_var_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cyclohecke"))
        .args(["hilb", "--n", "2", "--q", "-1", "--samples", "0"])
        .env("CYCLOHECKE_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn timings_are_opt_in() {
    let args = ["q1-gap", "--n", "2", "--Q", "2,3", "--no-cache"];
    let plain = reports(&cyclohecke(&args));
    assert!(plain[0].get("duration_ms").is_none());
    let timed = reports(&cyclohecke(&[&args[..], &["--timings"]].concat()));
    assert!(timed[0]["duration_ms"].is_u64());
    assert_eq!(timed[0]["data"]["invariant_dim"], 3);
}

#[test]
fn dims_report() {
    let rep = &reports(&cyclohecke(&["dims", "--n", "3", "--r", "2"]))[0];
    assert_eq!(rep["data"]["pbw_dim"], 48);
    assert_eq!(rep["data"]["multipartitions"], 10);
    assert_eq!(rep["data"]["q1_invariant_dim"], 4);
}
