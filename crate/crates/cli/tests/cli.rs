use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn f33(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f33"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn turan_six() {
    let out = f33(&["--threads", "2", "turan", "--n", "6", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["payload"]["optimum"], 18);
    assert_eq!(v["payload"]["matches_theorem"], true);
    assert_eq!(v["payload"]["audit"], "ok");
    assert_eq!(v["payload"]["extremal"].as_array().unwrap().len(), 1);
}

#[test]
fn truncated_search_is_incomplete() {
    let out = f33(&["turan", "--n", "7", "--node-limit", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["status"], "incomplete");
    assert_eq!(v["payload"]["proven_exhaustive"], false);
    assert_eq!(v["payload"]["matches_theorem"], false);
}

#[test]
fn lemma_and_identities() {
    let v = json(&f33(&["lemma-max", "--n", "5"]));
    assert_eq!(v["payload"]["certificate"]["optimum"], 32);
    assert_eq!(v["payload"]["maximizer_feasible"], true);

    let out = f33(&["identities", "--max-n", "500"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["payload"]["families"].as_array().unwrap().len(),
        4
    );

    let v = json(&f33(&[
        "lemma-sample",
        "--n",
        "12",
        "--trials",
        "200",
        "--seed",
        "4",
    ]));
    assert_eq!(v["status"], "pass");
    assert_eq!(v["payload"]["m_n"], 204);
}

#[test]
fn construct_f33() {
    let v = json(&f33(&["construct", "f33"]));
    assert_eq!(v["payload"]["n"], 6);
    assert_eq!(v["payload"]["edges"], 10);
}

#[test]
fn edge_lists_round_trip_through_check() {
    let dir = tempfile::tempdir().unwrap();

    let raw = f33(&["construct", "bipartite", "--n", "9", "--raw"]);
    assert!(raw.status.success());
    let text = String::from_utf8(raw.stdout).unwrap();
    let b9 = write(dir.path(), "b9.txt", &text);
    let v = json(&f33(&["construct", "bipartite", "--n", "9"]));
    assert_eq!(v["payload"]["text"], text.as_str());

    let out = f33(&["check", "f33-free", "--input", &b9]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["payload"]["f33_free"], true);
    assert_eq!(json(&out)["payload"]["edges"], 70);

    let out = f33(&["t-triple", "--input", &b9]);
    assert_eq!(out.status.code(), Some(0));

    let raw = f33(&["construct", "complete", "--n", "6", "--raw"]);
    let k6 = write(
        dir.path(),
        "k6.txt",
        std::str::from_utf8(&raw.stdout).unwrap(),
    );
    let out = f33(&["check", "f33-free", "--input", &k6]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["payload"]["witness"]["abc"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["payload"]["witness"]["xyz"], serde_json::json!([3, 4, 5]));

    let out = f33(&["link", "--input", &k6, "--set", "0,1,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["payload"]["e"], 4);

    let raw = f33(&["construct", "complete", "--n", "7", "--raw"]);
    let k7 = write(
        dir.path(),
        "k7.txt",
        std::str::from_utf8(&raw.stdout).unwrap(),
    );
    let out = f33(&["link", "--input", &k7, "--set", "0,1,2,3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["payload"]["e"], 12);
    assert_eq!(v["payload"]["max_triple_sum"]["value"], 12);
    assert_eq!(
        v["payload"]["common_color_triangle"]["host_triple"],
        serde_json::json!([4, 5, 6])
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(f33(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        f33(&["lemma-sample", "--n", "5", "--trials", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(f33(&["identities", "--max-n", "3"]).status.code(), Some(2));
    assert_eq!(f33(&["construct", "m1"]).status.code(), Some(2));
    assert_eq!(f33(&["turan", "--n", "11"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "4 1\n0 2 1\n");
    let out = f33(&["check", "f33-free", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let missing = dir.path().join("missing.txt");
    let out = f33(&["check", "f33-free", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn payloads_are_reproducible() {
    for args in [
        &["turan", "--n", "7"][..],
        &["lemma-max", "--n", "5"],
        &["lemma-sample", "--n", "9", "--trials", "50", "--seed", "11"],
        &["construct", "m3", "--n", "10"],
    ] {
        let a = f33(args).stdout;
        let b = f33(args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}
