use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn dualsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualsep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ingest_two_block_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let dump = dir.path().join("g.json");
    fs::write(&csv, "group,member\ng1,a\ng1,b\ng2,a\ng2,b\ng3,c\ng3,d\ng4,c\ng4,d\n").unwrap();
    let out = dualsep(&["ingest", "--input", csv.to_str().unwrap(), "--out", dump.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["tool"], "dualsep");
    assert_eq!(report["library_version"], report["version"]);
    assert_eq!(report["config"]["command"], "ingest");
    assert_eq!((report["result"]["x"].as_u64(), report["result"]["y"].as_u64()), (Some(4), Some(4)));
    assert_eq!(report["result"]["edges"], 8);

    let g: Value = serde_json::from_str(&fs::read_to_string(&dump).unwrap()).unwrap();
    let x: Vec<&str> = g["x"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let y: Vec<&str> = g["y"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    for e in g["edges"].as_array().unwrap() {
        let (i, j) = (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize);
        let block = |label: &str| matches!(label, "a" | "b" | "g1" | "g2");
        assert_eq!(block(x[i]), block(y[j]), "edge {}-{} crosses blocks", x[i], y[j]);
    }

    // The dump reads back as the same graph.
    let again = dualsep(&["ingest", "--input", dump.to_str().unwrap()]);
    assert_eq!(json(&again)["result"], report["result"]);
}

#[test]
fn ingest_empty_and_malformed_csv() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "group,member\n").unwrap();
    let out = dualsep(&["ingest", "--input", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["edges"], 0);

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "group,member\ng1,m1\ng2\n").unwrap();
    let out = dualsep(&["ingest", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn tangles_on_k33() {
    let count = |k2: &str| {
        let out = dualsep(&["tangles", "--generator", "complete", "--universe", "x", "--k2", k2]);
        assert_eq!(out.status.code(), Some(0));
        json(&out)["result"]["count"].as_u64().unwrap()
    };
    assert_eq!(count("2"), 1);
    assert_eq!(count("6"), 0);
}

#[test]
fn tangles_on_planted_partitions() {
    let out = dualsep(&[
        "tangles", "--generator", "planted", "--in-p", "1", "--cross-p", "0", "--universe", "bx", "--k2", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["result"]["count"].as_u64().unwrap() >= 2);
}

#[test]
fn shift_on_matching() {
    let out = dualsep(&["shift", "--generator", "matching", "--nx", "2", "--universe", "bx", "--sep", "x1|x2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["output"], serde_json::json!([["y1"], ["y2"]]));

    let out = dualsep(&[
        "shift", "--generator", "matching", "--nx", "2", "--universe", "x", "--sep", "x1|x2", "--format", "csv-summary",
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("output,\"y1|y2\""));
}

#[test]
fn order_reports_edge_form() {
    let out = dualsep(&["order", "--generator", "complete", "--universe", "x", "--sep", "x1,x2|x2,x3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["order"], r["result"]["edge_form"]);
}

#[test]
fn homology_on_matching() {
    let out = dualsep(&[
        "homology", "--generator", "matching", "--nx", "2", "--universe", "x", "--sep", "x1|x2", "--sep", "|x1,x2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["vs_duality"], true);
    assert_eq!((r["rank"].as_u64(), r["kernel_dim"].as_u64()), (Some(2), Some(0)));
    assert_eq!(r["matrix"]["entries"], serde_json::json!([[-1, 1], [1, 1]]));

    // S_k mode reports every tangle together with its decider search.
    let out = dualsep(&["homology", "--generator", "complete", "--universe", "x", "--k2", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let orientations = json(&out)["result"]["orientations"].as_array().unwrap().clone();
    assert_eq!(orientations.len(), 1);
    assert_eq!(orientations[0]["cycle"], false);
    assert!(orientations[0]["decider"]["mu"].is_array());
}

#[test]
fn inverse_pairs_and_bad_arguments_exit_2() {
    let cases: [&[&str]; 5] = [
        &["homology", "--generator", "matching", "--nx", "2", "--universe", "x", "--sep", "x1|x2", "--sep", "x2|x1"],
        &["tangles", "--generator", "complete", "--universe", "x", "--k2", "x"],
        &["order", "--generator", "complete", "--universe", "bx", "--sep", "x1,x2|x2,x3"],
        &["order", "--generator", "complete", "--universe", "x", "--sep", "x1|nope"],
        &["tangles", "--generator", "complete", "--nx", "5", "--ny", "5", "--universe", "e", "--k2", "2"],
    ];
    for args in cases {
        let out = dualsep(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_is_deterministic_and_clean() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let out = dualsep(&["verify", "--corpus-size", "6", "--k-grid", "1,2", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);
    let r: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(r["result"]["counterexamples"], 0);
    assert_eq!(r["config"]["k_grid"], serde_json::json!([1, 2]));
}
