use std::process::{Command, Output};

use circlab::classify::{self, connected_representatives, AgreementReport, ClassificationReport};

fn circlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn analyze_complete_graph_on_nine() {
    let out = circlab(&["analyze", "9", "1,2,3,4,5,6,7,8", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: ClassificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(r.arc_transitive);
    assert!(!r.normal_arc_transitive);

    let human = circlab(&["analyze", "9", "1-8"]);
    assert_eq!(human.status.code(), Some(0));
    assert!(stdout(&human).contains("normal-arc-transitive"));
}

#[test]
fn analyze_hexagon_json() {
    let out = circlab(&["analyze", "6", "1,5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["arc_transitive"], true);
    assert_eq!(v["c_normal_oracle"], true);
}

#[test]
fn invalid_input_exits_2_and_names_the_token() {
    let out = circlab(&["analyze", "6", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains('0'));

    let out = circlab(&["analyze", "6", "1,foo"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`foo`"));

    let out = circlab(&["analyze", "6", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("duplicate"));

    let out = circlab(&["analyze", "6", "7"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(circlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(circlab(&["decompose", "6", "1,2"]).status.code(), Some(2));
}

#[test]
fn decompose_unit_circulant() {
    let out = circlab(&["decompose", "15", "1,2,4,7,8,11,13,14", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let d: circlab::Decomposition = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(d.b, 1);
    assert_eq!(d.complete_factor_orders, vec![5]);
    assert_eq!(d.gamma0, circlab::CirculantGraph::complete(3));
}

#[test]
fn verify_small_range() {
    let out = circlab(&["verify", "--max-n", "8", "--json", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r: AgreementReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(r
        .tally("generators-iff-transitive")
        .unwrap()
        .counterexamples
        .is_empty());

    // deterministic regardless of workers
    let again = circlab(&["verify", "--max-n", "8", "--json", "--jobs", "1"]);
    assert_eq!(stdout(&out), stdout(&again));

    let strict = circlab(&["verify", "--max-n", "8", "--strict"]);
    assert_eq!(strict.status.code(), Some(0));
}

#[test]
fn verify_lists_the_unit_circulant_on_fifteen() {
    let out = circlab(&["verify", "--max-n", "15", "--arc-transitive-only", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: AgreementReport = serde_json::from_str(&stdout(&out)).unwrap();
    let c = r
        .tally("coset-literal")
        .unwrap()
        .counterexample(15, &[1, 2, 4, 7, 8, 11, 13, 14])
        .expect("listed");
    assert_eq!(
        (c.evidence.aut_order, c.evidence.normalizer_order),
        (720, 120)
    );
}

#[test]
fn verify_guard() {
    assert_eq!(circlab(&["verify", "--max-n", "40"]).status.code(), Some(2));
    assert_eq!(circlab(&["verify", "--max-n", "2"]).status.code(), Some(2));
    assert_eq!(
        circlab(&["verify", "--max-n", "5", "--prime-power-max", "64"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumerate_lists_multiplier_classes() {
    let out = circlab(&["enumerate", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let gs: Vec<circlab::CirculantGraph> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(gs, connected_representatives(5));
    let at = circlab(&["enumerate", "6", "--arc-transitive-only"]);
    let lines: Vec<String> = stdout(&at).lines().map(str::to_string).collect();
    assert!(lines.contains(&"Circ(6,{1,5})".to_string()));
    assert!(!lines.contains(&"Circ(6,{1,2})".to_string()));
}

#[test]
fn export_formats() {
    let out = circlab(&["export", "3", "1", "--edges"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 1\n1 2\n2 0\n");

    let out = circlab(&["export", "4", "1,3", "--dot"]);
    let dot = stdout(&out);
    assert!(dot.starts_with("graph "));
    assert!(dot.contains("0 -- 1;") && dot.contains("0 -- 3;"));
    assert!(!dot.contains("->"));

    let out = circlab(&["export", "3", "1", "--dot"]);
    assert!(stdout(&out).starts_with("digraph "));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let out = circlab(&[
        "export",
        "5",
        "1,4",
        "--dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&circlab(&["export", "5", "1,4", "--dot"])));

    let bad = dir.path().join("missing").join("g.dot");
    let out = circlab(&[
        "export",
        "5",
        "1,4",
        "--dot",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));

    assert_eq!(circlab(&["export", "5", "1,4"]).status.code(), Some(2));
    assert_eq!(
        circlab(&["export", "5", "1,4", "--dot", "--edges"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reports_round_trip_through_json_for_every_instance_up_to_ten() {
    for n in 2..=10 {
        for g in connected_representatives(n) {
            let r = classify::classify(&g);
            let text = serde_json::to_string_pretty(&r).unwrap();
            let back: ClassificationReport = serde_json::from_str(&text).unwrap();
            assert_eq!(back, r, "{g}");
        }
    }
}
