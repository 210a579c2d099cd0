use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn gogrig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gogrig")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &[u8]) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gogrig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_triangle() {
    let v = json(&gogrig(&["analyze", &fixture("triangle.json")]));
    assert_eq!((v["dim_piA"].as_u64(), v["dofs"].as_u64(), v["rigid"].as_bool()), (Some(3), Some(0), Some(true)));
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        vec!["analyze", "--motions"],
        vec!["sparsity"],
        vec!["bound"],
        vec!["banana", "--cut", "v,w"],
    ] {
        let file = if args[0] == "banana" { fixture("double_banana.json") } else { fixture("triangle.json") };
        let mut full = args.clone();
        full.insert(1, &file);
        let a = gogrig(&full);
        let b = gogrig(&full);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn banana_certificate_and_refusal() {
    let v = json(&gogrig(&["banana", &fixture("double_banana.json"), "--cut", "v,w"]));
    assert_eq!(v["verdict"], "certificate");
    assert_eq!(v["witness_space_dim"], 1);
    let refused = gogrig(&["banana", &fixture("triangle.json"), "--cut", "a"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("does not disconnect"));
}

#[test]
fn dualize_then_analyze() {
    let out = gogrig(&["dualize", &fixture("scene.json"), "--target", "scene-to-parallel"]);
    assert!(out.status.success());
    let path = temp_file("parallel.json", &out.stdout);
    let a = json(&gogrig(&["analyze", &fixture("scene.json")]));
    let b = json(&gogrig(&["analyze", path.to_str().unwrap()]));
    assert_eq!(a["dim_piA"], b["dim_piA"]);
}

#[test]
fn projective_dual_round_trip() {
    let once = gogrig(&["dualize", &fixture("projective_triangle.json"), "--target", "projective-dual"]);
    let p1 = temp_file("dual1.json", &once.stdout);
    let twice = gogrig(&["dualize", p1.to_str().unwrap(), "--target", "projective-dual"]);
    let p2 = temp_file("dual2.json", &twice.stdout);
    let a = json(&gogrig(&["analyze", &fixture("projective_triangle.json")]));
    let b = json(&gogrig(&["analyze", p2.to_str().unwrap()]));
    assert_eq!(a, b);
    let back: Value = serde_json::from_slice(&twice.stdout).unwrap();
    assert_eq!(back["hypergraph"]["vertices"], serde_json::json!(["x", "y", "z"]));
}

#[test]
fn finite_and_oracle() {
    let k3 = json(&gogrig(&["finite", &fixture("k3_s3.json")]));
    assert_eq!((k3["sections"].as_u64(), k3["globally_rigid"].as_bool()), (Some(6), Some(true)));
    let c5 = json(&gogrig(&["finite", &fixture("c5_s3.json")]));
    assert_eq!((c5["sections"].as_u64(), c5["globally_rigid"].as_bool()), (Some(30), Some(false)));
    let t = json(&gogrig(&["finite", &fixture("k2_k3_tensor.json")]));
    assert_eq!(t["sections"], 6);
    let o = json(&gogrig(&["oracle", &fixture("double_banana.json")]));
    assert_eq!(o["rigidity_matrix"]["nullity"], 7);
    assert_eq!(o["agree"], true);
}

#[test]
fn constrained_analysis() {
    let v = json(&gogrig(&["analyze", &fixture("slider.json")]));
    assert_eq!(v["constrained"]["dim_piA"], 2);
    assert_eq!(v["constrained"]["closed_form_bound"], 2);
}

#[test]
fn selftest_and_schema() {
    let v = json(&gogrig(&["selftest"]));
    assert_eq!(v["passed"], true);
    let schema = gogrig(&["--schema"]);
    assert!(schema.status.success());
    let s: Value = serde_json::from_slice(&schema.stdout).unwrap();
    assert!(s["$defs"]["lie_instance"].is_object());
}

#[test]
fn input_errors_exit_one() {
    let bad = temp_file("bad.json", br#"{"group": {"kind": "euclidean", "d": 2}, "extra": 1}"#);
    let out = gogrig(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    assert_eq!(gogrig(&["analyze"]).status.code(), Some(1));
    assert_eq!(gogrig(&["dualize", &fixture("triangle.json"), "--target", "projective-dual"]).status.code(), Some(1));
    let improper = temp_file(
        "improper.json",
        br#"{"kind": "colouring", "n": 3, "graph": {"vertices": ["a", "b"], "edges": [{"id": "ab", "vertices": ["a", "b"]}]}, "colouring": {"a": 1, "b": 1}}"#,
    );
    assert_eq!(gogrig(&["finite", improper.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn parallel_warning_for_isolated_vertex() {
    let inst = br#"{"group": {"kind": "dilation", "d": 2},
        "hypergraph": {"vertices": ["a", "b", "c"], "edges": [{"id": "h", "vertices": ["a", "b"]}]},
        "realisation": {"kind": "parallel", "points": {"a": [0, 0], "b": [1, 0], "c": [5, 5]},
            "hyperplanes": {"h": {"normal": [0, 1], "offset": 0}}}}"#;
    let path = temp_file("isolated.json", inst);
    let out = gogrig(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: isolated vertex `c`"));
}

#[test]
fn approximate_matches_exact() {
    let exact = json(&gogrig(&["analyze", &fixture("double_banana.json")]));
    let approx = json(&gogrig(&["analyze", &fixture("double_banana.json"), "--approximate"]));
    assert_eq!(exact["dim_piA"], approx["dim_piA"]);
    assert_eq!(approx["approximate"], true);
}
