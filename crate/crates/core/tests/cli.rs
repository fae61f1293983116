use std::io::Write;
use std::process::{Command, Output, Stdio};

fn crossratio(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_crossratio"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(bytes) = stdin {
            pipe.write_all(bytes).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn decompose_json() {
    let out = crossratio(&["decompose", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["psi"], serde_json::json!(["15", "-3", "3", "0", "0", "-1", "0"]));
    assert_eq!(v["multiplicities"]["32"], 1);
    assert_eq!(v["multiplicities"]["31^2"], 0);
    assert_eq!(v["inner_products"]["31^2"], "0");
    assert_eq!(v["dimension_split"], "15 = 5 + 5 + 4 + 1");
}

#[test]
fn decompose_text_has_class_headers() {
    let out = crossratio(&["decompose"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("1^5"));
    assert!(text.contains("PASS"));
}

#[test]
fn charfns_json() {
    let out = crossratio(&["charfns", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["diff"], serde_json::json!([]));
    assert_eq!(v["orbit_size"], 20);
    assert_eq!(v["transitive"], true);
    let r14 = v["functions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["edge"] == "14")
        .unwrap();
    assert_eq!(r14["expression"], "b2-b3-c5");
}

#[test]
fn symset_json() {
    let out = crossratio(&["symset", "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim_symmetry_set"], 5);
    assert_eq!(v["symmetry_set_equals_r"], true);
    assert_eq!(v["restricted_trace"], "-1");
    assert_eq!(v["negated_normals"], serde_json::json!(["13", "14", "25", "34"]));
}

#[test]
fn verify_extended_line() {
    let out = crossratio(
        &[
            "verify-moebius",
            "--extended-line",
            "--samples",
            "200",
            "--format",
            "json",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["criterion"]["tuples_checked"], 200);
    assert_eq!(v["criterion"]["is_moebius"], true);
}

#[test]
fn verify_six_point_fixture() {
    let path = fixture("six_point_metric.json");
    let out = crossratio(&["verify-moebius", "--input", &path, "--format", "json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["criterion"]["mode"], "exhaustive");
    assert_eq!(v["criterion"]["tuples_checked"], 720);
    assert_eq!(v["axioms"]["pass"], true);
}

#[test]
fn counterexample_pipes_into_verify() {
    let ce = crossratio(&["counterexample", "--seed", "1"], None);
    assert_eq!(ce.status.code(), Some(0));
    let doc = json(&ce);
    assert_eq!(doc["kind"], "sub-moebius");
    assert_eq!(doc["axioms"]["pass"], true);
    assert_eq!(doc["counterexample"], true);
    assert!(!String::from_utf8_lossy(&ce.stderr).is_empty());

    let out = crossratio(
        &["verify-moebius", "--input", "-", "--format", "json"],
        Some(&ce.stdout),
    );
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["criterion"]["is_moebius"], false);
    let w = &v["criterion"]["witnesses"][0];
    assert_eq!(w["tuple"].as_array().unwrap().len(), 5);
    assert_ne!(w["value"], "1");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["counterexample", "--seed", "7", "--format", "json"][..],
        &[
            "verify-moebius",
            "--extended-line",
            "--samples",
            "30",
            "--seed",
            "4",
            "--format",
            "json",
        ][..],
    ] {
        let a = crossratio(args, None);
        let b = crossratio(args, None);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(crossratio(&[], None).status.code(), Some(2));
    assert_eq!(crossratio(&["verify-moebius"], None).status.code(), Some(2));
    assert_eq!(
        crossratio(&["verify-moebius", "--input", "/no/such/file"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        crossratio(&["verify-moebius", "--input", "-"], Some(b"{not json"))
            .status
            .code(),
        Some(2)
    );
    let four =
        br#"{"kind": "semi-metric", "points": ["a", "b", "c", "d"], "distances": ["1", "1", "1", "1", "1", "1"]}"#;
    assert_eq!(
        crossratio(&["verify-moebius", "--input", "-"], Some(four))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        crossratio(&["decompose", "--format", "xml"], None).status.code(),
        Some(2)
    );
}
