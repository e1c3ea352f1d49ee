use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("spawn hecke")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn datum_file_round_trips_through_verify() {
    let d = hecke(&["rootdatum", "gln", "2"]);
    let path = scratch("gln2.json", &json(&d).to_string());
    let out = hecke(&["verify", "lengths", "--datum-file", path.to_str().unwrap(), "--radius", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_is_reproducible_and_out_matches_stdout() {
    let a = hecke(&["verify", "hecke-core", "--n", "2", "--seed", "7"]);
    let b = hecke(&["verify", "hecke-core", "--n", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("report.json");
    let c = hecke(&["verify", "hecke-core", "--n", "2", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn e_basis_round_trip() {
    let w = r#"{"finite":[[0,1],[1,0]],"trans":[2,-1]}"#;
    let t = hecke(&["hecke", "ebasis", "--datum", "gln2", "--elt", w]);
    let t = json(&t);
    assert_eq!(t["basis"], "T");
    let path = scratch("ew.json", &t.to_string());
    let e = json(&hecke(&["hecke", "ebasis", "--datum", "gln2", "--elt", &format!("@{}", path.display())]));
    assert_eq!(e["basis"], "E");
    let terms = e["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["elt"], serde_json::from_str::<Value>(w).unwrap());
}

#[test]
fn inverse_times_element_is_one() {
    let w = r#"{"finite":[[0,1],[1,0]],"trans":[1,0]}"#;
    let inv = json(&hecke(&["hecke", "inv", "--datum", "gln2", "--elt", w]));
    let path = scratch("inv.json", &inv.to_string());
    let prod = json(&hecke(&["hecke", "mul", "--datum", "gln2", "--elt", w, &format!("@{}", path.display())]));
    let terms = prod["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["elt"]["trans"], serde_json::json!([0, 0]));
    assert_eq!(terms[0]["coef"], serde_json::json!([{ "coef": 1, "exps": [0] }]));
}

#[test]
fn bernstein_and_center_take_negative_coordinates() {
    let b = json(&hecke(&["hecke", "bernstein", "--datum", "gln3", "--x", "-1,2,0", "--simple", "1"]));
    assert_eq!(b["holds"], true);
    let z = json(&hecke(&["hecke", "center", "--datum", "gln2", "--x", "-1,0"]));
    assert_eq!(z["basis"], "T");
}

#[test]
fn chars_lift_and_modules_on_a_regular_gl2_character() {
    let chars = json(&hecke(&["gln", "chars", "3"]));
    assert_eq!(chars["count"], 13);
    let gl2 = json(&hecke(&["gln", "chars", "2"]));
    let regular = gl2["families"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["family"]["label"] == "regular")
        .unwrap();
    let path = scratch("regular.json", &regular["sample"].to_string());
    let p = path.to_str().unwrap();

    let lift = json(&hecke(&["gln", "lift", p]));
    assert_eq!(lift["exponents"], serde_json::json!(["0/1", "1/1"]));

    let m = json(&hecke(&["module", "standard", p]));
    assert_eq!(m["presentation"]["module"]["dim"], 2);
    assert_eq!(m["presentation"]["relations"]["braid"], true);

    let r = json(&hecke(&["module", "reduce", p]));
    assert_eq!(r["flat"], true);
    assert_eq!(r["lattice_matches"], true);
    assert_eq!(r["torsion"]["torsion_free"], true);

    let i = json(&hecke(&["module", "integral", p]));
    assert_eq!(i["criterion"]["verdict"], true);

    let s = json(&hecke(&["module", "scan", p]));
    assert_eq!(s["scan"]["dim"], 2);
}

#[test]
fn field_comes_from_environment_unless_overridden() {
    let path = scratch("ss.json", r#"{"n":2,"flag":[[1,2]],"values":[1]}"#);
    let run = |extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_hecke"));
        c.env("HECKE_FIELD", "3^1").args(["gln", "lift", path.to_str().unwrap()]).args(extra);
        json(&c.output().unwrap())
    };
    assert_eq!(run(&[])["character"]["values"][0].as_array().unwrap().len(), 6);
    assert_eq!(run(&["--p", "5", "--k", "2"])["character"]["values"][0].as_array().unwrap().len(), 12);
}

#[test]
fn verify_an_passes() {
    let out = hecke(&["gln", "verify-an", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["n"], 3);
}

#[test]
fn usage_and_input_errors_exit_3() {
    assert_eq!(hecke(&["--help"]).status.code(), Some(0));
    assert_eq!(hecke(&["--version"]).status.code(), Some(0));
    assert_eq!(hecke(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(hecke(&["verify", "no-such-suite"]).status.code(), Some(3));
    assert_eq!(hecke(&["verify", "lengths", "--datum", "sp4"]).status.code(), Some(3));
    assert_eq!(hecke(&["hecke", "center", "--datum", "gln2", "--x", "1"]).status.code(), Some(3));

    let bad = hecke(&["hecke", "inv", "--datum", "gln2", "--elt", "{\n\"finite\": ["]);
    assert_eq!(bad.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&bad.stderr);
    assert!(msg.contains("line 2"), "{msg}");

    let missing = hecke(&["gln", "lift", "/nonexistent/char.json"]);
    assert_eq!(missing.status.code(), Some(3));

    let zero = scratch("zero.json", r#"{"n":2,"flag":[[1],[1,2]],"values":[[0],[1]]}"#);
    assert_eq!(hecke(&["module", "standard", zero.to_str().unwrap()]).status.code(), Some(3));
}
