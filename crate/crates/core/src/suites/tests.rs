use serde_json::json;

use super::oracles::{chain_orbit_size, f2_flag_supports, permutations, word_lengths};
use super::*;
use crate::error::Error;

fn params(name: &str) -> SuiteParams {
    let mut p = SuiteParams::new(DatumSpec::builtin(name).unwrap());
    p.seed = 3;
    p
}

fn assert_all_pass(r: &SuiteReport) {
    let bad: Vec<&CheckRecord> = r.checks.iter().filter(|c| c.status != Status::Pass).collect();
    assert!(bad.is_empty(), "{}: {bad:?}", r.suite);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn every_suite_passes_on_gl2() {
    for s in SUITES {
        let r = run_suite(s, &params("gln2")).unwrap();
        assert!(!r.checks.is_empty(), "{s}");
        assert!(r.checks.iter().all(|c| c.id.starts_with(s)), "{s}");
        assert_all_pass(&r);
    }
}

#[test]
fn cheap_gl3_suites_pass() {
    for s in ["lengths", "hecke-core", "theorem1", "fundamental", "bernstein", "center", "gln-presentation", "gln-chars"] {
        assert_all_pass(&run_suite(s, &params("gln3")).unwrap());
    }
}

#[test]
fn reports_are_sorted_and_reproducible() {
    let a = run_suite("standard-modules", &params("gln2")).unwrap();
    let b = run_suite("standard-modules", &params("gln2")).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(a.checks.windows(2).all(|w| w[0].id < w[1].id));
    let j = serde_json::to_value(&a).unwrap();
    assert_eq!(j["seed"], json!(3));
    assert!(j.get("elapsed").is_none());
}

#[test]
fn gl2_table_covers_every_row() {
    let r = run_suite("standard-modules", &params("gln2")).unwrap();
    let w = &r.check("standard-modules.gl2-table").unwrap().witness;
    for row in ["supersingular", "regular", "regular-square"] {
        assert!(w[row].as_u64().unwrap() >= 4, "{w}");
    }
}

#[test]
fn gl2_presentation_names_the_center_identity() {
    let r = run_suite("gln-presentation", &params("gln2")).unwrap();
    assert!(r.checks.iter().any(|c| c.claim == "E_1 E_2 = q Z" && c.status == Status::Pass));
}

#[test]
fn errors_and_exit_codes() {
    assert!(matches!(run_suite("nope", &params("gln2")), Err(Error::Config(_))));
    assert!(matches!(DatumSpec::builtin("sl2"), Err(Error::Parse(_))));
    let toral = crate::rootdata::RootDatum::new(1, vec![], vec![], vec![]).unwrap();
    let p = SuiteParams::new(DatumSpec::custom("toral", toral));
    assert!(matches!(run_suite("gln-chars", &p), Err(Error::Config(_))));
    assert_all_pass(&run_suite("lengths", &p).unwrap());
    let mut r = run_suite("center", &params("gln2")).unwrap();
    r.checks.push(single("x.flag", "flagged", Status::Flagged, Value::Null));
    assert_eq!(r.exit_code(), 2);
    r.checks.push(single("x.fail", "failed", Status::Fail, Value::Null));
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn check_prefers_failures_and_flags_precision_loss() {
    let cases = [0, 1, 2, 3];
    let rec = check("t", "t", &cases, |&i| match i {
        1 => Err(Error::Precision("lost".into())),
        3 => Ok(Outcome::Fail(json!(i))),
        _ => Ok(Outcome::Pass),
    });
    assert_eq!(rec.status, Status::Fail);
    assert_eq!(rec.witness, json!({ "failures": 1, "first": 3 }));
    let rec = check("t", "t", &cases[..2], |&i| {
        if i == 1 {
            Err(Error::Precision("lost".into()))
        } else {
            Ok(Outcome::Pass)
        }
    });
    assert_eq!(rec.status, Status::Flagged);
    let rec = check("t", "t", &cases, |_| Err(Error::Division("zero".into())));
    assert_eq!(rec.status, Status::Fail);
}

#[test]
fn oracles() {
    assert_eq!(permutations(4).len(), 24);
    assert_eq!([1, 2, 3, 4].map(|n| f2_flag_supports(n).len()), [1, 3, 13, 75]);
    assert_eq!(chain_orbit_size(3, &[0b010, 0b111]), 3);
    assert_eq!(chain_orbit_size(3, &[0b001, 0b011, 0b111]), 6);
    let d = crate::rootdata::gln_datum(2).unwrap();
    let l = word_lengths(&d, 4);
    assert_eq!(l[&d.translation(vec![1, 0])], 1);
    assert_eq!(l[&d.translation(vec![-1, 1])], 2);
    assert_eq!(l[&d.identity()], 0);
}
