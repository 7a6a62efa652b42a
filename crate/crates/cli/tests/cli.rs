use std::path::Path;
use std::process::{Command, Output};

use relhom_cli::codec::{decode, encode, Codec, Shape};
use relhom_cli::InputDocument;
use relhom_core::finab::{enumerate_homs, FinAb, FinAbObject};
use relhom_core::fingrp::{group_by_name, FinGrp};
use relhom_core::pset::PSet;
use relhom_core::tablecat::enumerate_categories;
use relhom_core::PointedCategory;

fn relhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relhom"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("relhom-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn unknown_axiom_is_an_input_error() {
    let out = relhom(&["check", "--backend", "finab", "--class", "all", "--axioms", "a,zz"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("zz"), "{}", stderr(&out));
}

#[test]
fn unknown_class_is_an_input_error() {
    let out = relhom(&["check", "--backend", "pset", "--class", "coprime_kernel:3", "--axioms", "a"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verdict_mismatch_exits_one() {
    let out = relhom(&["check", "--backend", "pset", "--class", "split_epi", "--axioms", "c", "--max-size", "3"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("[unexpected]"));
}

#[test]
fn malformed_json_points_at_the_line() {
    let path = temp_file("bad.json", "{\n  \"format-version\": \"1\",\n  \"backend\": \"finab\",\n}\n");
    let out = relhom(&["snake", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
}

#[test]
fn bad_payload_names_the_field() {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/inputs/snake_worked.json"))
        .unwrap()
        .replace("\"matrix\": [[2]] },\n    \"g\"", "\"matrix\": [[2, 1]] },\n    \"g\"");
    let path = temp_file("bad_payload.json", &text);
    let out = relhom(&["snake", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("morphisms.f.matrix"), "{}", stderr(&out));
}

#[test]
fn wrong_format_version_is_rejected() {
    let path = temp_file("version.json", r#"{"format-version": "2", "backend": "finab"}"#);
    let out = relhom(&["exact", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("format-version"));
}

#[test]
fn wrong_shape_is_rejected() {
    let out = relhom(&["snake", "--input", "data/inputs/exact_z2_z4.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("shape"));
}

#[test]
fn broken_grid_exits_three_naming_the_square() {
    let out = relhom(&["3x3", "--input", "data/inputs/grid_broken.json"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("g''∘v' = w'∘g'"), "{}", stderr(&out));
}

#[test]
fn worked_snake_prints_d() {
    let out = relhom(&["snake", "--input", "data/inputs/snake_worked.json", "--mode", "weak"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("d: Ker(w) -> Coker(u) = [[1]]"), "{text}");
    assert!(text.contains("naturality of d: not verified"));
}

#[test]
fn snake_with_isos_fails_a_hypothesis() {
    let out = relhom(&["snake", "--input", "data/inputs/snake_worked.json", "--class", "iso"]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
}

#[test]
fn short_exact_sequence() {
    let out = relhom(&["exact", "--input", "data/inputs/exact_z2_z4.json"]);
    assert_eq!(code(&out), 0);
    // with E = Iso the epi g is not in E, so exactness fails at the end
    let out = relhom(&["exact", "--input", "data/inputs/exact_z2_z4.json", "--class", "iso"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn search_reports_none_or_a_witness() {
    let out = relhom(&["search", "--backend", "finab", "--class", "regular_epi", "--axiom", "a", "--max-size", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("none up to bound"));
    let out = relhom(&["search", "--backend", "pset", "--class", "split_epi", "--axiom", "c", "--max-size", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("witness:"));
}

#[test]
fn tablecat_needs_a_table() {
    let out = relhom(&["check", "--backend", "tablecat", "--class", "all", "--axioms", "a"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn timing_is_opt_in() {
    let args = ["--json", "check", "--backend", "pset", "--class", "iso", "--axioms", "a", "--max-size", "2"];
    assert!(!stdout(&relhom(&args)).contains("wall-time-ms"));
    let mut timed = args.to_vec();
    timed.insert(0, "--timing");
    assert!(stdout(&relhom(&timed)).contains("wall-time-ms"));
}

#[test]
fn explicit_class_on_a_table() {
    let out = relhom(&[
        "check", "--backend", "tablecat", "--table", "data/tables/trivial.json", "--class", "explicit:id0", "--axioms", "all",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

fn round_trip<C: Codec>(cat: &C, arrows: Vec<(String, C::Mor)>) {
    let mut doc = InputDocument::new(cat.backend(), Shape::Witness);
    encode(cat, &mut doc, &arrows);
    let text = doc.to_json();
    let back = InputDocument::parse(&text, "round trip").unwrap();
    assert_eq!(back, doc);
    let decoded = decode(cat, &back).unwrap();
    for (name, f) in &arrows {
        assert_eq!(decoded.get(name).unwrap(), f, "{name}");
    }
}

#[test]
fn payloads_round_trip_on_every_backend() {
    let z2z4 = FinAbObject::new(vec![2, 4]).unwrap();
    let homs = enumerate_homs(&z2z4, &z2z4, 16).unwrap();
    round_trip(&FinAb, homs.into_iter().enumerate().map(|(i, f)| (format!("h{i}"), f)).collect());
    let z2 = FinAbObject::cyclic(2);
    let z4 = FinAbObject::cyclic(4);
    round_trip(&FinAb, vec![("f".into(), FinAb.mor(&z2, &z4, vec![vec![2]]).unwrap())]);

    let s3 = group_by_name("S3").unwrap();
    let z2g = group_by_name("Z2").unwrap();
    let sign = FinGrp.homs(&s3, &z2g).unwrap().into_iter().find(|f| !FinGrp.is_mono(f) && FinGrp.is_epi(f)).unwrap();
    round_trip(&FinGrp, vec![("f".into(), sign.clone()), ("g".into(), FinGrp.identity(&s3))]);

    let p = PSet.mor(3, 2, vec![0, 1, 1]).unwrap();
    round_trip(&PSet, vec![("f".into(), p)]);

    for cat in enumerate_categories(5).unwrap() {
        let arrows = (0..cat.arrow_count()).map(|i| (format!("a{i}"), i)).collect();
        round_trip(&cat, arrows);
    }
}
