use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_string_lossy().into_owned()
}

fn ybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = ybe(&all);
    let doc: Value = serde_json::from_slice(&o.stdout).expect("stdout is JSON");
    assert_eq!(doc["schema"], "ybe-cli/1");
    (o.status.code().unwrap(), doc)
}

#[test]
fn verify_reports_every_predicate_on_n3() {
    let o = ybe(&["verify", &fixture("n3.ybe")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for key in ["involutive", "left_nondegenerate", "right_nondegenerate", "square_free", "braided"] {
        assert!(text.contains(&format!("{key} true")), "{key} missing in\n{text}");
    }
}

#[test]
fn normal_form_of_the_overlap_word() {
    let o = ybe(&["nf", &fixture("n3.ybe"), "x3 x2 x1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x1 x2 x3");
}

#[test]
fn enumerate_four_prints_five_classes() {
    let o = ybe(&["enumerate", "-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 classes"));
}

#[test]
fn enumerate_writes_files() {
    let dir = std::env::temp_dir().join(format!("ybe-enumerate-{}", std::process::id()));
    let o = ybe(&["enumerate", "-n", "3", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> =
        std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    assert_eq!(names, ["n3_01.ybe", "n3_02.ybe", "survey.json", "survey.txt"]);
    let text = std::fs::read_to_string(dir.join("n3_02.ybe")).unwrap();
    let s = ybe_core::solution::parse_solution(&text).unwrap();
    assert!(ybe_core::classify(&s).is_square_free_solution());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(ybe(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ybe(&["verify"]).status.code(), Some(2));
    assert_eq!(ybe(&["verify", "/no/such/file.ybe"]).status.code(), Some(2));
    assert_eq!(ybe(&["nf", &fixture("n3.ybe"), "x3 x7"]).status.code(), Some(2));
    assert_eq!(ybe(&["istructure", &fixture("n3.ybe"), "u2^"]).status.code(), Some(2));
    assert_eq!(ybe(&["enumerate", "-n", "12"]).status.code(), Some(2));
    // The cross file is not a solution file.
    assert_eq!(ybe(&["verify", &fixture("n4_cross.ybe")]).status.code(), Some(2));
}

#[test]
fn analyze_json_matches_text() {
    let (code, doc) = json(&["analyze", &fixture("n6.ybe")]);
    assert_eq!(code, 0);
    assert_eq!(doc["M"], 2);
    assert_eq!(doc["cyclic"]["weak"], true);
    assert_eq!(doc["cyclic"]["strong"], false);
    assert_eq!(doc["R"][0], "(3 6)(4 5)");
    assert_eq!(doc["L"][0], "(3 4)(5 6)");
    let text = stdout(&ybe(&["analyze", &fixture("n6.ybe")]));
    assert!(text.contains("L_x1 (3 4)(5 6)  R_x1 (3 6)(4 5)  M_x1 2"));
    assert!(text.contains(&format!("M {}", doc["M"])));
}

#[test]
fn order_and_hilbert_on_eleven_generators() {
    let (code, doc) = json(&["order", &fixture("eleven.ybe")]);
    assert_eq!(code, 0);
    assert_eq!(doc["groebner"], true);
    assert_eq!(doc["rules"].as_array().unwrap().len(), 55);
    let (code, doc) = json(&["hilbert", &fixture("eleven.ybe"), "--maxdeg", "3"]);
    assert_eq!(code, 0);
    let counts: Vec<&str> = doc["degrees"].as_array().unwrap().iter().map(|r| r["normal"].as_str().unwrap()).collect();
    assert_eq!(counts, ["1", "11", "66", "286"]);
}

#[test]
fn istructure_images() {
    let (code, doc) = json(&["istructure", &fixture("n4.ybe"), "u2 u4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["v"], "x1 x4");
    assert_eq!(doc["v1"], "x2 x3");
    assert_eq!(doc["equal"], false);
}

#[test]
fn group_reports_quotient_or_skips_it() {
    let (code, doc) = json(&["group", &fixture("n4.ybe")]);
    assert_eq!(code, 0);
    assert_eq!(doc["quotient_order"], 16);
    assert_eq!(doc["axioms"]["associativity_exhaustive"], true);

    let (code, doc) = json(&["group", &fixture("m12.ybe")]);
    assert_eq!(code, 0);
    assert_eq!(doc["quotient_order"], "skipped: bound");
    assert_eq!(doc["G_L"], 96);
    assert_eq!(doc["M"], 12);
    assert_eq!(doc["solvable"], true);
    assert_eq!(doc["sylow"]["level"], "permutation_group");

    // A larger bound lets the quotient through for n4 exactly as before.
    let (_, doc) = json(&["group", &fixture("n4.ybe"), "--bound", "16"]);
    assert_eq!(doc["quotient_order"], 16);
    let (_, doc) = json(&["group", &fixture("n4.ybe"), "--bound", "15"]);
    assert_eq!(doc["quotient_order"], "skipped: bound");
}

#[test]
fn retract_levels() {
    for (file, level) in [("n3.ybe", 2), ("n4.ybe", 2), ("level3.ybe", 3)] {
        let (code, doc) = json(&["retract", &fixture(file)]);
        assert_eq!(code, 0);
        assert_eq!(doc["level"]["kind"], "level");
        assert_eq!(doc["level"]["level"], level, "{file}");
    }
}

#[test]
fn union_accepts_the_split_and_rejects_the_corruption() {
    let (x, y) = (fixture("n4_x.ybe"), fixture("n4_y.ybe"));
    let (code, doc) = json(&["union", &x, &y, &fixture("n4_cross.ybe")]);
    assert_eq!(code, 0);
    assert_eq!(doc["generalized_twisted_union"], true);
    let assembled = ybe_core::solution::parse_solution_json(&doc["solution"].to_string()).unwrap().solution;
    assert_eq!(assembled, ybe_core::known::n4());

    let (code, doc) = json(&["union", &x, &y, &fixture("n4_cross_broken.ybe")]);
    assert_eq!(code, 1);
    assert_eq!(doc["ok"], false);
    assert!(doc["witnesses"].as_array().unwrap().iter().any(|w| w["kind"] == "not_braided"));
}

#[test]
fn linear_is_seeded_and_flags_non_unitary_maps() {
    let (code, a) = json(&["linear", &fixture("n3.ybe"), "--seed", "7"]);
    assert_eq!(code, 0);
    let (_, b) = json(&["linear", &fixture("n3.ybe"), "--seed", "7"]);
    assert_eq!(a["survey"], b["survey"]);
    assert_eq!(a["survey"]["disagreements"].as_array().unwrap().len(), 0);

    let (code, doc) = json(&["linear", &fixture("n6.ybe")]);
    assert_eq!(code, 0);
    assert_eq!(doc["linear_ybe"], true);
    assert_eq!(doc["unitary"], false);
    assert!(doc["qybe_check"]["unitarity_witness"].is_string());
}

#[test]
fn linear_reads_coefficient_lines() {
    let dir = std::env::temp_dir().join(format!("ybe-linear-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let base = std::fs::read_to_string(fixture("n3.ybe")).unwrap();
    // r(x3, x1) = (x2, x3); scaling it alone breaks the linear braid relation.
    let file = dir.join("n3_scaled.ybe");
    std::fs::write(&file, format!("{base}coef 3 1 -> 2 3 : 2/1\n")).unwrap();
    let (code, doc) = json(&["linear", file.to_str().unwrap()]);
    assert_eq!(code, 0, "{doc}");
    assert_eq!(doc["coefficient_lines"], 1);
    assert_eq!(doc["linear_ybe"], doc["coefficient_groebner"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn conjecture_audit_always_exits_zero() {
    let o = ybe(&["conjecture", "-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n=4: 5/5 retractable (100%)"));
}

#[test]
fn jobs_flag_is_accepted() {
    let o = ybe(&["enumerate", "-n", "4", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 classes"));
}
