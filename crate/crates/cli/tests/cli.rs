use std::path::PathBuf;
use std::process::Command;

use contactlab_cli::{run, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("contactlab").chain(args.iter().copied()))
}

fn last_line(s: &str) -> &str {
    s.lines().last().unwrap_or_default()
}

#[test]
fn validate_x_l() {
    let out = cli(&["validate", &fixture("x_l.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["kind"], "pcs");
}

#[test]
fn validate_diagonal_reports_pcs4() {
    let out = cli(&["validate", "--text", &fixture("x_l_diagonal.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("(PCS4): ({Γ1},{Γ2})"), "{}", out.stdout);
}

#[test]
fn validate_rejects_malformed_json_with_location() {
    let out = cli(&["validate", &fixture("malformed.json")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2 column"), "{}", out.stderr);
}

#[test]
fn validate_reports_axiom_failure_of_raw_relation() {
    let out = cli(&["validate", "--text", &fixture("not_precontact.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("C+"), "{}", out.stdout);
}

#[test]
fn validate_checks_schema_version() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v2.json");
    std::fs::write(
        &path,
        r#"{"schema_version": "2", "kind": "algebra", "atoms": 1}"#,
    )
    .unwrap();
    let out = cli(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("schema_version"));
}

#[test]
fn dualize_rho_l_gives_x_l_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("space.json");
    let out = cli(&[
        "dualize",
        &fixture("b4_rho_l.json"),
        "--out",
        space.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&space).unwrap()).unwrap();
    assert_eq!(v["kind"], "pcs");
    assert_eq!(v["space"]["points"].as_array().unwrap().len(), 3);
    assert_eq!(v["x0"], serde_json::json!([0, 1]));

    let alg = dir.path().join("alg.json");
    let out = cli(&[
        "dualize",
        space.to_str().unwrap(),
        "--roundtrip",
        "--text",
        "--out",
        alg.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert_eq!(last_line(&out.stdout), "PASS");
    let back: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&alg).unwrap()).unwrap();
    assert_eq!(back["kind"], "pca");
    assert_eq!(back["kernel"].as_array().unwrap().len(), 4);
}

#[test]
fn dualize_small_and_degenerate() {
    let out = cli(&["dualize", &fixture("b2_rho_s.json")]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["space"]["points"].as_array().unwrap().len(), 1);

    let out = cli(&["dualize", &fixture("b1_degenerate.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("degenerate"));

    let out = cli(&["dualize", &fixture("b4.json")]);
    assert_eq!(out.code, 2);
}

#[test]
fn dualize_adjacency_reconstructs() {
    let out = cli(&[
        "dualize",
        &fixture("adjacency_path.json"),
        "--roundtrip",
        "--text",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn enumerate_listings() {
    let clans = cli(&["enumerate", &fixture("b8_path.json"), "clans"]);
    assert_eq!(clans.code, 0);
    assert_eq!(clans.stdout, "Γ{0}\nΓ{1}\nΓ{2}\nΓ{0,1}\nΓ{1,2}\n5 clans\n");
    let grills = cli(&["enumerate", &fixture("b4.json"), "grills"]);
    assert_eq!(last_line(&grills.stdout), "3 grills");
    let ults = cli(&["enumerate", &fixture("b4_rho_s.json"), "ultrafilters"]);
    assert_eq!(last_line(&ults.stdout), "2 ultrafilters");
    let u = cli(&["enumerate", &fixture("x_l.json"), "u-points"]);
    assert_eq!(u.stdout, "Γ1\nΓ2\n2 u-points\n");
    let rc = cli(&["enumerate", &fixture("x_l.json"), "rc"]);
    assert_eq!(last_line(&rc.stdout), "4 regular closed sets");
    let bad = cli(&["enumerate", &fixture("b4.json"), "clans"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn suite_exit_codes() {
    let ok = cli(&["suite", "--atoms", "3", "--count", "200", "--seed", "7"]);
    assert_eq!(ok.code, 0, "{}", ok.stdout);
    let empty = cli(&["suite", "--atoms", "3", "--density", "0", "--count", "1"]);
    assert_eq!(empty.code, 0, "{}", empty.stdout);
    let cap = cli(&["suite", "--atoms", "20"]);
    assert_eq!(cap.code, 2);
    let bad = cli(&["suite", "--atoms", "3", "--density", "1.5"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn suite_is_deterministic_without_timing() {
    let a = cli(&["suite", "--atoms", "3", "--count", "20", "--seed", "3"]);
    let b = cli(&["suite", "--atoms", "3", "--count", "20", "--seed", "3"]);
    assert_eq!(a, b);
    let t = cli(&[
        "suite", "--atoms", "2", "--count", "2", "--timing", "--text",
    ]);
    assert!(t.stdout.contains("elapsed"));
}

#[test]
fn export_dot() {
    let dot = cli(&["export-dot", &fixture("x_l.json")]);
    assert_eq!(dot.code, 0);
    let solid: Vec<&str> = dot
        .stdout
        .lines()
        .filter(|l| l.contains("->") && !l.contains("dashed"))
        .collect();
    assert_eq!(solid, ["  n2 -> n0;", "  n2 -> n1;"]);
    assert_eq!(dot.stdout.matches("dashed").count(), 4);
    assert_eq!(dot.stdout.matches("doublecircle").count(), 2);

    let pair = cli(&["export-dot", &fixture("discrete_pair.json")]);
    assert!(!pair.stdout.contains("->"));
    let adj = cli(&["export-dot", &fixture("adjacency_path.json")]);
    assert!(adj.stdout.starts_with("digraph R"));
    assert!(!adj.stdout.contains("dashed"));
    assert_eq!(cli(&["export-dot", &fixture("b4.json")]).code, 2);
}

#[test]
fn random_is_seeded_and_reimports() {
    let a = cli(&["random", "--atoms", "4", "--density", "0.4", "--seed", "9"]);
    let b = cli(&["random", "--atoms", "4", "--density", "0.4", "--seed", "9"]);
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    std::fs::write(&path, &a.stdout).unwrap();
    assert_eq!(cli(&["validate", path.to_str().unwrap()]).code, 0);
    let contact = cli(&[
        "random",
        "--atoms",
        "3",
        "--constraint",
        "contact",
        "--seed",
        "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&contact.stdout).unwrap();
    for p in 0..3 {
        assert!(v["kernel"]
            .as_array()
            .unwrap()
            .contains(&serde_json::json!([p, p])));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["validate", "/no/such/file.json"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_contactlab");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["validate", &fixture("x_l.json")]), Some(0));
    assert_eq!(
        status(&["validate", &fixture("x_l_diagonal.json")]),
        Some(1)
    );
    assert_eq!(status(&["validate", &fixture("malformed.json")]), Some(2));
}
