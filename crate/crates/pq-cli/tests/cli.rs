//! End-to-end tests of the `pq` binary: output shapes, exit codes, and the
//! JSON round-trip through the magma document format.

use std::process::{Command, Output};

fn pq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout(out),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn group_lists_normal_subgroups() {
    let out = pq(&["group", "Q8"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("order 8"));
    assert!(text.contains("normal subgroups (6):"));
    assert!(text.contains("x3 = {1,-1,i,-i}"));

    let out = pq(&["group", "Z1"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("normal subgroups (1):"));

    let out = pq(&["group", "S4"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("normal subgroups (4):"));
}

#[test]
fn group_rejects_bad_specs() {
    assert_exit(&pq(&["group", "Zbogus"]), 2);
    assert_exit(&pq(&["group", "D7"]), 2);
    assert_exit(&pq(&["group", "Z257"]), 2);
}

#[test]
fn axioms_classifications() {
    let out = pq(&["axioms", "dihedral:3"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("classification: quandle"));

    let out = pq(&["axioms", "trivial:1"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("classification: quandle"));

    let out = pq(&["axioms", "pg:Q8"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("classification: pseudoquandle"));
    assert!(text.contains("no unique r with x1 = r*x2"));
}

#[test]
fn matrix_output() {
    let out = pq(&["matrix", "pg:Z5"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("1 2\n2 2"));
    assert!(text.contains("simple form: yes"));

    let out = pq(&["matrix", "pg:Z4"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("trace: 6 (expected 6)"));

    let out = pq(&["matrix", "trivial:1"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("\n1\n"));
}

#[test]
fn kernels_output() {
    let out = pq(&["kernels", "dihedral:3"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("ker(x1) = {x1}"));
    assert!(text.contains("ascending chain: none"));

    let out = pq(&["kernels", "pg:Z8"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("ascending chain: x1 ⊆ x2 ⊆ x3 ⊆ x4"));
    assert!(text.contains("class equation: 4 = 1 + 1 + 1 + 1"));

    let out = pq(&["kernels", "trivial:1"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("ker(x1) = {x1}"));
}

#[test]
fn verify_sources() {
    let out = pq(&["verify", "pg:Q8"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("asserted claims: all pass"));

    let out = pq(&["verify", "trivial:2"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("phi-bijective"));
}

#[test]
fn verify_corpus_passes() {
    let out = pq(&["verify", "corpus"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("corpus: 66 structures, all asserted claims pass"));
    assert!(text.contains("pg:Q8"));
}

#[test]
fn classify_outcomes() {
    let out = pq(&["classify", "Z12"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("Z12 ≅ [3]⊕[2]"));
    assert!(text.contains("isomorphism: "));

    let out = pq(&["classify", "Z7"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("Z7 ≅ [2]"));

    let out = pq(&["classify", "Z8xZ9"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("Z8xZ9 ≅ [4]⊕[3]"));

    // Non-cyclic torsion cannot realize the chain product: reported as a
    // verification failure, not an input error.
    let out = pq(&["classify", "Z4xZ2"]);
    assert_exit(&out, 1);

    // Non-abelian specs are input errors.
    assert_exit(&pq(&["classify", "S3"]), 2);
}

#[test]
fn iso_outcomes() {
    let out = pq(&["iso", "pg:Z4", "pg:Z9"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).starts_with("isomorphic"));

    let out = pq(&["iso", "trivial:3", "dihedral:3"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).starts_with("not isomorphic"));

    let out = pq(&["iso", "trivial:2", "trivial:2"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("x1↦x1 x2↦x2"));
}

#[test]
fn json_round_trips_through_magma_document() {
    let out = pq(&["axioms", "--format", "json", "dihedral:5"]);
    assert_exit(&out, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["classification"], "quandle");
    assert_eq!(value["size"], 5);

    let magma = &value["magma"];
    let path = std::env::temp_dir().join(format!("pq-cli-roundtrip-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(magma).unwrap()).unwrap();
    let source = format!("file:{}", path.display());

    let again = pq(&["axioms", "--format", "json", &source]);
    assert_exit(&again, 0);
    let reparsed: serde_json::Value = serde_json::from_str(&stdout(&again)).expect("valid json");
    assert_eq!(reparsed["classification"], "quandle");
    assert_eq!(reparsed["magma"]["op"], magma["op"]);
    assert_eq!(reparsed["magma"]["labels"], magma["labels"]);
    std::fs::remove_file(&path).ok();
}

#[test]
fn json_group_shape() {
    let out = pq(&["group", "--format", "json", "Q8"]);
    assert_exit(&out, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["order"], 8);
    assert_eq!(value["normal_subgroups"].as_array().unwrap().len(), 6);
    assert_eq!(value["classes"].as_array().unwrap().len(), 5);
    // Members are reported as 1-based subscripts.
    assert_eq!(value["normal_subgroups"][0]["members"][0], 1);
}

#[test]
fn env_var_overrides_order_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_pq"))
        .args(["group", "Z9"])
        .env("PQ_MAX_ORDER", "8")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_pq"))
        .args(["group", "Z300"])
        .env("PQ_MAX_ORDER", "512")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));

    // An explicit flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_pq"))
        .args(["group", "--max-order", "8", "Z9"])
        .env("PQ_MAX_ORDER", "512")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn iso_cap_is_configurable() {
    let out = pq(&["iso", "--max-iso", "2", "trivial:3", "trivial:3"]);
    assert_exit(&out, 2);

    let out = pq(&["iso", "--max-iso", "3", "trivial:3", "trivial:3"]);
    assert_exit(&out, 0);
}
