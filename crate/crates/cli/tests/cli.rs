//! Exit-code contract of the command-line front end:
//! 0 verified/success, 1 failed mathematical check, 2 input error,
//! 3 stabilization failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tiltkit"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn algebra_build_reports_dimension() {
    let out = bin()
        .args(["algebra", "build"])
        .arg(fixture("a1_4.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("dimension: 56"), "{text}");
}

#[test]
fn malformed_json_exits_2() {
    let f = write_temp("{ not json");
    let out = bin().args(["algebra", "build"]).arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn loop_algebra_exits_3() {
    let f = write_temp(
        r#"{
            "vertices": ["v"],
            "arrows": [{"id": "x", "src": "v", "tgt": "v"}],
            "relations": []
        }"#,
    );
    let out = bin()
        .args(["algebra", "build"])
        .arg(f.path())
        .args(["--max-len", "8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn complex_check_accepts_the_tilting_fixture() {
    let out = bin()
        .args(["complex", "check"])
        .arg(fixture("p1_4_complex.json"))
        .arg("--quiet")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn single_summand_complex_exits_1() {
    let out = bin()
        .args(["complex", "check"])
        .arg(fixture("c1_alone_complex.json"))
        .arg("--quiet")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn demo_n4_certifies() {
    let json = tempfile::NamedTempFile::new().unwrap();
    let out = bin()
        .args(["d2n", "demo", "--n", "4", "--quiet", "--json"])
        .arg(json.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json.path()).unwrap()).unwrap();
    assert_eq!(report["verdict"], "Certified");
    assert_eq!(report["end_dim"], 32);
}

#[test]
fn demo_small_n_exits_2() {
    let out = bin().args(["d2n", "demo", "--n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn postnikov_check_fixture_passes() {
    let out = bin()
        .args(["postnikov", "check"])
        .arg(fixture("postnikov_3_6.json"))
        .arg("--quiet")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn postnikov_compare_the_two_sides() {
    let out = bin()
        .args(["postnikov", "compare"])
        .arg(fixture("a1_4.json"))
        .arg(fixture("a2_4.json"))
        .arg("--quiet")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn postnikov_compare_refutes_different_simple_counts() {
    let a = write_temp(r#"{"vertices": ["v"], "arrows": [], "relations": []}"#);
    let b = write_temp(r#"{"vertices": ["v", "w"], "arrows": [], "relations": []}"#);
    let out = bin()
        .args(["postnikov", "compare"])
        .arg(a.path())
        .arg(b.path())
        .arg("--quiet")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn verify_iso_identity_task() {
    let task = format!(
        r#"{{
            "algebra": {},
            "candidate": {},
            "vertex_map": {{"v": "v"}},
            "arrow_map": {{"x": [{{"coeff": "1", "path": ["x"]}}]}}
        }}"#,
        r#"{"vertices": ["v"], "arrows": [{"id": "x", "src": "v", "tgt": "v"}],
            "relations": [{"terms": [{"coeff": "1", "path": ["x", "x"]}]}]}"#,
        r#"{"vertices": ["v"], "arrows": [{"id": "x", "src": "v", "tgt": "v"}],
            "relations": [{"terms": [{"coeff": "1", "path": ["x", "x"]}]}]}"#,
    );
    let f = write_temp(&task);
    let out = bin()
        .args(["algebra", "verify-iso"])
        .arg(f.path())
        .arg("--quiet")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn endo_output_rebuilds_to_the_same_dimension() {
    let json = tempfile::NamedTempFile::new().unwrap();
    let out = bin()
        .args(["complex", "endo"])
        .arg(fixture("p1_4_complex.json"))
        .arg("--quiet")
        .arg("--json")
        .arg(json.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let rebuilt = bin()
        .args(["algebra", "build"])
        .arg(json.path())
        .output()
        .unwrap();
    assert_eq!(rebuilt.status.code(), Some(0), "{rebuilt:?}");
    let text = String::from_utf8_lossy(&rebuilt.stdout);
    assert!(text.contains("dimension: 32"), "{text}");
}

#[test]
fn json_report_is_reproducible() {
    let render = || {
        let json = tempfile::NamedTempFile::new().unwrap();
        bin()
            .args(["algebra", "build"])
            .arg(fixture("a2_4.json"))
            .args(["--quiet", "--seed", "7", "--json"])
            .arg(json.path())
            .output()
            .unwrap();
        std::fs::read_to_string(json.path()).unwrap()
    };
    assert_eq!(render(), render());
}
