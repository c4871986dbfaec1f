use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/corpus.cat")
}

fn catmate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catmate")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_counts_entities() {
    let c = corpus();
    let o = catmate(&["validate", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok: 9 categories"), "{}", stdout(&o));
}

#[test]
fn localize_writes_a_parseable_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ho.cat");
    let c = corpus();
    let o = catmate(&["localize", c.to_str().unwrap(), "--cat", "RelArrow", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut ws = catmate_core::format::parse(include_str!("../../../fixtures/corpus.cat")).unwrap();
    ws.extend_from(&text).unwrap();
    let h = &ws.functors["H_RelArrow"].functor;
    assert_eq!((h.tgt.n_obj(), h.tgt.n_mor()), (2, 4));
    let i = h.src.mor_id("i").unwrap();
    assert!(h.tgt.is_iso(h.mor[i]));
}

#[test]
fn localize_reports_undecided_bounds() {
    let c = corpus();
    let o = catmate(&["localize", c.to_str().unwrap(), "--cat", "RelArrow", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("undecided"));
}

#[test]
fn check_json_and_text() {
    let c = corpus();
    let o = catmate(&["check", c.to_str().unwrap(), "--suite", "localization", "--report", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["id"] == "localization:RelArrow:exact" && c["status"] == "pass"));

    let o = catmate(&["check", c.to_str().unwrap(), "--suite", "localization", "--probes", "One", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("UNDECIDED localization:RelArrow:exact"));
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.cat");
    // only the terminal category: the Beck-Chevalley counterexample search comes up empty
    let text = "\
category One
  object *
  morphism id_* : * -> *
end
functor I : One -> One
  obj * |-> *
end
nat u : id:One => I.I
  at * = id_*
end
adjunction IdOne = I -| I unit u counit u
";
    std::fs::write(&path, text).unwrap();
    let o = catmate(&["check", path.to_str().unwrap(), "--suite", "bc"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL      bc:counterexample:search"));
}

#[test]
fn usage_and_parse_errors_exit_three() {
    assert_eq!(catmate(&["frobnicate"]).status.code(), Some(3));
    let c = corpus();
    assert_eq!(catmate(&["check", c.to_str().unwrap(), "--suite", "nonsense"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cat");
    std::fs::write(&bad, "category X\n  object a\n  morphism f : a -> b\nend\n").unwrap();
    let o = catmate(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(catmate(&["--help"]).status.code(), Some(0));
}
