use catmate_core::fixtures;
use catmate_core::format::{parse, serialize};
use catmate_core::suite::{run_suite, Status, Suite, SuiteConfig};

const CORPUS: &str = include_str!("../../../fixtures/corpus.cat");

#[test]
fn corpus_categories_match_the_builtin_fixtures() {
    let ws = parse(CORPUS).unwrap();
    assert!(ws.categories.len() >= 8);
    let builtin = [
        fixtures::one(),
        fixtures::arrow(),
        fixtures::chain2(),
        fixtures::span(),
        fixtures::walking_iso(),
        fixtures::fs2(),
        fixtures::g1(),
        fixtures::g0(),
        fixtures::square(),
    ];
    for c in builtin {
        let parsed = ws.categories.get(c.name()).unwrap_or_else(|| panic!("{} missing from corpus", c.name()));
        assert!(parsed.same_as(&c), "{} differs from the fixture", c.name());
    }
    let ra = &ws.relcats["RelArrow"].rc;
    assert_eq!(ra.weq, fixtures::rel_arrow().weq);
}

#[test]
fn corpus_survives_serialization() {
    let ws = parse(CORPUS).unwrap();
    let again = parse(&serialize(&ws).unwrap()).unwrap();
    assert!(ws.extensionally_equal(&again));
}

#[test]
fn mates_suite_has_no_failures() {
    let ws = parse(CORPUS).unwrap();
    let rep = run_suite(&ws, Suite::Mates, &SuiteConfig::default());
    assert_eq!(rep.summary.fail, 0, "{}", rep.to_text());
    assert_eq!(rep.get("mates:pasting:vertical").unwrap().status, Status::Pass);
    assert_eq!(rep.get("mates:pasting:horizontal").unwrap().status, Status::Pass);
}

#[test]
fn full_run_has_no_failures() {
    let ws = parse(CORPUS).unwrap();
    let rep = run_suite(&ws, Suite::All, &SuiteConfig::default());
    assert_eq!(rep.summary.fail, 0, "{}", rep.to_text());
    assert_eq!(rep.summary.undecided, 0);
    assert_eq!(rep.exit_code(), 0);
}

#[test]
fn tiny_bound_is_undecided_not_failed() {
    let ws = parse(CORPUS).unwrap();
    let cfg = SuiteConfig { bound: Some(1), ..SuiteConfig::default() };
    let rep = run_suite(&ws, Suite::Localization, &cfg);
    assert_eq!(rep.get("localization:RelArrow:exact").unwrap().status, Status::Undecided);
    assert_eq!(rep.get("localization:RelArrow:universal:One").unwrap().status, Status::Skipped);
    assert_eq!(rep.summary.fail, 0);
    assert_eq!(rep.exit_code(), 2);
}

fn strip_runtimes(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"runtime_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn reports_are_deterministic() {
    let ws = parse(CORPUS).unwrap();
    let a = run_suite(&ws, Suite::Localization, &SuiteConfig::default()).to_json();
    let b = run_suite(&ws, Suite::Localization, &SuiteConfig::default()).to_json();
    assert_eq!(strip_runtimes(&a), strip_runtimes(&b));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["suite"], "localization");
}
