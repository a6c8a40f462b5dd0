use std::io::Write as _;
use std::path::PathBuf;

use jacfact::run_corpus;
use jacfact_core::{Budget, FieldConfig};

/// Goes to the raw stderr handle so the lines show up even when the
/// harness captures output.
fn emit(text: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{text}");
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[test]
fn acceptance_criteria() {
    let q = run_corpus(&corpus_dir(), FieldConfig::Rationals, Budget::default()).expect("corpus present");
    emit(&q.to_text());
    for c in &q.criteria {
        for d in &c.details {
            if !c.passed {
                emit(&format!("  criterion {}: {d}", c.id));
            }
        }
    }
    let blocking_failures: Vec<_> = q
        .criteria
        .iter()
        .filter(|c| c.blocking && !c.passed)
        .map(|c| c.id.clone())
        .collect();
    assert!(blocking_failures.is_empty(), "failed criteria: {blocking_failures:?}");

    let p = FieldConfig::parse("fp:1000003").unwrap();
    let fp = run_corpus(&corpus_dir(), p, Budget::default()).expect("corpus present");
    emit(&fp.to_text());
    assert_eq!(q.pass_set(), fp.pass_set(), "prime mode disagrees with exact mode");
}
