use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn jacfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacfact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(rel: &str) -> String {
    corpus().join(rel).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {report}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jacfact-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

#[test]
fn jacring_on_cubic_fourfold() {
    let out = jacfact(&["jacring", &path("poly/fermat-cubic-4fold.poly")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["status"], "pass");
    let h = &check(&r, "hilbert_function")["payload"];
    assert_eq!(h["sigma"], 6);
    let hf: Vec<u64> = h["hilbert_function"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(&hf[..8], &[1, 6, 15, 20, 15, 6, 1, 0]);
    assert_eq!(r["input_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn reports_are_deterministic() {
    let file = path("poly/hesse-plane-cubic.poly");
    let mut a = json(&jacfact(&["jacring", &file]));
    let mut b = json(&jacfact(&["jacring", &file]));
    a.as_object_mut().unwrap().remove("timing_ms");
    b.as_object_mut().unwrap().remove("timing_ms");
    assert_eq!(a, b);
}

#[test]
fn chain_rule_on_fourfold_koszul() {
    for f in ["mf/koszul-cubic-4fold.mf", "poly/fermat-cubic-4fold.poly"] {
        let out = jacfact(&["mf", "chainrule", &path(f)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        let r = json(&out);
        for i in 0..6 {
            assert_eq!(check(&r, &format!("chain_rule[x{i}]"))["status"], "pass");
        }
        assert_eq!(r["checks"].as_array().unwrap().len(), 6);
    }
}

#[test]
fn shift_check_passes_on_exported_objects() {
    for f in ["mf/koszul-binary-cubic.mf", "mf/diagonal-binary-cubic.mf"] {
        let out = jacfact(&["mf", "shift-check", &path(f)]);
        assert_eq!(out.status.code(), Some(0), "{f}");
    }
}

#[test]
fn export_round_trips() {
    let out = jacfact(&["mf", "export", &path("poly/fermat-binary-cubic.poly")]);
    assert_eq!(out.status.code(), Some(0));
    let exported = String::from_utf8(out.stdout).unwrap();
    let stored = fs::read_to_string(path("mf/koszul-binary-cubic.mf")).unwrap();
    assert_eq!(exported.trim(), stored.trim());
}

#[test]
fn mismatched_extension_is_rejected() {
    let a2 = path("lattice/a2.gram");
    let a2n = path("lattice/a2neg.gram");
    let ok = jacfact(&["lattice", "extend", &a2, &a2n]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = jacfact(&["lattice", "extend", &a2, &a2n, "--g", "neg-id"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["status"], "rejected");
}

#[test]
fn discriminant_of_a2() {
    let r = json(&jacfact(&["lattice", "disc", &path("lattice/a2.gram")]));
    assert_eq!(r["status"], "pass");
    let d = &check(&r, "discriminant")["payload"];
    assert_eq!(d["order"], "3");
    assert_eq!(d["q_values"][1]["q"], "2/3");
    assert_eq!(check(&r, "order_is_abs_det")["status"], "pass");
}

#[test]
fn malformed_input_exits_two() {
    let dir = scratch("bad");
    let f = dir.join("bad.poly");
    fs::write(&f, "x0^3 + + ?\n").unwrap();
    let out = jacfact(&["jacring", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = jacfact(&["jacring", dir.join("nope.poly").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
    let field = jacfact(&["--field", "fp:4", "jacring", &path("poly/fermat-plane-cubic.poly")]);
    assert_ne!(field.status.code(), Some(0));
}

#[test]
fn tiny_budget_exits_three() {
    let out = jacfact(&["--budget", "10", "jacring", &path("poly/fermat-cubic-4fold.poly")]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tampered_golden_fails_only_its_criterion() {
    let dir = scratch("tamper");
    copy_dir(&corpus(), &dir);
    let golden = dir.join("golden/c2_cubic_fourfold.json");
    let text = fs::read_to_string(&golden).unwrap().replace("\"dim_j3\": 20", "\"dim_j3\": 21");
    fs::write(&golden, text).unwrap();
    let out = jacfact(&["corpus", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let summary = json(&out);
    for c in summary["criteria"].as_array().unwrap() {
        assert_eq!(c["passed"].as_bool().unwrap(), c["id"] != "2", "{c}");
    }
}

#[test]
fn missing_corpus_file_exits_two() {
    let dir = scratch("missing");
    copy_dir(&corpus(), &dir);
    fs::remove_file(dir.join("golden/c8_lattice.json")).unwrap();
    let out = jacfact(&["corpus", dir.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
}
