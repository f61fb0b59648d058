use std::path::PathBuf;

use gq_bialgebra::eval::{compare, evaluate, Backend, Verdict};
use gq_bialgebra::lang::Reading;
use gq_bialgebra::model_file::{load_model, parse_model, to_canonical_toml};

fn shipped() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    files
}

#[test]
fn shipped_models_load_and_round_trip() {
    let files = shipped();
    assert!(files.len() >= 3);
    for f in files {
        let m = load_model(&f).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        let canon = to_canonical_toml(&m).unwrap();
        let again = parse_model(&canon).unwrap();
        assert_eq!(to_canonical_toml(&again).unwrap(), canon, "{}", f.display());
        assert_eq!(again.universe().entities(), m.universe().entities());
        assert_eq!(again.verbs(), m.verbs());
        assert_eq!(again.lexicon(), m.lexicon());
    }
}

#[test]
fn office_model_sentences() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models");
    let m = load_model(dir.join("office.toml")).unwrap();
    // ann fixes both printers, cat fixes p1; bob fixes nothing.
    let r = evaluate(&m, "every person fixes a printer", &Reading::LINEAR, &Backend::ALL).unwrap();
    assert!(r.outcomes.iter().all(|o| !o.truth));
    let r = evaluate(
        &m,
        "at-least-two people fix a printer",
        &[Reading::SubjectWide],
        &Backend::ALL,
    )
    .unwrap();
    assert!(r.outcomes.iter().all(|o| o.truth));
    let r = evaluate(&m, "exactly-one person sleeps", &[Reading::SubjectWide], &Backend::ALL).unwrap();
    assert!(r.outcomes.iter().all(|o| o.truth));
    // p1 is fixed by two people; no single printer is fixed by everyone.
    let c = compare(&m, "at-least-two people fix a printer").unwrap();
    assert_eq!(c.readings, Verdict::Agree);
    let c = compare(&m, "every person uses a printer").unwrap();
    assert_eq!(c.readings, Verdict::Differ);
    assert!(c.report.disagreements().is_empty());
}
