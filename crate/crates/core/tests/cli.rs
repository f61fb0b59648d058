use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../models")
        .join(name)
}

fn gqb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gqb"))
        .args(args)
        .output()
        .expect("gqb runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn eval_reports_both_linear_readings() {
    let desk = model("divergence.toml");
    let o = gqb(&["eval", path(&desk), "all men admire some cars"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(lines.len(), 2, "{out}");
    assert!(lines[0].starts_with("subject-wide  true"));
    assert!(lines[1].starts_with("object-wide   false"));
    assert!(!out.contains("scalar"));

    let o = gqb(&["eval", path(&desk), "all men admire some cars", "--backend", "vector"]);
    assert!(stdout(&o).contains("scalar=4"), "{}", stdout(&o));
}

#[test]
fn false_sentences_still_exit_zero() {
    let o = gqb(&["eval", path(&model("desk.toml")), "no men admire some cars"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("false"));
}

#[test]
fn compare_verdicts() {
    let o = gqb(&["compare", path(&model("divergence.toml")), "all men admire some cars"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("readings DIFFER\n"));
    let o = gqb(&["compare", path(&model("desk.toml")), "some men admire some cars"]);
    assert!(stdout(&o).ends_with("readings AGREE\n"));
    assert!(stdout(&o).contains("witness=({m1}, {c1})"));
}

#[test]
fn compare_skips_branching_on_mixed_pairs() {
    let o = gqb(&["compare", path(&model("desk.toml")), "all men admire no cars"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("branching skipped"));
}

#[test]
fn check_laws() {
    let o = gqb(&["check-laws", "--size", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(" PASS")).count(), 12);
    let o = gqb(&["check-laws", "--size", "0"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(" PASS")).count(), 12);
    let o = gqb(&["check-laws", "--size", "99"]);
    assert_eq!(o.status.code(), Some(7));
    assert!(stderr(&o).contains("cap"));
    let o = gqb(&["check-laws", "--model", path(&model("desk.toml"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(" PASS")).count(), 6);
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(" SKIPPED")).count(), 6);
}

#[test]
fn parse_and_table() {
    let o = gqb(&[
        "parse",
        path(&model("office.toml")),
        "Every person fixes a printer.",
        "--format",
        "json",
    ]);
    let ast: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(ast["shape"], "transitive");
    assert_eq!(ast["v"], "fixes");

    let o = gqb(&["table", path(&model("desk.toml")), "all", "--format", "json"]);
    let t: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // `all A X` iff A ⊆ X: 3^4 pairs on four entities.
    assert_eq!(t["pairs"].as_array().unwrap().len(), 81);
    let o = gqb(&["table", path(&model("desk.toml")), "several"]);
    assert_eq!(o.status.code(), Some(6));
}

#[test]
fn grid_runs_seeded() {
    let a = gqb(&[
        "grid",
        "--size",
        "3",
        "--samples",
        "20",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    let b = gqb(&[
        "grid",
        "--size",
        "3",
        "--samples",
        "20",
        "--seed",
        "3",
        "--jobs",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["cases"], 20 * 50);
    assert_eq!(r["disagreement_count"], 0);
}

#[test]
fn error_exit_codes() {
    let desk = model("desk.toml");
    let cases: [(&[&str], i32); 7] = [
        (&["eval", "/nonexistent/model.toml", "some men admire some cars"], 3),
        (&["eval", path(&desk), "some men eat cars"], 5),
        (&["eval", path(&desk), "some men admire"], 5),
        (
            &["eval", path(&desk), "all men admire no cars", "--reading", "branching"],
            8,
        ),
        (
            &[
                "eval",
                path(&desk),
                "all men admire some cars",
                "--readings",
                "sideways",
            ],
            2,
        ),
        (&["grid", "--size", "9"], 7),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let o = gqb(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty() || code == 2, "{args:?}");
        assert!(!stderr(&o).contains("panicked"), "{args:?}");
    }
}

#[test]
fn model_errors_name_the_entity() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "version = 1\nuniverse = [\"m1\", \"m2\"]\n[nouns]\nmen = [\"m1\", \"m3\"]\n",
    )
    .unwrap();
    let o = gqb(&["parse", path(&bad), "some men admire some men"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("m3"));
    assert!(stderr(&o).contains("nouns.men"));

    let intrans = dir.path().join("walk.toml");
    std::fs::write(
        &intrans,
        "version = 1\nuniverse = [\"a\"]\n[nouns]\ndogs = [\"a\"]\n[vps]\nwalk = [\"a\"]\n",
    )
    .unwrap();
    let o = gqb(&[
        "eval",
        path(&intrans),
        "all dogs walk",
        "--backends",
        "oracle,categorical,vector",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("scalar="));
    let o = gqb(&["eval", path(&intrans), "all dogs walk", "--readings", "branching"]);
    assert_eq!(o.status.code(), Some(9));

    let empty = dir.path().join("empty.toml");
    std::fs::write(
        &empty,
        "version = 1\nuniverse = []\n[nouns]\nthings = []\n[vps]\nexist = []\n",
    )
    .unwrap();
    let o = gqb(&["eval", path(&empty), "all things exist"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("true"));
}

#[cfg(feature = "fault-injection")]
#[test]
fn injected_fault_is_a_hard_failure() {
    let o = Command::new(env!("CARGO_BIN_EXE_gqb"))
        .args(["compare", path(&model("desk.toml")), "some men admire some cars"])
        .env("GQB_INJECT_FAULT", "vector")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(10));
    assert!(stdout(&o).contains("DISAGREE"));
}
