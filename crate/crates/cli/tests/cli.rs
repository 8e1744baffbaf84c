use std::path::{Path, PathBuf};
use std::process::Command;

use lcdual_cli::{check, load, CheckArgs, CliError, Format, LoadOptions, Suite};
use lcdual_core::Status;

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(rel)
}

fn top_level() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

fn args(suite: Suite, files: Vec<PathBuf>) -> CheckArgs {
    CheckArgs {
        suite,
        files,
        seed: 0,
        max_atoms: 4,
        out: None,
        format: Format::Json,
        timing: false,
    }
}

fn load_err(rel: &str) -> CliError {
    load(&[corpus(rel)], LoadOptions::default()).unwrap_err()
}

/// Compares against a checked-in report; `LCDUAL_BLESS=1` rewrites it.
fn golden(name: &str, rendered: &str) {
    let path = corpus("golden").join(name);
    if std::env::var_os("LCDUAL_BLESS").is_some() {
        std::fs::write(&path, rendered).unwrap();
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden report {}", path.display()));
    assert!(want == rendered, "report differs from {}", path.display());
}

#[test]
fn golden_all() {
    let out = check(&args(Suite::All, top_level())).unwrap();
    assert_eq!(out.exit_code, 1);
    golden("all.json", &out.rendered);
}

#[test]
fn golden_text() {
    let mut a = args(Suite::Axioms, vec![corpus("algebras.json")]);
    a.format = Format::Text;
    golden("axioms.txt", &check(&a).unwrap().rendered);
}

#[test]
fn golden_request() {
    let out = check(&args(Suite::All, vec![corpus("requests/duality_xyz.json")])).unwrap();
    assert_eq!(out.exit_code, 0);
    let duality = out
        .report
        .suites
        .iter()
        .find(|s| s.suite == Suite::Duality)
        .unwrap();
    assert!(duality.checks.iter().all(|c| c.subject == "S_xyz"));
    assert!(duality
        .checks
        .iter()
        .any(|c| c.check.id.starts_with("round-trip/")));
    assert_eq!(duality.status, Status::Pass);
    golden("duality_xyz.json", &out.rendered);
}

#[test]
fn full_adjacency_fails_c6_at_p() {
    let out = check(&args(Suite::Axioms, vec![corpus("algebras.json")])).unwrap();
    let s = &out.report.suites[0];
    let c6 = s
        .checks
        .iter()
        .find(|c| c.subject == "full_pq" && c.check.id == "nca/C6")
        .unwrap();
    assert_eq!(c6.check.status, Status::Fail);
    assert_eq!(c6.check.witness_value("a"), Some("{p}"));
    let fails: Vec<&str> = s
        .checks
        .iter()
        .filter(|c| {
            c.subject == "full_pq" && c.check.status.is_fail() && c.check.id.starts_with("nca/")
        })
        .map(|c| c.check.id.as_str())
        .collect();
    assert_eq!(fails, ["nca/C6"]);
}

#[test]
fn category_suite_on_small_objects() {
    let out = check(&args(Suite::Category, vec![corpus("algebras.json")])).unwrap();
    assert_eq!(out.exit_code, 0);
    let s = &out.report.suites[0];
    for id in [
        "category-laws/identity",
        "category-laws/associativity",
        "functor-a/composition",
    ] {
        let c = s
            .checks
            .iter()
            .find(|c| c.subject == "generated" && c.check.id == id)
            .unwrap();
        assert_eq!(c.check.status, Status::Pass, "{id}");
    }
}

#[test]
fn morphism_diagnostics() {
    let out = check(&args(Suite::Category, vec![corpus("morphisms.json")])).unwrap();
    let s = &out.report.suites[0];
    let status = |subject: &str, id: &str| {
        s.checks
            .iter()
            .find(|c| c.subject == subject && c.check.id == id)
            .map(|c| c.check.status)
            .unwrap()
    };
    assert_eq!(status("all_zero", "morphism/M6"), Status::Fail);
    assert_eq!(status("not_down_closed", "morphism/M1"), Status::Fail);
    for m in ["identity_xy", "dt_const", "dt_x_to_y", "dt_cycle"] {
        for k in 1..=6 {
            assert_eq!(
                status(m, &format!("morphism/M{k}")),
                Status::Pass,
                "{m} M{k}"
            );
        }
        assert_eq!(status(m, "preimage-iota/preimage-iota"), Status::Pass);
    }
}

#[test]
fn unresolved_reference() {
    match load_err("invalid/unresolved_morphism.json") {
        CliError::Unresolved { field, name, .. } => {
            assert_eq!(name, "Q_undeclared");
            assert_eq!(field, "items[1].target");
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn nonsymmetric_table_is_malformed() {
    let e = load_err("invalid/nonsymmetric_table.json");
    assert!(
        matches!(
            &e,
            CliError::Model {
                source: lcdual_core::Error::Malformed(_),
                ..
            }
        ),
        "{e}"
    );
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn duplicate_and_partial_and_syntax() {
    match load_err("invalid/duplicate_points.json") {
        CliError::Duplicate { field, name, .. } => {
            assert_eq!((field.as_str(), name.as_str()), ("items[0].points[2]", "x"));
        }
        e => panic!("unexpected {e}"),
    }
    let e = load_err("invalid/partial_table.json");
    assert!(e.to_string().contains("partial table"), "{e}");
    match load_err("invalid/syntax.json") {
        CliError::Syntax { line, .. } => assert_eq!(line, 4),
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn size_limit_and_override() {
    let e = load_err("invalid/five_atoms.json");
    assert_eq!(e.exit_code(), 3);
    let ws = load(
        &[corpus("invalid/five_atoms.json")],
        LoadOptions {
            seed: 0,
            max_atoms: 5,
        },
    )
    .unwrap();
    assert_eq!(ws.entries.len(), 1);
    let e = load(
        &[corpus("invalid/five_atoms.json")],
        LoadOptions {
            seed: 0,
            max_atoms: 7,
        },
    )
    .unwrap_err();
    assert!(matches!(e, CliError::Usage(_)));
}

#[test]
fn seed_changes_tail_samples_only() {
    let mut a = args(Suite::Axioms, vec![corpus("tail.json")]);
    let r0 = check(&a).unwrap().report;
    a.seed = 99;
    let r1 = check(&a).unwrap().report;
    assert_eq!(r0.input_digest, r1.input_digest);
    assert_eq!(r0.status, r1.status);
    assert_eq!(r0.status, Status::SampledPass);
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lcdual"))
}

#[test]
fn binary_exit_codes_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let st = bin()
        .args(["check", "duality"])
        .arg(corpus("spaces.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], "lcdual-report/1");
    assert_eq!(v["suite"], "duality");
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    assert!(v.get("timing").is_none());

    let o = bin()
        .args(["check", "axioms"])
        .arg(corpus("algebras.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("first failing suite: axioms"));

    let o = bin()
        .args(["check", "all"])
        .arg(corpus("invalid/unresolved_morphism.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("items[1].target"));

    let o = bin()
        .args(["check", "all"])
        .arg(corpus("invalid/five_atoms.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    let o = bin()
        .args(["check", "nonsense"])
        .arg(corpus("spaces.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    let o = bin()
        .args(["check", "ideals", "--format", "text", "--timing"])
        .arg(corpus("tail.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("sampled-pass"));
    assert!(text.contains("total "));
}
