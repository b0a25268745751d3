use std::path::PathBuf;
use std::process::{Command, Output};

use coact_cli::{parse, CliError, EXIT_INTERNAL, EXIT_INVALID, EXIT_OK};
use coact_core::catalog;
use coact_core::crossed::CrossedProduct;
use coact_core::cstar::StarAlgebra;
use coact_core::{Error, ToleranceConfig};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

fn coact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coact")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn free_on_swap_fixture() {
    let o = coact(&["free", &example("swap-c2.json")]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).starts_with("swap-c2: free=true intertwiner dims 2/2\n"), "{}", stdout(&o));

    let o = coact(&["free", "--json", &example("swap-c2.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["free"], true);
    assert_eq!(v["result"]["intertwiner_dim"], 2);
    assert_eq!(v["result"]["expected_space_dim"], 2);
    assert!(v["result"].get("witness").is_none());
}

#[test]
fn nonfree_verdict_carries_a_witness() {
    let o = coact(&["free", "--json", &example("trivial-c-z2.json")]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["free"], false);
    assert_eq!(v["result"]["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn saturated_on_trivial_fixture() {
    let o = coact(&["saturated", &example("trivial-c-z2.json")]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let out = stdout(&o);
    assert!(out.contains("saturated=false"));
    assert!(out.contains("rank dual image         [1, 0, 0, 1]"), "{out}");
    assert!(out.contains("rank amplified          [1, 0, 1, 0]"), "{out}");
}

#[test]
fn outer_reports_witness_for_inner_action() {
    let o = coact(&["outer", "ad-diag-m2"]);
    let out = stdout(&o);
    assert!(out.starts_with("ad-diag-m2: not_outer\n"), "{out}");
    assert!(out.lines().any(|l| l.split_whitespace().eq(["witness", "check", "passed"])), "{out}");
    let o = coact(&["outer", "grading-m2"]);
    assert!(stdout(&o).starts_with("grading-m2: inconclusive\n"));
    assert!(stdout(&o).contains("reason"));
}

#[test]
fn suite_passes_and_is_byte_stable() {
    let a = coact(&["suite"]);
    let b = coact(&["suite"]);
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert!(stdout(&a).ends_with("all checks passed\n"));
    assert!(!stdout(&a).contains("FAIL"));
    assert_eq!(a.stdout, b.stdout);
    let j1 = coact(&["suite", "--json"]);
    let j2 = coact(&["suite", "--json"]);
    assert_eq!(j1.stdout, j2.stdout);
}

#[test]
fn suite_on_files_keeps_input_order() {
    let o = coact(&["suite", &example("shift-c3-z3.json"), &example("swap-c2.json")]);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).take(2).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(rows, ["shift-c3-z3", "swap-c2"]);
}

#[test]
fn every_command_runs_on_every_fixture() {
    let commands = ["validate", "free", "outer", "saturated", "crossed", "commutant", "cond-exp", "rokhlin-diagnostic"];
    for c in catalog::full().unwrap() {
        let path = example(&format!("{}.json", c.name()));
        for cmd in commands {
            let o = coact(&[cmd, &path]);
            assert_eq!(o.status.code(), Some(EXIT_OK), "{cmd} {}: {}", c.name(), stderr(&o));
        }
    }
}

#[test]
fn timing_only_on_request() {
    assert!(!stdout(&coact(&["free", "swap-c2"])).contains("runtime"));
    assert!(stdout(&coact(&["free", "--timing", "swap-c2"])).contains("runtime: "));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&coact(&["free", "--json", "--timing", "swap-c2"]))).unwrap();
    assert!(v["runtime_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn non_group_table_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(
        &dir,
        "bad.json",
        r#"{"name": "bad", "group": {"order": 2, "table": [[0, 1], [1, 1]]}, "hopf_from_group": "group-algebra"}"#,
    );
    let o = coact(&["validate", &path]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stderr(&o).contains("not a group: no inverse for 1"), "{}", stderr(&o));
}

#[test]
fn non_multiplicative_action_is_rejected() {
    let mut input = parse(&std::fs::read_to_string(example("swap-c2.json")).unwrap()).unwrap();
    // α₁ = [[1, 1], [0, 0]] is linear but not multiplicative
    let m = &mut input.action.as_mut().unwrap().matrices[1];
    *m = vec![vec![[1.0, 0.0], [1.0, 0.0]], vec![[0.0, 0.0], [0.0, 0.0]]];
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "perturbed.json", &coact_cli::to_json(&input));
    let o = coact(&["free", &path]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    let err = stderr(&o);
    assert!(err.contains("automorphism check failed, residual"), "{err}");
    assert!(err.contains("action"), "{err}");
}

#[test]
fn shape_and_syntax_errors_are_located() {
    let dir = tempfile::tempdir().unwrap();
    let mut input = parse(&std::fs::read_to_string(example("swap-c2.json")).unwrap()).unwrap();
    input.action.as_mut().unwrap().matrices[1].pop();
    let path = write_temp(&dir, "shape.json", &coact_cli::to_json(&input));
    let o = coact(&["free", &path]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stderr(&o).contains("action.matrices[1]: expected 2 rows, found 1"), "{}", stderr(&o));

    let path = write_temp(&dir, "syntax.json", "{\n  \"name\": \"x\",\n  \"group\": [1.0.0]\n}");
    let o = coact(&["validate", &path]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let path = write_temp(&dir, "unknown.json", r#"{"name": "x", "grop": {}}"#);
    assert!(stderr(&coact(&["validate", &path])).contains("unknown field `grop`"));
}

#[test]
fn conflicting_definitions_are_rejected() {
    let mut input = parse(&std::fs::read_to_string(example("swap-c2.json")).unwrap()).unwrap();
    input.coaction = Some(coact_cli::input::CoactionInput { rho: vec![] });
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "both.json", &coact_cli::to_json(&input));
    let o = coact(&["free", &path]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stderr(&o).contains("not both"));
}

#[test]
fn missing_coaction_and_bad_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "group.json", r#"{"name": "g", "group": {"order": 1, "table": [[0]]}}"#);
    assert_eq!(coact(&["validate", &path]).status.code(), Some(EXIT_OK));
    let o = coact(&["free", &path]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stderr(&o).contains("needs `action` or `coaction`"));
    assert_eq!(coact(&["free", "--tol", "-1", "swap-c2"]).status.code(), Some(EXIT_INVALID));
    assert_eq!(coact(&["free", "no-such-input"]).status.code(), Some(EXIT_INVALID));
}

#[test]
fn internal_errors_map_to_exit_one() {
    assert_eq!(CliError::from(Error::Inconsistency("x".into())).exit_code(), EXIT_INTERNAL);
    assert_eq!(CliError::from(Error::NotUnitary(1.0)).exit_code(), EXIT_INVALID);
}

#[test]
fn emit_then_parse_reproduces_the_crossed_product() {
    let cfg = ToleranceConfig::default();
    let dir = tempfile::tempdir().unwrap();
    for c in catalog::full().unwrap() {
        let out = dir.path().join(format!("{}-cp.json", c.name()));
        let o = coact(&["crossed", "--emit", out.to_str().unwrap(), &example(&format!("{}.json", c.name()))]);
        assert_eq!(o.status.code(), Some(EXIT_OK), "{}", stderr(&o));

        let wb = parse(&std::fs::read_to_string(&out).unwrap()).unwrap().build(None).unwrap();
        let emitted = wb.coaction.unwrap();
        let cp = CrossedProduct::build(&c, &cfg).unwrap();
        let dual = cp.dual_coaction().unwrap();
        let (p, q) = (cp.carrier(), emitted.algebra());
        assert_eq!(p.dim(), q.dim());
        let mut worst: f64 = 0.0;
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                let (x, y) = (p.basis_element(i), p.basis_element(j));
                let d = coact_core::linalg::max_abs_diff(&p.mul(&x, &y), &q.mul(&x, &y));
                worst = worst.max(d);
            }
        }
        assert!(worst <= cfg.eq_tol, "{}: {worst}", c.name());
        assert!(p.involution_matrix().max_abs_diff(q.involution_matrix()) <= cfg.eq_tol);
        assert!(dual.rho().max_abs_diff(emitted.rho()) <= cfg.eq_tol, "{}", c.name());

        // the emitted file is itself a valid input
        assert_eq!(coact(&["crossed", out.to_str().unwrap()]).status.code(), Some(EXIT_OK));
    }
}
