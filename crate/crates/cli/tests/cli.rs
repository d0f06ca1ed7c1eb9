use std::path::Path;
use std::process::Command;

use bajra_cli::spec::{PerturbSpec, SplitKind, SplitSpec};
use bajra_cli::{FamilySpec, ReportDocument};
use proptest::prelude::*;
use tempfile::TempDir;

fn spec(gamma: f64, f: [f64; 4], g: [f64; 4]) -> FamilySpec {
    FamilySpec {
        gamma,
        f_coeffs: f,
        g_coeffs: g,
        domain: [-1.0, 1.0],
        split1: SplitSpec { kind: SplitKind::Exp, params: vec![0.5] },
        split2: SplitSpec { kind: SplitKind::Quadratic, params: vec![0.3] },
        grid: 17,
        perturb: None,
    }
}

fn tan_spec() -> FamilySpec {
    spec(-1.0, [1.0, 0.0, 0.0, 1.0], [1.0, 0.3, 0.2, 1.0])
}

fn write(dir: &TempDir, name: &str, spec: &FamilySpec) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, spec.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

fn bajra(args: &[&str]) -> (i32, ReportDocument, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bajra")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report: ReportDocument = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    assert_eq!(report.passed, report.derive_passed() && report.error.is_none());
    assert!(report.wall_time.is_finite());
    (out.status.code().unwrap(), report, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn identity_spec_is_invariant() {
    let dir = TempDir::new().unwrap();
    let id = FamilySpec {
        split1: SplitSpec { kind: SplitKind::Constant, params: vec![1.0] },
        split2: SplitSpec { kind: SplitKind::Constant, params: vec![1.0] },
        ..spec(0.0, [1.0, 0.0, 0.0, 1.0], [1.0, 0.0, 0.0, 1.0])
    };
    let (code, report, _) = bajra(&["verify-invariance", &write(&dir, "id.json", &id)]);
    assert_eq!(code, 0);
    assert!(report.residuals.max_invariance.unwrap() < 1e-13);
    assert_eq!(report.spec.as_ref(), Some(&id));
}

#[test]
fn tan_spec_is_invariant_and_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("r.csv");
    let path = write(&dir, "tan.json", &tan_spec());
    let (code, report, _) = bajra(&["verify-invariance", &path, "--grid", "9", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report.residuals.grid_size, 81);
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 82);
    assert!(rows.starts_with("x,y,residual"));
}

#[test]
fn tolerance_flag_is_echoed_and_enforced() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tan.json", &tan_spec());
    let (code, report, _) = bajra(&["verify-invariance", &path, "--tol", "0"]);
    assert_eq!(report.tolerances.invariance, 0.0);
    assert_eq!(code, if report.residuals.max_invariance == Some(0.0) { 0 } else { 1 });
}

#[test]
fn dependent_coefficients_exit_two() {
    let dir = TempDir::new().unwrap();
    let dep = spec(0.5, [1.0, 2.0, 0.5, 1.0], [1.0, 0.0, 0.0, 1.0]);
    let (code, report, stderr) = bajra(&["verify-invariance", &write(&dir, "dep.json", &dep)]);
    assert_eq!(code, 2);
    assert_eq!(report.error.unwrap().kind, "NotIndependent");
    assert!(stderr.contains("NotIndependent"));
}

#[test]
fn malformed_spec_exits_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"gamma": 1}"#).unwrap();
    let (code, report, _) = bajra(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report.error.unwrap().kind, "InvalidInput");
    let missing = Path::new("/nonexistent/spec.json").to_str().unwrap();
    assert_eq!(bajra(&["verify-invariance", missing]).0, 2);
}

#[test]
fn diagonal_checks() {
    let (code, report, _) = bajra(&["verify-diagonal", "--builtin", "arithmetic"]);
    assert_eq!(code, 0);
    let d = report.diagonal_checks.unwrap();
    assert!(d.max_discrepancy.iter().all(|&v| v < 1e-5) && d.points == 34);

    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tan.json", &tan_spec());
    let (code, report, _) = bajra(&["verify-diagonal", &path, "--system"]);
    assert_eq!(code, 0);
    assert!(report.diagonal_checks.unwrap().system.unwrap().iter().all(|&v| v < 1e-8));

    let (code, report, _) = bajra(&["verify-diagonal", &path, "--h", "1e-12"]);
    assert_eq!(code, 1);
    assert!(report.diagonal_checks.unwrap().max_discrepancy[3] > 1.0);
}

#[test]
fn classify_outcomes() {
    let dir = TempDir::new().unwrap();
    let (code, report, _) = bajra(&["classify", &write(&dir, "tan.json", &tan_spec())]);
    assert_eq!((code, report.verdict.as_str()), (0, "ConfirmedFamily"));
    assert!((report.classification.unwrap().gamma.unwrap() + 1.0).abs() < 1e-8);

    let weight = FamilySpec { perturb: Some(PerturbSpec { weight: "q1".into(), mu: 0.01 }), ..tan_spec() };
    let (code, report, _) = bajra(&["classify", &write(&dir, "w.json", &weight)]);
    assert_eq!((code, report.verdict.as_str()), (1, "NecessaryFail"));
    assert!(report.classification.unwrap().failed_conditions.contains(&"cond1".to_string()));

    let generator = FamilySpec { perturb: Some(PerturbSpec { weight: "f".into(), mu: 0.01 }), ..tan_spec() };
    let (code, report, _) = bajra(&["classify", &write(&dir, "f.json", &generator)]);
    assert_eq!(code, 1);
    assert!(report.classification.unwrap().failed_conditions.contains(&"cond3".to_string()));

    let (code, report, _) = bajra(&["classify", "--builtin", "arithmetic"]);
    assert_eq!(code, 0);
    assert_eq!(report.classification.unwrap().gamma, Some(0.0));
}

#[test]
fn recover_outcomes() {
    let (code, report, _) = bajra(&["recover", "--builtin", "tan", "--x0", "0", "--domain", "-0.5", "0.5"]);
    assert_eq!(code, 0);
    let r = report.recovery.unwrap();
    assert!((r.gamma.unwrap() + 1.0).abs() < 1e-12);
    assert_eq!((r.u.unwrap(), r.v.unwrap()), ([1.0, 0.0], [0.0, 1.0]));

    let (code, report, _) = bajra(&["recover", "--builtin", "identity", "--x0", "0", "--domain", "-1", "1"]);
    assert_eq!((code, report.recovery.unwrap().gamma), (0, Some(0.0)));

    let (code, report, _) = bajra(&["recover", "--builtin", "mobius 2 1 1 3", "--x0", "0.25"]);
    assert_eq!(code, 0);
    assert!(report.recovery.unwrap().gamma.unwrap().abs() < 1e-8);

    let (code, report, _) = bajra(&["recover", "--builtin", "cubic", "--x0", "0", "--domain", "-1", "1"]);
    assert_eq!(code, 1);
    assert_eq!(report.error.unwrap().kind, "NonConstantSchwarzian");

    assert_eq!(bajra(&["recover", "--builtin", "tan", "--x0", "2", "--domain", "-1", "1"]).0, 2);
}

#[test]
fn sweep_is_reproducible_from_the_seed() {
    let run = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_bajra"))
            .args(["sweep", "--gammas", "-1,0.5", "--draws", "2", "--grid", "9"])
            .env("BAJRA_SEED", seed)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_slice::<ReportDocument>(&out.stdout).unwrap()
    };
    let (a, b) = (run("42"), run("42"));
    assert_eq!(a.sweep.as_ref().unwrap().seed, 42);
    assert_eq!(a.residuals.max_invariance, b.residuals.max_invariance);
    assert_eq!(a.sweep.unwrap().families, 4);
}

#[test]
fn report_can_go_to_a_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_bajra"))
        .args(["classify", "--builtin", "tan-cos", "--out", out.to_str().unwrap()])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: ReportDocument = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report.verdict, "ConfirmedFamily");
}

fn split_strategy() -> impl Strategy<Value = SplitSpec> {
    (prop_oneof![Just(SplitKind::Constant), Just(SplitKind::Exp), Just(SplitKind::Quadratic)], 0.1f64..2.0)
        .prop_map(|(kind, p)| SplitSpec { kind, params: vec![p] })
}

proptest! {
    #[test]
    fn spec_round_trip(
        gamma in -3.0f64..3.0,
        f in prop::array::uniform4(-2.0f64..2.0),
        g in prop::array::uniform4(-2.0f64..2.0),
        lo in -2.0f64..0.0,
        width in 0.1f64..3.0,
        split1 in split_strategy(),
        split2 in split_strategy(),
        grid in 2usize..100,
        perturb in prop::option::of((prop::sample::select(vec!["p1", "p2", "q1", "q2", "f", "g"]), -1.0f64..1.0)),
    ) {
        let s = FamilySpec {
            gamma, f_coeffs: f, g_coeffs: g, domain: [lo, lo + width], split1, split2, grid,
            perturb: perturb.map(|(w, mu)| PerturbSpec { weight: w.to_string(), mu }),
        };
        let back = FamilySpec::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_json(), s.to_json());
    }
}

#[test]
fn grid_defaults_when_absent() {
    let text = r#"{"gamma":0,"f_coeffs":[1,0,0,1],"g_coeffs":[1,0,0,1],"domain":[-1,1],
        "split1":{"kind":"constant","params":[1]},"split2":{"kind":"exp","params":[0.2]}}"#;
    assert_eq!(FamilySpec::from_json(text).unwrap().grid, 33);
    assert!(FamilySpec::from_json(&text.replace("exp", "cosh")).is_err());
}
