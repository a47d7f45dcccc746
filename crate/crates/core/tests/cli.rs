use std::io::Write;
use std::process::Command;

use nullgrid_core::counting::{count_nonzeros, CountDomain};
use nullgrid_core::grid::GridInput;
use nullgrid_core::nullsatz::{Clause, NullCertificate};
use nullgrid_core::parse::parse_polynomial;
use nullgrid_core::scalar::Field;
use serde_json::Value;
use tempfile::NamedTempFile;

const ROOTS5_GF11: &str = r#"{"field":{"kind":"gfp","p":11},"X":[[1,3,4,5,9],[1,3,4,5,9]]}"#;
const PUNCTURED_Q: &str = r#"{"field":{"kind":"q"},"X":[[0,1,2,3,4],[0,1,2,3,4]],"Y":[[0,1],[0]]}"#;
const CNV_POLY: &str = "x1^2*x2^3 + x1^6*x2^6";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn nullgrid(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_nullgrid"))
        .args(args)
        .env("NULLGRID_THREADS", "2")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn grid_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn assert_reparses(text: &str, field: Field, n: usize) {
    let p = parse_polynomial(text, field, n).unwrap();
    assert_eq!(p.to_string(), text);
    assert_eq!(parse_polynomial(&p.to_string(), field, n).unwrap(), p);
}

#[test]
fn check_cnv_accepts_with_witness() {
    let grid = grid_file(ROOTS5_GF11);
    let run = nullgrid(&[
        "check",
        "--theorem",
        "cnv",
        "--grid",
        path(&grid),
        "--poly",
        CNV_POLY,
        "--alpha",
        "2,3",
        "--lambda",
        "4,4",
        "--witness",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = run.json();
    assert_eq!(v["accepted"], true);
    assert_eq!(v["witness"], serde_json::json!(["1", "1"]));
    assert_eq!(v["justifications"][0]["var"], 1);
    assert_eq!(v["justifications"][0]["clause"]["kind"], "size-to-lambda");

    let cert = NullCertificate::from_json(&run.stdout).unwrap();
    let f = parse_polynomial(CNV_POLY, Field::prime(11).unwrap(), 2).unwrap();
    assert!(cert.revalidate(&f));
    let mut tampered = cert.clone();
    tampered.justifications[0].clause = Clause::BelowAlpha;
    assert!(!tampered.revalidate(&f));
}

#[test]
fn check_rejection_exits_three() {
    let grid = grid_file(ROOTS5_GF11);
    for mode in ["schauz", "lason"] {
        let run = nullgrid(&[
            "check",
            "--theorem",
            "cnv",
            "--mode",
            mode,
            "--grid",
            path(&grid),
            "--poly",
            CNV_POLY,
            "--alpha",
            "2,3",
            "--lambda",
            "4,4",
        ]);
        assert_eq!(run.code, 3, "{mode}");
        let cert = NullCertificate::from_json(&run.stdout).unwrap();
        assert!(!cert.accepted);
        assert_eq!(cert.uncovered.len(), 1);
    }
    let run = nullgrid(&[
        "check",
        "--theorem",
        "nica-mult",
        "--grid",
        path(&grid),
        "--poly",
        CNV_POLY,
        "--alpha",
        "2,3",
        "--lambda",
        "4",
    ]);
    assert_eq!(run.code, 3);
}

#[test]
fn check_preconditions_exit_two_with_json_error() {
    let grid = grid_file(ROOTS5_GF11);
    let run = nullgrid(&[
        "check",
        "--theorem",
        "cnv",
        "--grid",
        path(&grid),
        "--poly",
        CNV_POLY,
        "--alpha",
        "1,1",
        "--lambda",
        "4,4",
    ]);
    assert_eq!(run.code, 2);
    let err: Value = serde_json::from_str(run.stderr.trim()).unwrap();
    assert_eq!(err["error"], "alpha-not-in-support");

    let run = nullgrid(&[
        "check",
        "--theorem",
        "cnv",
        "--grid",
        path(&grid),
        "--poly",
        CNV_POLY,
        "--alpha",
        "2,3",
        "--lambda",
        "5,5",
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("edge-not-null"));

    let run = nullgrid(&[
        "check",
        "--theorem",
        "cnv",
        "--grid",
        "/nonexistent.json",
        "--poly",
        "x1",
        "--alpha",
        "1,0",
    ]);
    assert_eq!(run.code, 2);
    assert!(nullgrid(&["no-such-command"]).code == 2);
}

#[test]
fn punctured_check_and_witness() {
    let grid = grid_file(r#"{"field":{"kind":"gfp","p":5},"X":[[0,1,2],[0,1,2]],"Y":[[0],[0]]}"#);
    let run = nullgrid(&[
        "check",
        "--theorem",
        "ballcn2",
        "--grid",
        path(&grid),
        "--poly",
        "x1*x2 + x1 + x2^2",
        "--alpha",
        "1,1",
        "--lambda",
        "0,0",
        "--witness",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = run.json();
    assert_eq!(v["witness"], serde_json::json!(["0", "1"]));
    assert!(NullCertificate::from_json(&run.stdout).is_ok());
}

#[test]
fn divide_worked_example() {
    let run = nullgrid(&[
        "divide",
        "--poly",
        "2*x1^2*x2 + x1",
        "--divisors",
        "x1*x2;x1^2",
        "--order",
        "grlex",
    ]);
    assert_eq!(run.code, 0);
    let v = run.json();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["coefficient"], "2");
    assert_eq!(steps[0]["shift"], serde_json::json!([1, 0]));
    assert_eq!(steps[0]["divisor"], 1);
    assert_eq!(v["remainder"], "x1");
    assert_eq!(v["natural"], true);

    let human = nullgrid(&[
        "divide",
        "--poly",
        "2*x1^2*x2 + x1",
        "--divisors",
        "x1*x2;x1^2",
        "--format",
        "human",
    ]);
    assert!(human.stdout.contains("remainder: x1"));
}

#[test]
fn printed_polynomials_reparse() {
    let q = Field::rationals();
    let run = nullgrid(&[
        "divide",
        "--poly",
        "x1^3*x2 - 1/2*x1*x2^2 + 3",
        "--divisors",
        "x1^2 - x2;x1*x2 - 1",
    ]);
    let v = run.json();
    for key in ["dividend", "remainder"] {
        assert_reparses(v[key].as_str().unwrap(), q, 2);
    }
    for key in ["divisors", "quotients"] {
        for p in v[key].as_array().unwrap() {
            assert_reparses(p.as_str().unwrap(), q, 2);
        }
    }
    let gf11 = Field::prime(11).unwrap();
    let grid = grid_file(ROOTS5_GF11);
    let run = nullgrid(&["groebner-verify", "--grid", path(&grid), "--basis", "power", "--t", "2"]);
    assert_eq!(run.code, 0);
    let v = run.json();
    assert_eq!(v["verified"], true);
    for p in v["generators"].as_array().unwrap() {
        assert_reparses(p.as_str().unwrap(), gf11, 2);
    }
}

#[test]
fn nullindex_and_lacunary() {
    let run = nullgrid(&["nullindex", "--edge", "1,3,4,5,9", "--field", "gfp:11"]);
    assert_eq!(run.code, 0);
    let v = run.json();
    assert_eq!(v["edges"][0]["max_null_index"], 4);
    assert_eq!(v["edges"][0]["vanishing"], "x1^5 + 10");

    let run = nullgrid(&["lacunary", "--poly", "x1^5*x2^5 - x1^5 - x2^5 + 1", "--lambda", "4,4"]);
    assert_eq!(run.json()["lacunary"], true);
    let run = nullgrid(&["lacunary", "--poly", "x1^2 + x1", "--lambda", "1"]);
    assert_eq!(run.json()["lacunary"], false);
}

#[test]
fn stable_reports_and_exit_codes() {
    let args = [
        "stable",
        "--poly",
        CNV_POLY,
        "--divisors",
        "x1^5 - 1;x2^5 - 1",
        "--lambda",
        "4,4",
        "--field",
        "gfp:11",
    ];
    let mut with_alpha = args.to_vec();
    with_alpha.extend(["--alpha", "2,3"]);
    let run = nullgrid(&with_alpha);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["stable"], true);

    let mut shaded = args.to_vec();
    shaded.extend(["--alpha", "6,6"]);
    let run = nullgrid(&shaded);
    assert_eq!(run.code, 3);
    assert_eq!(run.json()["violation"]["kind"], "leading-monomial-divides");
    assert_eq!(run.json()["violation"]["divisor"], 1);
}

#[test]
fn groebner_verify_rejects_non_basis() {
    let run = nullgrid(&["groebner-verify", "--gens", "x1^2 - x2;x1*x2 - 1"]);
    assert_eq!(run.code, 3);
    let run = nullgrid(&["groebner-verify", "--gens", "x1^2 - x2;x1*x2 - 1", "--complete"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn count_reports_exact_and_bounds() {
    let grid = grid_file(PUNCTURED_Q);
    let run = nullgrid(&["count", "--grid", path(&grid), "--poly", "x1*x2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = run.json();
    assert_eq!(v["exact"], 16);
    assert_eq!(v["boundA"], 13);
    assert_eq!(v["boundB"], 14);
    assert_eq!(v["empty"], false);
    assert!(v["A"].as_array().unwrap().contains(&serde_json::json!([3, 5])));
    assert_eq!(v["B"], serde_json::json!([[4, 4]]));
}

#[test]
fn sharp_output_attains_bound() {
    let grid = grid_file(PUNCTURED_Q);
    let run = nullgrid(&["sharp", "--grid", path(&grid), "--e", "1,1", "--format", "human"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let text = run.stdout.trim();
    let input = GridInput::from_json(PUNCTURED_Q).unwrap();
    let GridInput::Punctured(p) = input else { panic!() };
    let f = parse_polynomial(text, Field::rationals(), 2).unwrap();
    let json = nullgrid(&["sharp", "--grid", path(&grid), "--e", "1,1"]).json();
    assert_eq!(
        count_nonzeros(CountDomain::Punctured(&p), &f).unwrap(),
        json["expected"].as_u64().unwrap()
    );

    let run = nullgrid(&["sharp", "--grid", path(&grid), "--e", "4,0"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("infeasible-e"));
}

#[test]
fn selftest_subset() {
    let run = nullgrid(&["selftest", "--only", "1,6", "--format", "human"]);
    assert_eq!(run.code, 0);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
    assert_eq!(nullgrid(&["selftest", "--only", "0"]).code, 2);
}
