use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use framekit_cli::commands::{
    AnalyzeResults, ApproxResults, FamilyResults, OrthogonalizeResults, VerifyResults, CSV_HEADER,
};
use framekit_cli::report::to_json;
use framekit_cli::Report;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn framekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framekit"))
        .args(args)
        .env_remove("FRAMEKIT_TOL_RANK")
        .env_remove("FRAMEKIT_TOL_EQ")
        .output()
        .unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout {} stderr {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn results<T: DeserializeOwned>(r: &Report) -> T {
    serde_json::from_value(r.results.clone()).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

/// Parse, re-encode through the typed payload, compare bytes.
fn assert_round_trip<T: DeserializeOwned + Serialize>(out: &Output) {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut r = report(out);
    let typed: T = results(&r);
    r.results = serde_json::to_value(&typed).unwrap();
    assert_eq!(to_json(&r), text);
}

#[test]
fn analyze_orthonormal_basis() {
    let out = framekit(&["analyze", &data("onb.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.schema, "framekit/1");
    assert_eq!(r.command, "analyze");
    assert!(r.input_digest.starts_with("sha256:"));
    let a: AnalyzeResults = results(&r);
    assert!((a.bounds.lower - 1.0).abs() < 1e-12 && (a.bounds.upper - 1.0).abs() < 1e-12);
    assert!(a.classification.is_normalized_tight);
    assert_round_trip::<AnalyzeResults>(&out);
}

#[test]
fn analyze_even_odd_family() {
    let out = framekit(&["analyze", "--family", "even-odd", "--size", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let a: AnalyzeResults = results(&report(&out));
    assert!(a.classification.is_normalized_tight);
    assert_eq!(a.classification.kernel_dim, 3);
}

#[test]
fn ragged_file_names_the_row() {
    let out = framekit(&["analyze", &data("ragged.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["kind"], "parse");
    assert!(err["error"]["message"].as_str().unwrap().contains("row 1"));
    assert!(out.stdout.is_empty());
}

#[test]
fn zero_frame_is_a_validation_error() {
    let out = framekit(&["analyze", &data("zero.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "zero_frame");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["approx"],
        vec!["approx", "--family", "even-odd"],
        vec!["approx", "--family", "nope", "--size", "4"],
        vec!["approx", "--family", "shift-weighted", "--size", "4"],
        vec!["family", "--family", "even-odd", "--sizes", "10,4"],
        vec!["frobnicate"],
    ] {
        let out = framekit(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_json(&out)["schema"], "framekit/1");
    }
    let out = framekit(&["approx", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "read_input");
}

#[test]
fn approx_two_ones() {
    let out = framekit(&["approx", &data("two_ones.json")]);
    assert_eq!(out.status.code(), Some(0));
    let a: ApproxResults = results(&report(&out));
    let expected = 3.0 - 2.0 * 2f64.sqrt();
    assert!((a.distance - expected).abs() < 1e-12);
    assert!((a.distance_via_identity - expected).abs() < 1e-12);
    assert!((a.distance_via_projection - expected).abs() < 1e-12);
    for v in a.nu["vectors"].as_array().unwrap() {
        assert!((v[0].as_f64().unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }
    assert_round_trip::<ApproxResults>(&out);
}

#[test]
fn approx_orthonormal_is_zero() {
    let a: ApproxResults = results(&report(&framekit(&["approx", &data("onb.json")])));
    assert!(a.distance < 1e-24);
}

#[test]
fn approx_geometric_kernel_golden() {
    let out = framekit(&["approx", "--family", "geometric-kernel", "--size", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let a: ApproxResults = results(&report(&out));
    assert!(a.distance.is_finite() && a.hs_i_minus_abs_f.is_finite());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"hs_I_minus_absF\""));
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/approx_geometric_kernel_40.json");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&golden, &out.stdout).unwrap();
    }
    let expected = fs::read_to_string(&golden).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn orthogonalize_independent_pair() {
    let out = framekit(&["orthogonalize", &data("pair.json")]);
    assert_eq!(out.status.code(), Some(0));
    let o: OrthogonalizeResults = results(&report(&out));
    assert!(o.exists && o.unique);
    assert!(o.gram_residual.unwrap() < 1e-12);
    assert!((o.distance.unwrap() - (5.0 - 2.0 * 5f64.sqrt())).abs() < 1e-12);
    assert_round_trip::<OrthogonalizeResults>(&out);
}

#[test]
fn orthogonalize_rank_one_in_c2() {
    let out = framekit(&["orthogonalize", &data("rank_one_c2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let o: OrthogonalizeResults = results(&report(&out));
    assert!(o.exists && !o.unique);
    assert_eq!((o.kernel_dim, o.cokernel_dim), (1, 1));
    let v: f64 = o.extension.iter().flatten().map(|z| z[0] * z[0] + z[1] * z[1]).sum();
    assert!((v - 1.0).abs() < 1e-12, "V is an isometry on a line");
}

#[test]
fn orthogonalize_with_explicit_cokernel() {
    let out = framekit(&["orthogonalize", &data("rank_one_c2.json"), "--cokernel", &data("cokernel_c2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let o: OrthogonalizeResults = results(&report(&out));
    assert_eq!(o.cokernel, "explicit");
    assert!(o.exists);
    let bad = framekit(&["orthogonalize", &data("rank_one_c2.json"), "--cokernel", &data("bad_cokernel_c2.json")]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(stderr_json(&bad)["error"]["kind"], "bad_cokernel");
}

#[test]
fn orthogonalize_rank_one_in_c1_exits_three() {
    let out = framekit(&["orthogonalize", &data("two_ones.json")]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr_json(&out);
    assert_eq!(err["error"]["reason"], "cokernel too small");
    let o: OrthogonalizeResults = results(&report(&out));
    assert!(!o.exists);
    assert_eq!(o.reason.as_deref(), Some("cokernel too small"));
}

#[test]
fn verify_random_frame() {
    let out = framekit(&["verify", &data("random_3x5.json"), "--trials", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.seed, Some(0));
    let v: VerifyResults = results(&r);
    assert_eq!(v.violations, 0);
    assert_eq!(v.tight.trials, 1000);
    assert!(v.orthonormal.is_none());
    assert_round_trip::<VerifyResults>(&out);

    let tall = framekit(&["verify", &data("pair.json"), "--trials", "200", "--seed", "7"]);
    assert_eq!(tall.status.code(), Some(0));
    let v: VerifyResults = results(&report(&tall));
    assert_eq!(v.orthonormal.unwrap().violations, 0);
}

#[test]
fn verify_normalized_tight_has_zero_baseline() {
    let v: VerifyResults = results(&report(&framekit(&["verify", &data("onb.json"), "--trials", "100"])));
    assert!(v.tight.baseline < 1e-24);
}

#[test]
fn verify_is_byte_identical_for_equal_seeds() {
    let a = framekit(&["verify", &data("random_3x5.json"), "--trials", "300", "--seed", "42"]);
    let b = framekit(&["verify", &data("random_3x5.json"), "--trials", "300", "--seed", "42"]);
    let c = framekit(&["verify", &data("random_3x5.json"), "--trials", "300", "--seed", "43"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn family_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("gk.csv");
    let out_path = dir.path().join("gk.json");
    let out = framekit(&[
        "family",
        "--family",
        "geometric-kernel",
        "--sizes",
        "10,20,40,60",
        "--csv",
        csv_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    let last: Vec<&str> = lines.last().unwrap().split(',').collect();
    assert_eq!(last[0], "60");
    let hs_gram: f64 = last[6].parse().unwrap();
    assert!((hs_gram - 2f64.sqrt()).abs() < 1e-6);

    let r: Report = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let f: FamilyResults = results(&r);
    assert_eq!(f.diagnostics.len(), 4);
    let witness = f.kernel_witness.unwrap();
    assert!(witness.windows(2).all(|w| w[1].residual < w[0].residual));
}

#[test]
fn family_series_trends() {
    let sw: FamilyResults = results(&report(&framekit(&[
        "family", "--family", "shift-weighted", "--alpha", "2.0", "--sizes", "10,40",
    ])));
    assert!(sw.diagnostics[1].hs_i_minus_abs_f > sw.diagnostics[0].hs_i_minus_abs_f);
    let spike: FamilyResults = results(&report(&framekit(&["family", "--family", "sum-spike", "--sizes", "4,16,64"])));
    let norms: Vec<f64> = spike.diagnostics.iter().map(|d| d.operator_norm).collect();
    assert!(norms.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn tolerance_flags_and_env() {
    let with_env = |env: &[(&str, &str)], extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_framekit"));
        cmd.args(["analyze", &data("onb.json")]).args(extra);
        cmd.env_remove("FRAMEKIT_TOL_RANK").env_remove("FRAMEKIT_TOL_EQ");
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    };
    let r = report(&with_env(&[("FRAMEKIT_TOL_EQ", "1e-6")], &[]));
    assert_eq!(r.tolerances.eq_abs_tol, 1e-6);
    assert_eq!(r.tolerances.rank_rel_tol, 1e-10);
    let r = report(&with_env(&[("FRAMEKIT_TOL_EQ", "1e-6"), ("FRAMEKIT_TOL_RANK", "1e-8")], &["--tol-eq", "1e-7"]));
    assert_eq!(r.tolerances.eq_abs_tol, 1e-7);
    assert_eq!(r.tolerances.rank_rel_tol, 1e-8);
    let bad = with_env(&[], &["--tol-rank", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(stderr_json(&bad)["error"]["kind"], "invalid_tolerance");
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = framekit(&["approx", &data("pair.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = framekit(&["approx", &data("pair.json")]).stdout;
    assert_eq!(fs::read(&path).unwrap(), stdout);
}
