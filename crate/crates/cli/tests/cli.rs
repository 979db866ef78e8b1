use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn specfact(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_specfact"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("stdout is JSON lines"))
        .collect()
}

fn write_grid(dir: &tempfile::TempDir, name: &str, values: &[f64]) -> String {
    let path = dir.path().join(name);
    let body = serde_json::json!({ "n": values.len(), "values": values });
    std::fs::write(&path, body.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

fn smooth(n: usize, scale: f64, shift: f64) -> Vec<f64> {
    (0..n)
        .map(|j| {
            let t = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            scale * (0.5 * (t + shift).cos() + 0.2 * (2.0 * t).sin()).exp()
        })
        .collect()
}

#[test]
fn constant_density_has_constant_factor() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_grid(&dir, "c.json", &[4.0; 1024]);
    for method in ["boundary", "herglotz"] {
        let out = specfact(&["factorize", &path, "--method", method], None);
        assert_eq!(out.status.code(), Some(0), "{method}");
        let v = &json_lines(&out)[0];
        let a = v["factor"]["a"].as_array().unwrap();
        assert!((a[0][0].as_f64().unwrap() - 2.0).abs() < 1e-9);
        assert!(a.iter().skip(1).all(|c| c[0].as_f64().unwrap().abs() < 1e-9));
        assert_eq!(v["outer_check"]["pass"], Value::Bool(true));
    }
}

#[test]
fn fejer_riesz_from_stdin_series() {
    let series = r#"{"coeffs": {"0": [1.25, 0], "1": [-0.5, 0], "-1": [-0.5, 0]}}"#;
    let out = specfact(&["factorize", "--method", "fejer-riesz"], Some(series));
    assert_eq!(out.status.code(), Some(0));
    let a = json_lines(&out)[0]["factor"]["a"].clone();
    let a: Vec<[f64; 2]> = serde_json::from_value(a).unwrap();
    assert_eq!(a.len(), 2);
    assert!((a[0][0] - 1.0).abs() < 1e-12 && (a[1][0] + 0.5).abs() < 1e-12);
}

#[test]
fn csv_input_is_accepted() {
    let csv = "theta_index,value\n".to_string() + &"9\n".repeat(8);
    let out = specfact(&["factorize"], Some(&csv));
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert!((v["factor"]["a"][0][0].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let mut values = vec![1.0; 256];
    values[40] = 0.0;
    let zero = write_grid(&dir, "z.json", &values);
    assert_eq!(specfact(&["factorize", &zero], None).status.code(), Some(3));
    // The floored density is not smooth, so the outer check may fail (1) but
    // the sample is no longer a domain error.
    let floored = specfact(&["factorize", &zero, "--floor", "1e-3"], None);
    assert!(matches!(floored.status.code(), Some(0 | 1)));
    assert_eq!(json_lines(&floored)[0]["floored_samples"], Value::from(1));
    assert_eq!(specfact(&["factorize"], Some("{not json")).status.code(), Some(2));
    let odd = write_grid(&dir, "o.json", &[1.0; 12]);
    assert_eq!(specfact(&["factorize", &odd], None).status.code(), Some(2));
    let out = specfact(&["counterexample", "--n", "50"], None);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stderr.is_empty());
}

#[test]
fn counterexample_rows() {
    let out = specfact(&["counterexample", "--n", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    let row = &json_lines(&out)[0];
    assert!((row["log_l1_diff"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let out = specfact(&["counterexample", "--sweep", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 4);
    let lower: Vec<f64> = rows.iter().map(|r| r["h2_lower"].as_f64().unwrap()).collect();
    assert!(lower.windows(2).all(|w| w[1] > w[0]));
    for r in &rows {
        for key in ["n", "l1_diff", "log_l1_diff", "h2_lower", "h2_identity", "budget"] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }

    let out = specfact(&["counterexample", "--sweep", "7"], None);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_lines(&out).len(), 5);
}

#[test]
fn constants_match_known_values() {
    let out = specfact(&["constants"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    let k = v["K"].as_f64().unwrap();
    let k0 = v["K0"].as_f64().unwrap();
    assert!((k - 1.347).abs() < 5e-4);
    assert!(k0 < 1.25);
    assert!((v["C_inf"].as_f64().unwrap() - 2.0 * k0).abs() < 1e-15);
    assert!((v["C2"].as_f64().unwrap() - 4.0 * k0.sqrt()).abs() < 1e-12);
}

#[test]
fn equal_pair_passes_with_slack_equal_to_rhs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_grid(&dir, "f.json", &smooth(256, 1.0, 0.0));
    for check in ["thm2", "cor-p", "main", "identity"] {
        let out = specfact(&["bounds", &f, &f, "--check", check], None);
        assert_eq!(out.status.code(), Some(0), "{check}");
        let v = &json_lines(&out)[0];
        let lhs = v["lhs"].as_f64().unwrap();
        assert!(lhs.abs() < 1e-20, "{check}");
        if check != "identity" {
            assert!((v["slack"].as_f64().unwrap() - v["rhs"].as_f64().unwrap()).abs() < 1e-15);
        }
    }
}

#[test]
fn scaling_pair_has_closed_form_details() {
    let dir = tempfile::tempdir().unwrap();
    let values = smooth(256, 1.0, 0.3);
    let doubled: Vec<f64> = values.iter().map(|v| 2.0 * v).collect();
    let f = write_grid(&dir, "f.json", &values);
    let g = write_grid(&dir, "g.json", &doubled);
    let out = specfact(&["bounds", &f, &g, "--check", "thm2"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    // g+ = sqrt 2 f+, so ||f+ - g+||^2 = (sqrt 2 - 1)^2 ||f||_1.
    let f_l1: f64 = values.iter().sum::<f64>() * 2.0 * std::f64::consts::PI / 256.0;
    let expected = (2f64.sqrt() - 1.0).powi(2) * f_l1;
    assert!((v["lhs"].as_f64().unwrap() - expected).abs() < 1e-9 * expected);
    assert!((v["details"]["l1_diff"].as_f64().unwrap() - f_l1).abs() < 1e-9 * f_l1);
    let log_l1 = v["details"]["log_l1_diff"].as_f64().unwrap();
    assert!((log_l1 - 2.0 * std::f64::consts::PI * 2f64.ln()).abs() < 1e-9);
}

#[test]
fn identity_on_smooth_pair() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_grid(&dir, "f.json", &smooth(512, 1.0, 0.0));
    let g = write_grid(&dir, "g.json", &smooth(512, 1.7, 1.1));
    let out = specfact(&["bounds", &f, &g, "--check", "identity"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert!(v["details"]["rel_error"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn inline_phi_and_single_function_checks() {
    let dir = tempfile::tempdir().unwrap();
    let psi: Vec<f64> = smooth(256, 1.0, 0.0).iter().map(|v| v.ln()).collect();
    let p = write_grid(&dir, "psi.json", &psi);
    let phi = r#"{"kind": "power", "q": 3}"#;
    for check in ["lemma-orl", "lemma-l1", "lemma-g", "weak11"] {
        let out = specfact(&["bounds", &p, "--check", check, "--phi", phi], None);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }
    let out = specfact(&["bounds", &p, "--check", "lemma-orl", "--phi", "{\"kind\": \"cubic\"}"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweeps_are_deterministic_across_job_counts() {
    let one = specfact(&["sweep", "--check", "thm2", "--trials", "12", "--seed", "5", "--n", "256"], None);
    let four = specfact(
        &["sweep", "--check", "thm2", "--trials", "12", "--seed", "5", "--n", "256", "--jobs", "4"],
        None,
    );
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v = &json_lines(&one)[0];
    assert_eq!(v["passed"], Value::from(12));
}
