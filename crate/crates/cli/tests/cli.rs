use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphere-green")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Value column of a single-record CSV.
fn csv_value(out: &Output) -> f64 {
    let text = stdout(out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rec = rdr.records().next().unwrap().unwrap();
    rec[3].parse().unwrap()
}

#[test]
fn eval_three_sphere_at_equator() {
    let out = run(&["eval", "--n", "3", "--R", "1", "--theta", "1.5707963268"]);
    assert!(out.status.success());
    let v = csv_value(&out);
    assert!((v - 0.025_330_295_9).abs() < 1e-10, "{v}");
    assert!(stdout(&out).starts_with("n,R,theta,value,method,error_estimate\n"));
}

#[test]
fn eval_at_rounded_pi_is_zero() {
    let out = run(&["eval", "--n", "2", "--R", "1", "--theta", "3.1415926536"]);
    assert!(out.status.success());
    assert_eq!(csv_value(&out), 0.0);
}

#[test]
fn quadrature_matches_closed_form() {
    let closed = csv_value(&run(&["eval", "--n", "4", "--theta", "1.5707963268"]));
    let out = run(&["eval", "--n", "4", "--R", "1", "--theta", "1.5707963268", "--method", "quadrature"]);
    assert!(out.status.success());
    let quad = csv_value(&out);
    assert!((quad - closed).abs() <= 1e-8 * closed);
    let text = stdout(&out);
    assert!(text.contains(",quadrature,") && !text.trim_end().ends_with(','));
}

#[test]
fn degrees_flag_converts() {
    let rad = csv_value(&run(&["eval", "--n", "5", "--theta", "1.0471975511965976"]));
    let deg = csv_value(&run(&["eval", "--n", "5", "--theta", "60", "--degrees"]));
    assert!((rad - deg).abs() <= 1e-15 * rad);
}

#[test]
fn domain_errors_exit_with_two() {
    for args in [
        &["eval", "--n", "1", "--theta", "1"][..],
        &["eval", "--n", "3", "--theta", "4"],
        &["eval", "--n", "3", "--R", "-1", "--theta", "1"],
        &["eval", "--n", "3", "--theta", "1e-6", "--method", "quadrature"],
        &["table", "--n", "2", "--theta-min", "2", "--theta-max", "1", "--points", "5"],
        &["table", "--n", "2", "--theta-min", "0.5", "--theta-max", "1", "--points", "1"],
        &["reduce", "--a", "1/2", "--b", "1", "--c", "0"],
        &["reduce", "--a", "1/3", "--b", "1", "--c", "2"],
        &["fourier", "--theta", "1", "--theta-prime", "1", "--delta-phi", "0"],
        &["verify", "nothing"],
        &["eval", "--theta", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn table_csv_is_decreasing_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = run(&["table", "--n", "2", "--theta-min", "0.5", "--theta-max", "2.5", "--points", "5"]);
    assert!(out.status.success());
    fs::write(&path, &out.stdout).unwrap();
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    let values: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] > w[1]));
    // Re-evaluating each θ read back from the file reproduces the value exactly.
    for r in &rows {
        let again = csv_value(&run(&["eval", "--n", "2", "--theta", &r[2]]));
        assert_eq!(again, r[3].parse::<f64>().unwrap());
    }
}

#[test]
fn table_endpoints_and_json() {
    let out = run(&["table", "--n", "3", "--theta-min", "0.5", "--theta-max", "2.5", "--points", "2", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["theta"], 0.5);
    assert_eq!(rows[1]["theta"], 2.5);
    assert_eq!(rows[0]["n"], 3);
    assert!(rows[0]["error_estimate"].is_null());
}

#[test]
fn fourier_matches_law_of_cosines() {
    let (t, tp, dphi) = (std::f64::consts::FRAC_PI_2, 2.0 * std::f64::consts::PI / 3.0, 1.0f64);
    let out = run(&["fourier", "--theta", &t.to_string(), "--theta-prime", &tp.to_string(), "--delta-phi", "1", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cos_d = t.cos() * tp.cos() + t.sin() * tp.sin() * dphi.cos();
    let exact = -0.5 * ((1.0 - cos_d) / 2.0).ln();
    assert!((doc["two_pi_g2"].as_f64().unwrap() - exact).abs() < 1e-9);
    assert_eq!(doc["converged"], true);
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms[0]["k"], 0);
    assert_eq!(terms.len() as u64, doc["terms_used"].as_u64().unwrap() + 1);
}

#[test]
fn fourier_near_the_antipode_of_the_pole_is_the_leading_term() {
    let out = run(&["fourier", "--theta", "1", "--theta-prime", "3.141592652589793", "--delta-phi", "0.4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let leading: f64 = rows[0][1].parse().unwrap();
    let total: f64 = rows.last().unwrap()[2].parse().unwrap();
    assert!((total - leading).abs() < 1e-8);
}

#[test]
fn fourier_alternating_series_stays_finite() {
    let out = run(&["fourier", "--theta", "1.0471975511965976", "--theta-prime", "1.0471975521965976", "--delta-phi", "3.141592653589793"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("max terms reached"));
}

#[test]
fn reduce_examples() {
    let out = run(&["reduce", "--a", "1/2", "--b", "1", "--c", "3/2", "--z", "0.25"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("sum( (1)/(1) * ATANH_OVER_SQRT_Z )\n"));
    assert!(text.contains("reduced = 1.09861228866810"));

    let out = run(&["reduce", "--a", "1/2", "--b", "1/2", "--c", "1"]);
    assert_eq!(stdout(&out), "sum( (1)/(1) * KHAT )\n");

    let out = run(&["reduce", "--a", "-2", "--b", "1", "--c", "2", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["case"], 1);
    assert_eq!(doc["form"], "sum( (z^2 - 3*z + 3)/(3) * ONE )");

    let out = run(&["reduce", "--a", "-3", "--b", "3.5", "--c", "5/2", "--z", "0.6"]);
    assert!(out.status.success());
}

#[test]
fn verify_single_suite_passes() {
    let out = run(&["verify", "pde"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().starts_with("PASS   pde"));
}
