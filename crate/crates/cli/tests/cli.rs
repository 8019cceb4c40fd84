//! End-to-end tests of the `tricap` binary: exit codes, JSON report
//! schema, figure exports, and the verification table.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tricap"))
        .args(args)
        .output()
        .expect("binary should run");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "stderr: {stderr}");
    serde_json::from_str(&stdout).expect("stdout should be a JSON document")
}

fn f(value: &serde_json::Value) -> f64 {
    value.as_f64().expect("field should be a number")
}

#[test]
fn center_on_the_scalene_preset() {
    let v = json(&["center", "--preset", "6-9-13"]);
    assert_eq!(v["backend"], "sc");
    assert_eq!(v["query"], "center");
    assert!((f(&v["point"][0]) - 0.929617).abs() < 1e-4);
    assert!((f(&v["point"][1]) - 1.842564).abs() < 1e-4);
    assert!((f(&v["inner_radius"]) - 1.979479).abs() < 1e-4);
    let bary_sum: f64 = (0..3).map(|k| f(&v["barycentric"][k])).sum();
    assert!((bary_sum - 1.0).abs() < 1e-12);
    assert!(f(&v["distance_to_shortest_side"]) > 0.0);
    assert!(f(&v["evals"]) >= 1.0);

    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "backend",
            "barycentric",
            "distance_to_shortest_side",
            "evals",
            "inner_radius",
            "point",
            "query",
            "tolerance_achieved",
            "triangle"
        ]
    );
}

#[test]
fn center_on_the_iso_right_preset() {
    let v = json(&["center", "--preset", "iso-right"]);
    assert_eq!(v["backend"], "sigma");
    assert!((f(&v["point"][0]) - 0.301_121_610_841_322_1).abs() < 1e-9);
    assert!((f(&v["point"][1]) - 0.301_121_610_841_322_1).abs() < 1e-9);
}

#[test]
fn center_with_explicit_vertices_and_forced_backend() {
    let v = json(&["center", "0,0", "1,0", "0,1", "--backend", "sc"]);
    assert_eq!(v["backend"], "sc");
    assert!((f(&v["point"][0]) - 0.301_121_6).abs() < 1e-6);
    assert!((f(&v["point"][1]) - 0.301_121_6).abs() < 1e-6);
}

#[test]
fn radius_at_the_centroid_of_the_scalene_preset() {
    let v = json(&[
        "radius",
        "--preset",
        "6-9-13",
        "--at",
        "0.5555555555555556,2.6293687924887182",
    ]);
    assert_eq!(v["query"], "radius");
    assert!((f(&v["inner_radius"]) - 1.802_305).abs() < 1e-5);
}

#[test]
fn radius_near_the_iso_right_center() {
    let v = json(&["radius", "--preset", "iso-right", "--at", "0.3011216,0.3011216"]);
    assert!((f(&v["inner_radius"]) - 0.334_616_1).abs() < 1e-6);
}

#[test]
fn exterior_query_is_a_domain_error() {
    let (code, _, stderr) = run(&["radius", "--preset", "iso-right", "--at", "2,2"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("not interior"), "stderr: {stderr}");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let (code, _, _) = run(&["center"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["nonsense"]);
    assert_eq!(code, 1);
    let (code, _, stderr) = run(&["radius", "--preset", "iso-right", "--at", "0.3;0.3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("x,y"), "stderr: {stderr}");
}

#[test]
fn strict_tolerance_requests_best_effort_status() {
    let (code, stdout, _) = run(&["center", "--preset", "iso-right", "--tol", "1e-30"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(f(&v["tolerance_achieved"]) > 1e-30);
}

#[test]
fn figure_csv_covers_the_requested_curves() {
    let (code, stdout, stderr) = run(&["figure", "--preset", "iso-right"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("curve_type,curve_id,sample_index,x,y"));

    let mut circles = 0usize;
    let mut rays = 0usize;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5, "line: {line}");
        let x: f64 = fields[3].parse().unwrap();
        let y: f64 = fields[4].parse().unwrap();
        // Every sample lies inside the unit right isosceles triangle.
        assert!(x >= -1e-9 && y >= -1e-9 && x + y <= 1.0 + 1e-9, "line: {line}");
        match fields[0] {
            "circle" => circles += 1,
            "ray" => rays += 1,
            other => panic!("unexpected curve type {other}"),
        }
        // Coordinates carry at least 16 significant digits.
        let mantissa = fields[3].split('e').next().unwrap();
        assert!(mantissa.chars().filter(char::is_ascii_digit).count() >= 16);
    }
    assert_eq!(circles, 10 * 512);
    assert_eq!(rays, 24 * 512);
}

#[test]
fn figure_svg_is_a_complete_drawing() {
    let (code, stdout, stderr) = run(&[
        "figure",
        "--preset",
        "iso-right",
        "--format",
        "svg",
        "--circles",
        "3",
        "--rays",
        "4",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.starts_with("<svg "));
    assert!(stdout.ends_with("</svg>\n"));
    assert_eq!(stdout.matches("<polygon ").count(), 4);
    assert_eq!(stdout.matches("<polyline ").count(), 4);
}

#[test]
fn figure_writes_the_output_file() {
    let path = std::env::temp_dir().join(format!("tricap-figure-{}.csv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let (code, stdout, stderr) = run(&[
        "figure",
        "--preset",
        "iso-right",
        "--circles",
        "2",
        "--rays",
        "2",
        "--out",
        path_str,
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("curve_type,curve_id,sample_index,x,y\n"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_runs_a_filtered_row() {
    let (code, stdout, stderr) = run(&["verify", "--only", "kober-kappa"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.contains("PASS kober-kappa"), "stdout: {stdout}");
    assert!(stdout.contains("1 of 1 rows pass"), "stdout: {stdout}");
}

#[test]
fn verify_floor_loosens_tolerances() {
    let (code, stdout, _) = run(&["verify", "--only", "sigma-g2", "--tol", "1e-3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("PASS sigma-g2"), "stdout: {stdout}");
    assert!(stdout.contains("1.0e-3"), "stdout: {stdout}");
}

#[test]
fn verify_rejects_an_unmatched_filter() {
    let (code, _, stderr) = run(&["verify", "--only", "zzz"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("no verification rows"), "stderr: {stderr}");
}

#[test]
fn help_documents_the_preset_normalization() {
    let (code, stdout, _) = run(&["center", "--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("30-60-90"));
    assert!(stdout.contains("units of k"), "stdout: {stdout}");
}
