//! End-to-end runs of the binary against the sample polygons.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_robinpoly"))
}

fn polygons() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../polygons")
}

fn out_dir(name: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&p);
    p
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn run_code(cmd: &mut Command, expected: i32) {
    let out = cmd.output().expect("binary runs");
    assert_eq!(
        out.status.code(),
        Some(expected),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn json_file(path: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("missing artifact {}: {}", path.display(), e));
    serde_json::from_str(&text).expect("artifact parses")
}

/// Smallest positive root of sqrt(mu) tan(sqrt(mu)/2) = beta; twice this is
/// the first eigenvalue of the unit square with that boundary parameter.
fn square_oracle(beta: f64) -> f64 {
    let f = |mu: f64| mu.sqrt() * (mu.sqrt() / 2.0).tan() - beta;
    let (mut lo, mut hi) = (1e-14, std::f64::consts::PI.powi(2) - 1e-12);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    2.0 * 0.5 * (lo + hi)
}

#[test]
fn eigs_square_matches_oracle() {
    let out = out_dir("eigs-square");
    run_ok(
        bin()
            .args(["eigs", "--beta", "1", "--k", "1", "--h", "0.25", "--levels", "3"])
            .arg("--polygon")
            .arg(polygons().join("unit_square.json"))
            .arg("--out")
            .arg(&out),
    );
    let report = json_file(&out.join("spectrum.json"));
    let lam1 = report["spectrum"]["eigenvalues"][0].as_f64().unwrap();
    let expected = square_oracle(1.0);
    assert!(
        (lam1 - expected).abs() / expected <= 1e-3,
        "lam1 {} vs oracle {}",
        lam1,
        expected
    );
    assert_eq!(report["gen_perimeter"].as_f64().unwrap(), 4.0);

    // convergence table: header comment, column header, one row per level
    let csv = std::fs::read_to_string(out.join("convergence.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# schema: eigs-convergence/1"));
    assert_eq!(lines[1], "level,h,lam_1");
    assert_eq!(lines.len(), 5);

    // run record lists every artifact
    let record = json_file(&out.join("run.json"));
    assert_eq!(record["command"], "eigs");
    assert_eq!(record["outputs"].as_array().unwrap().len(), 2);
}

#[test]
fn eigs_neumann_is_zero() {
    let out = out_dir("eigs-neumann");
    run_ok(
        bin()
            .args(["eigs", "--beta", "0", "--k", "1", "--h", "0.4", "--levels", "1"])
            .arg("--polygon")
            .arg(polygons().join("unit_square.json"))
            .arg("--out")
            .arg(&out),
    );
    let report = json_file(&out.join("spectrum.json"));
    let lam1 = report["spectrum"]["eigenvalues"][0].as_f64().unwrap();
    assert!(lam1.abs() <= 1e-10, "lam1 {}", lam1);
}

#[test]
fn eigs_slit_square_differs_and_reports_perimeter() {
    let out = out_dir("eigs-slit");
    run_ok(
        bin()
            .args(["eigs", "--beta", "1", "--k", "1", "--h", "0.25", "--levels", "2"])
            .arg("--polygon")
            .arg(polygons().join("slit_square.json"))
            .arg("--out")
            .arg(&out),
    );
    let report = json_file(&out.join("spectrum.json"));
    assert!((report["gen_perimeter"].as_f64().unwrap() - 4.6).abs() <= 1e-12);
    let slit_lam1 = report["spectrum"]["eigenvalues"][0].as_f64().unwrap();
    // the slit pushes the first eigenvalue well away from the square's
    assert!((slit_lam1 - square_oracle(1.0)).abs() > 0.3, "lam1 {}", slit_lam1);
}

#[test]
fn eigs_rejects_bad_polygon_file() {
    let out = out_dir("eigs-bad");
    std::fs::create_dir_all(&out).unwrap();
    let bad = out.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    run_code(
        bin()
            .args(["eigs", "--beta", "1"])
            .arg("--polygon")
            .arg(&bad)
            .arg("--out")
            .arg(&out),
        2,
    );
}

#[test]
fn cut_sweep_reports_negative_slope() {
    let out = out_dir("cut-sweep");
    run_ok(
        bin()
            .args([
                "cut-sweep",
                "--beta",
                "1",
                "--eps",
                "0.0625,0.03125",
                "--h",
                "0.3",
                "--levels",
                "2",
            ])
            .arg("--polygon")
            .arg(polygons().join("unit_square.json"))
            .arg("--out")
            .arg(&out),
    );
    let report = json_file(&out.join("cut_report.json"));
    assert!(report["slope_first"].as_f64().unwrap() < 0.0);
    assert_eq!(report["objective_decreased"], true);

    let csv = std::fs::read_to_string(out.join("cut_sweep.csv")).unwrap();
    assert_eq!(csv.lines().nth(1).unwrap(), "eps,lam_1,lam_2,dlam_1_per_eps,dlam_2_per_eps");
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn cut_sweep_requires_positive_beta() {
    let out = out_dir("cut-sweep-bad");
    run_code(
        bin()
            .args(["cut-sweep", "--beta", "-1", "--eps", "0.1"])
            .arg("--polygon")
            .arg(polygons().join("unit_square.json"))
            .arg("--out")
            .arg(&out),
        2,
    );
}

#[test]
fn converge_distances_decrease() {
    let out = out_dir("converge");
    run_ok(
        bin()
            .args([
                "converge",
                "--family",
                "shrinking_slit",
                "--steps",
                "3",
                "--beta",
                "-1",
                "--k",
                "1",
                "--h",
                "0.3",
                "--levels",
                "2",
                "--resolution",
                "0.02",
            ])
            .arg("--out")
            .arg(&out),
    );
    let report = json_file(&out.join("converge.json"));
    assert_eq!(report["distance_decreasing"], true);
    let csv = std::fs::read_to_string(out.join("converge.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn converge_rejects_unknown_family_and_few_steps() {
    run_code(
        bin().args(["converge", "--family", "spiral", "--steps", "3", "--beta", "1"]),
        2,
    );
    run_code(
        bin().args(["converge", "--family", "pacman", "--steps", "2", "--beta", "1"]),
        2,
    );
}

#[test]
fn optimize_is_deterministic_and_saturates() {
    let out_a = out_dir("optimize-a");
    let out_b = out_dir("optimize-b");
    let config = out_dir("optimize-config").join("config.json");
    std::fs::create_dir_all(config.parent().unwrap()).unwrap();
    std::fs::write(
        &config,
        r#"{
  "problem": {
    "N": 4,
    "beta": 1.0,
    "constraint": {"kind": "area", "bound": 1.0},
    "objective": {"objective": "first_eigenvalue"},
    "restarts": 2,
    "seed": 7,
    "mesh_h": 0.2,
    "max_iters": 30,
    "parameterization": "rectangle"
  }
}"#,
    )
    .unwrap();

    for out in [&out_a, &out_b] {
        run_ok(bin().arg("optimize").arg("--config").arg(&config).arg("--out").arg(out));
    }
    let hist_a = std::fs::read(out_a.join("history.csv")).unwrap();
    let hist_b = std::fs::read(out_b.join("history.csv")).unwrap();
    assert_eq!(hist_a, hist_b, "same config and seed must reproduce the history");

    let report = json_file(&out_a.join("result.json"));
    assert_eq!(report["saturated"], true);
    assert!(report["constraint_residual"].as_f64().unwrap().abs() <= 1e-8);
    assert!(out_a.join("best_polygon.json").exists());
}

#[test]
fn optimize_rejects_conflicting_beta() {
    let dir = out_dir("optimize-conflict");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("config.json");
    std::fs::write(
        &config,
        r#"{"problem": {"N": 4, "beta": 1.0,
            "constraint": {"kind": "area", "bound": 1.0},
            "objective": {"objective": "first_eigenvalue", "beta": 2.0},
            "restarts": 1, "seed": 0, "mesh_h": 0.2, "max_iters": 5}}"#,
    )
    .unwrap();
    run_code(bin().arg("optimize").arg("--config").arg(&config).arg("--out").arg(&dir), 2);
}

#[test]
fn detach_sweep_needs_a_crack() {
    let out = out_dir("detach-bad");
    run_code(
        bin()
            .args(["detach-sweep", "--eps", "0.1", "--beta", "1"])
            .arg("--polygon")
            .arg(polygons().join("unit_square.json"))
            .arg("--out")
            .arg(&out),
        2,
    );
}

#[test]
fn detach_sweep_shrinks_measures() {
    let out = out_dir("detach");
    run_ok(
        bin()
            .args([
                "detach-sweep",
                "--eps",
                "0.125,0.0625",
                "--beta",
                "1",
                "--k",
                "1",
                "--h",
                "0.25",
                "--levels",
                "2",
                "--resolution",
                "0.02",
            ])
            .arg("--polygon")
            .arg(polygons().join("slit_square.json"))
            .arg("--out")
            .arg(&out),
    );
    let report = json_file(&out.join("detach_report.json"));
    let base_area = report["base_area"].as_f64().unwrap();
    let base_per = report["base_gen_perimeter"].as_f64().unwrap();

    let csv = std::fs::read_to_string(out.join("detach_sweep.csv")).unwrap();
    for line in csv.lines().skip(2) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cols[2] <= base_area + 1e-12, "area grew: {}", line);
        assert!(cols[3] <= base_per + 1e-12, "perimeter grew: {}", line);
    }
}

#[test]
fn fill_compare_round_trip() {
    let out = out_dir("fill");
    run_ok(
        bin()
            .args(["fill-compare", "--beta", "-1", "--k", "1", "--h", "0.25", "--levels", "2"])
            .arg("--polygon")
            .arg(polygons().join("slit_square.json"))
            .arg("--out")
            .arg(&out),
    );
    let report = json_file(&out.join("fill_compare.json"));
    assert_eq!(report["monotone_ok"], true);
    assert!(report["per_filled"].as_f64().unwrap() <= report["per_original"].as_f64().unwrap());

    run_code(
        bin()
            .args(["fill-compare", "--beta", "1"])
            .arg("--polygon")
            .arg(polygons().join("slit_square.json"))
            .arg("--out")
            .arg(&out_dir("fill-bad")),
        2,
    );
}
