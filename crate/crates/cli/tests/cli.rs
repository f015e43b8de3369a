use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wrightlens"))
        .args(args)
        .env_remove("WRIGHTLENS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows (comment lines and the header dropped), split on commas.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn field(row: &[String], i: usize) -> f64 {
    row[i].parse().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn wright_values() {
    let out = run(&["wright", "--alpha", "0", "--beta", "1", "--z", "1+0i"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# params: command=wright"));
    let r = &rows(&text)[0];
    assert!((field(r, 0) - (std::f64::consts::E - 1.0)).abs() < 1e-10);
    assert_eq!(field(r, 1), 0.0);

    let r = &rows(&stdout(&run(&[
        "wright", "--alpha", "1", "--beta", "1", "--z", "1",
    ])))[0];
    assert!((field(r, 0) - 1.2795853023360673).abs() < 1e-7);
}

#[test]
fn wright_rejects_alpha_below_minus_one() {
    let out = run(&["wright", "--alpha", "-2", "--beta", "1", "--z", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_complex_is_a_parameter_error() {
    assert_eq!(run(&["wright", "--z", "1+2j"]).status.code(), Some(2));
}

#[test]
fn phi_table_rows() {
    let text = stdout(&run(&[
        "phi-table",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--n-max",
        "4",
    ]));
    let r = rows(&text);
    assert_eq!(r.len(), 4);
    assert!((field(&r[2], 1) - 1.0 / 36.0).abs() < 1e-15);
    assert_eq!(
        run(&[
            "phi-table",
            "--alpha",
            "-0.5",
            "--beta",
            "1",
            "--n-max",
            "4"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn bounds_table() {
    let out = run(&[
        "bounds", "--theta", "0", "--lambda", "0", "--gamma", "2", "--alpha", "0", "--beta", "1",
        "--n-max", "3",
    ]);
    assert!(out.status.success());
    let r = rows(&stdout(&out));
    for (row, expected) in r.iter().zip([3.0, 16.0, 108.0]) {
        assert!((field(row, 1) - expected).abs() < 1e-9 * expected);
        assert!((field(row, 2) - expected).abs() < 1e-9 * expected);
        assert!(field(row, 3) < 1e-9);
    }
    assert_eq!(run(&["bounds", "--lambda", "0.6"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--gamma", "1.0"]).status.code(), Some(2));
    assert!(run(&["bounds", "--gamma", "1.0", "--relaxed"])
        .status
        .success());
}

#[test]
fn radius_examples() {
    let r = &rows(&stdout(&run(&[
        "radius",
        "star",
        "--rho",
        "0",
        "--extremal-n",
        "1",
    ])))[0];
    assert!((field(r, 0) - 0.577350).abs() < 1e-6);
    assert!(field(r, 2) - field(r, 1) <= 1e-9);
    assert_eq!(r[3], "50");
    let r = &rows(&stdout(&run(&[
        "radius",
        "convex",
        "--rho",
        "0",
        "--extremal-n",
        "2",
    ])))[0];
    assert!((field(r, 0) - 0.5).abs() < 1e-6);
    assert_eq!(
        run(&["radius", "star", "--rho", "1", "--extremal-n", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn radius_curve_to_file_and_weights() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("curve.csv");
    let out = run(&[
        "radius",
        "star",
        "--curve",
        "--steps",
        "10",
        "--extremal-n",
        "1",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text
        .starts_with("# params: command=radius kind=star dominant_n=1 n_max=50 tol=1e-9 steps=10"));
    assert_eq!(rows(&text).len(), 10);

    let w = write(dir.path(), "w.csv", "n,weight\n1,1\n");
    let r = &rows(&stdout(&run(&["radius", "star", "--weights", &w])))[0];
    assert!((field(r, 0) - 1.0 / 3f64.sqrt()).abs() < 1e-6);
    let bad = write(dir.path(), "bad.csv", "n,weight\n1,oops\n");
    assert_eq!(
        run(&["radius", "star", "--weights", &bad]).status.code(),
        Some(5)
    );
}

#[test]
fn radius_strict_truncation() {
    let args = [
        "radius", "star", "--lambda", "0.45", "--gamma", "5", "--n-max", "50",
    ];
    let out = run(&args);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(run(&strict).status.code(), Some(4));
}

#[test]
fn member_examples() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.csv", "n,re,im\n");
    let grid = dir.path().join("grid.csv");
    let out = run(&[
        "member",
        "--coeffs",
        &empty,
        "--scan-eta",
        "16",
        "--output",
        grid.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: Member"));
    assert!(text.contains("min_re_tau: 1\n"));
    let grid_text = fs::read_to_string(&grid).unwrap();
    assert!(grid_text.starts_with("# params: command=member"));
    assert_eq!(
        rows(&grid_text).iter().filter(|r| r.len() == 3).count(),
        16 * 64
    );

    let a4 = write(dir.path(), "a4.csv", "n,re,im\n1,4,0\n");
    let text = stdout(&run(&["member", "--coeffs", &a4]));
    assert!(text.contains("verdict: NotMember"));
    assert!(text.contains("coefficient_bounds: violated at n=1"));

    let missing = dir.path().join("missing.csv");
    assert_eq!(
        run(&["member", "--coeffs", missing.to_str().unwrap()])
            .status
            .code(),
        Some(5)
    );
    let bad = write(dir.path(), "bad.csv", "n,re,im\n1,0,0\n2,zz,0\n");
    let out = run(&["member", "--coeffs", &bad]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(
        run(&["member", "--coeffs", &empty, "--radii", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn generate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let r = rows(&stdout(&run(&[
        "generate",
        "--schwarz",
        "0",
        "--n-max",
        "5",
    ])));
    assert!(r.iter().all(|row| field(row, 1) == 0.0));
    assert_eq!(
        run(&["generate", "--schwarz", "1.0"]).status.code(),
        Some(2)
    );

    // A linear Schwarz term enters |a_1| quadratically: 3c².
    let out = run(&["generate", "--schwarz", "0.999", "--n-max", "5"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("linear coefficient"));
    let r = &rows(&stdout(&out))[0];
    assert!((field(r, 1) - 3.0 * 0.999 * 0.999).abs() < 1e-12);
    assert_eq!(field(r, 2), 3.0);

    // An admissible quadratic term gives |a_1| = 3c, approaching A_1 = 3.
    let path = dir.path().join("gen.csv");
    let out = run(&[
        "generate",
        "--schwarz",
        "0,0.999",
        "--n-max",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.stderr.is_empty());
    let r = &rows(&stdout(&out))[0];
    assert!((field(r, 1) - 2.997).abs() < 1e-12);

    // The written file feeds straight back into `member`.
    let text = stdout(&run(&["member", "--coeffs", path.to_str().unwrap()]));
    assert!(text.contains("coefficient_bounds: satisfied"));
}

#[test]
fn verify_identities_reports_small_residuals() {
    let text = stdout(&run(&[
        "verify-identities",
        "--lambda",
        "0.3",
        "--theta",
        "0.5",
        "--n-max",
        "8",
    ]));
    let r = rows(&text);
    assert_eq!(r.len(), 8);
    for row in &r {
        assert!(field(row, 1) < 1e-10 && field(row, 2) < 1e-10);
    }
    // The printed form carries an extra rotation on the right-hand side from n = 2 on.
    assert!(r.iter().skip(1).any(|row| field(row, 3) > 1e-6));
}

#[test]
fn verify_identities_seed_controls_schwarz_function() {
    let a = Command::new(env!("CARGO_BIN_EXE_wrightlens"))
        .args(["verify-identities", "--n-max", "4"])
        .env("WRIGHTLENS_SEED", "3")
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_wrightlens"))
        .args(["verify-identities", "--n-max", "4"])
        .env("WRIGHTLENS_SEED", "4")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_ne!(a.stdout, b.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_wrightlens"))
        .args(["verify-identities"])
        .env("WRIGHTLENS_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "bounds", "--theta", "0.6", "--lambda", "0.2", "--n-max", "20",
        ],
        vec!["radius", "convex", "--curve", "--steps", "7"],
        vec!["verify-identities", "--n-max", "5"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
