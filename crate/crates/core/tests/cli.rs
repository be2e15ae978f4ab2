use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steklov-shell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let header: Vec<&str> = text.lines().find(|l| !l.starts_with('#')).unwrap().split(',').collect();
    let j = header.iter().position(|h| *h == name).unwrap();
    csv_rows(text).iter().map(|r| r[j].parse().unwrap()).collect()
}

#[test]
fn spectrum_csv_layout() {
    let o = run(&["--format", "csv", "spectrum", "--dim", "2", "--a", "0.5", "--kmax", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# manifest: {"));
    assert_eq!(lines.next().unwrap(), "value,k,branch,multiplicity");
    let rows = csv_rows(&text);
    assert_eq!(rows[0][2], "zero");
    let first: f64 = rows[1][0].parse().unwrap();
    assert!((first - 0.438447187191170).abs() < 1e-12);
    assert_eq!(rows[1][3], "2");
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn bad_radius_is_a_usage_error() {
    let o = run(&["spectrum", "--dim", "2", "--a", "1.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inner radius must lie in (0,1)"));
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_flag_and_bad_values() {
    assert_eq!(run(&["spectrum", "--dim", "2"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--dim", "2", "--a", "0.5", "--d", "0.6"]).status.code(), Some(2));
    assert_eq!(run(&["--tol", "-1", "bound", "--dim", "2", "--a", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["--jobs", "0", "verify"]).status.code(), Some(2));
    assert_eq!(run(&["--timestamp", "yesterday", "verify"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--a", "0.5", "--points", "10"]).status.code(), Some(2));
}

#[test]
fn bound_breakdown() {
    let o = run(&["--format", "csv", "bound", "--dim", "3", "--a", "0.4", "--d", "0.2"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let get = |k: &str| -> f64 { rows.iter().find(|r| r[0] == k).unwrap()[1].parse().unwrap() };
    assert!(get("w2").abs() < 1e-10);
    assert!(get("bound") < get("closed_form"));
    for key in ["mu", "w1", "w3", "v1", "v2", "v3", "energy", "boundary_mass"] {
        assert!(get(key).is_finite());
    }

    let o = run(&["--format", "csv", "bound", "--problem", "dirichlet-steklov", "--dim", "2", "--a", "0.5", "--d", "0"]);
    let rows = csv_rows(&stdout(&o));
    let bound: f64 = rows.iter().find(|r| r[0] == "bound").unwrap()[1].parse().unwrap();
    assert!((bound - 1.0 / 2f64.ln()).abs() < 1e-12);
}

#[test]
fn solve_offset_and_ill_conditioned() {
    let o = run(&["--format", "csv", "solve", "--a", "0.5", "--d", "0.3", "--order", "24"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let note = |key: &str| -> f64 {
        let prefix = format!("# {key}: ");
        text.lines().find_map(|l| l.strip_prefix(&prefix)).unwrap().parse().unwrap()
    };
    assert!(note("first_eigenvalue") < note("concentric_closed_form"));
    assert!(note("residual") < 1e-6);

    let o = run(&["solve", "--a", "0.5", "--d", "0.3", "--order", "200"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("ill-conditioned"));
}

#[test]
fn sweeps() {
    let o = run(&["--format", "csv", "sweep", "--problem", "steklov", "--dim", "2", "--a", "0.5", "--d-steps", "20"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let bound = column(&text, "bound");
    assert_eq!(bound.len(), 20);
    assert!(bound.windows(2).all(|w| w[1] < w[0]));
    let solver = column(&text, "solver");
    assert!(solver.iter().zip(&bound).all(|(s, b)| s <= &(b + 1e-8)));

    let o = run(&["--format", "csv", "sweep", "--problem", "ratio", "--dim", "3", "--eps-steps", "200"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("# argmax: eps=")));
    let values = column(&text, "value");
    let best = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!(best > 0 && best < values.len() - 1);

    assert_eq!(run(&["sweep", "--problem", "ratio", "--eps-steps", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "--problem", "steklov", "--a", "0.5", "--d-steps", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_rows_independent_of_jobs() {
    let args = ["sweep", "--problem", "dirichlet-steklov", "--dim", "2", "--a", "0.4", "--d-steps", "7", "--format", "csv"];
    let one = run(&[&["--jobs", "1"], &args[..]].concat());
    let four = run(&[&["--jobs", "4"], &args[..]].concat());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("steklov-shell-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.csv");
    let o = run(&["--format", "csv", "--out", path.to_str().unwrap(), "spectrum", "--dim", "4", "--a", "0.3", "--kmax", "3"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"command\":\"spectrum\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reports_and_fault_injection() {
    let o = run(&["--format", "csv", "verify", "--level", "fast"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert!(rows.len() > 30);
    assert!(rows.iter().all(|r| r[1] == "PASS"));

    let o = run(&["--format", "csv", "verify", "--inject-fault", "w2-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let rows = csv_rows(&stdout(&o));
    let failed: Vec<&str> = rows.iter().filter(|r| r[1] == "FAIL").map(|r| r[0].as_str()).collect();
    assert_eq!(failed, ["rayleigh.w2_vanishes"]);
    assert!(stderr(&o).contains("rayleigh.w2_vanishes"));
}

#[test]
fn manifest_records_timestamp() {
    let o = run(&["--format", "csv", "--timestamp", "2026-10-15T12:00:00Z", "bound", "--dim", "2", "--a", "0.5"]);
    assert!(stdout(&o).lines().next().unwrap().contains("\"timestamp\":\"2026-10-15T12:00:00Z\""));
}
