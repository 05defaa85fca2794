use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_singular-eig"));
    c.env_remove("SINGULAR_EIG_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn eig_shoot_record() {
    let o = run(&["eig", "--engine", "shoot", "--operator", "pucci+", "--lam", "1", "--Lam", "2", "--dim", "3", "--gamma", "1.5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["engine"], "shoot");
    assert_eq!(v["config"]["operator"], "pucci+");
    assert_eq!(num(&v["config"]["Lam"]), 2.0);
    assert_eq!(num(&v["config"]["gamma"]), 1.5);
    let lam = num(&v["eigenvalue"]);
    let r_bar = num(&v["first_zero"]);
    // domain scaling: the eigenvalue is the first zero to the power 2 - gamma
    assert!((r_bar.powf(0.5) - lam).abs() < 1e-12 * lam);
    assert!((num(&v["log_first_zero"]) - r_bar.ln()).abs() < 1e-12);
    let u = v["eigenfunction"]["u"].as_array().unwrap();
    assert_eq!(u.len(), 101);
    assert_eq!(num(&u[0]), 1.0);
    assert!(num(&u[100]).abs() < 1e-9);
}

#[test]
fn eig_laplacian_oracle() {
    let o = run(&["eig", "--operator", "laplacian", "--dim", "3", "--gamma", "0"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let lam = num(&json(&o)["eigenvalue"]);
    assert!((lam - std::f64::consts::PI.powi(2)).abs() < 1e-6, "{lam}");
}

#[test]
fn eig_var_reports_both_values() {
    let o = run(&["eig", "--engine", "var", "--lam", "1", "--Lam", "1", "--dim", "4", "--gamma", "1.9"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    let var = num(&v["lambda_var"]);
    assert_eq!(num(&v["eigenvalue"]), var);

    let o = run(&["eig", "--engine", "var", "--lam", "1", "--Lam", "2", "--dim", "5", "--gamma", "1.5"]);
    let v = json(&o);
    assert_eq!(num(&v["eigenvalue"]), 2.0 * num(&v["lambda_var"]));
    let shoot = num(&json(&run(&["eig", "--lam", "1", "--Lam", "2", "--dim", "5", "--gamma", "1.5"]))["eigenvalue"]);
    assert!((num(&v["eigenvalue"]) - shoot).abs() < 1e-3 * shoot);
}

#[test]
fn config_errors_exit_one() {
    let o = run(&["eig", "--gamma", "-0.5"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--gamma"), "{}", stderr(&o));
    for args in [
        &["eig", "--gamma", "2"][..],
        &["eig", "--lam", "2", "--Lam", "1"],
        &["eig", "--engine", "warp"],
        &["eig", "--format", "xml"],
        &["eig", "--engine", "fd", "--gamma", "1", "--eps", "0"],
        &["eig", "--engine", "var", "--operator", "mix:0.5", "--gamma", "1.5"],
        &["eig", "--gamma", "abc"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&run(args)), 1, "{args:?}");
    }
    let o = bin().args(["eig", "--engine", "fd"]).env("SINGULAR_EIG_SEED", "x").output().unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["sweep", "--help"])), 0);
}

#[test]
fn output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["eig", "--engine", "fd", "--lam", "1", "--Lam", "2", "--dim", "5", "--gamma", "1.5", "--nodes", "1024"];
    let mut files = vec![];
    for (i, format) in ["json", "json", "csv", "csv"].iter().enumerate() {
        let path = dir.path().join(format!("out{i}"));
        let mut a: Vec<&str> = args.to_vec();
        a.extend(["--format", format, "--out", path.to_str().unwrap()]);
        let o = run(&a);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(o.stdout.is_empty());
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[2], files[3]);
    for f in &files {
        assert!(!f.contains(&b'\r'));
        assert!(f.ends_with(b"\n"));
    }
    let text = String::from_utf8(files[2].clone()).unwrap();
    assert!(text.contains("\neigenvalue,3."), "{text}");
    assert!(text.contains("config.gamma,1.5000000000000000e0\n"));
}

#[test]
fn fd_seed_is_recorded_and_immaterial() {
    let args = ["eig", "--engine", "fd", "--lam", "1", "--Lam", "2", "--dim", "5", "--gamma", "1.5", "--nodes", "1024"];
    let a = json(&run(&args));
    let b = json(&bin().args(args).env("SINGULAR_EIG_SEED", "7").output().unwrap());
    assert_eq!(a["config"]["seed"], 0);
    assert_eq!(b["config"]["seed"], 7);
    let (x, y) = (num(&a["eigenvalue"]), num(&b["eigenvalue"]));
    assert!((x - y).abs() < 1e-8 * x);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# shared settings\nlam = 1\nLam = 2\ndim = 5\ngamma = 1.9\n").unwrap();
    let v = json(&run(&["eig", "--config", cfg.to_str().unwrap(), "--gamma", "1.5"]));
    assert_eq!(num(&v["config"]["gamma"]), 1.5);
    assert_eq!(v["config"]["dim"], 5);
    std::fs::write(&cfg, "gama = 1.5\n").unwrap();
    assert_eq!(code(&run(&["eig", "--config", cfg.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["eig", "--config", dir.path().join("missing").to_str().unwrap()])), 1);
}

fn column<'a>(rows: &'a [Vec<String>], name: &str) -> Vec<&'a str> {
    let i = rows[0].iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows[1..].iter().map(|r| r[i].as_str()).collect()
}

#[test]
fn sweep_gamma_toward_two() {
    let o = run(&[
        "sweep", "--vary", "gamma", "--values", "1.9,1.99,1.999", "--lam", "1", "--Lam", "2", "--dim", "5",
        "--engines", "shoot,var",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].last().unwrap(), "var_over_lambda2");
    assert_eq!(column(&rows, "gamma")[2], "1.9990000000000001e0");
    assert!(column(&rows, "shoot_decreasing").iter().all(|&f| f == "true"));
    assert_eq!(column(&rows, "explicit_lambda2")[0], "5.0000000000000000e-1");
    let limit: f64 = column(&rows, "shoot_aitken")[2].parse().unwrap();
    assert!((limit - 0.5).abs() < 0.01 * 0.5, "{limit}");
    assert_eq!(column(&rows, "shoot_aitken")[0], "");
}

#[test]
fn sweep_delta_and_eps_are_monotone() {
    for args in [
        &["sweep", "--vary", "delta", "--values", "0.1,0.01,0.001", "--gamma", "1.5"][..],
        &["sweep", "--vary", "eps", "--values", "1e-2,1e-3,1e-4", "--gamma", "2"],
    ] {
        let mut a = args.to_vec();
        a.extend(["--engine", "fd", "--lam", "1", "--Lam", "2", "--dim", "5", "--nodes", "2048"]);
        let o = run(&a);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let rows = csv_rows(&stdout(&o));
        assert_eq!(column(&rows, "fd_decreasing"), ["true", "true", "true"], "{args:?}");
        assert!(column(&rows, "fd_status").iter().all(|&s| s == "ok"));
    }
}

#[test]
fn sweep_order_is_independent_of_jobs() {
    let base = ["sweep", "--vary", "gamma", "--values", "1.5,0.5,1.0,1.9", "--dim", "4", "--Lam", "2", "--engines", "shoot,var"];
    let mut one = base.to_vec();
    one.extend(["--jobs", "1"]);
    let mut four = base.to_vec();
    four.extend(["--jobs", "4"]);
    let (a, b) = (run(&one), run(&four));
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let rows = csv_rows(&stdout(&a));
    assert_eq!(column(&rows, "row"), ["0", "1", "2", "3"]);
    assert_eq!(column(&rows, "shoot_decreasing"), ["true", "false", "false", "false"]);
}

#[test]
fn sweep_failures_are_per_row() {
    let o = run(&["sweep", "--vary", "gamma", "--values", "1.5,2.5,1.9", "--dim", "5", "--Lam", "2"]);
    assert_eq!(code(&o), 3);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(column(&rows, "shoot_status"), ["ok", "config", "ok"]);
    assert_eq!(column(&rows, "shoot_eigenvalue")[1], "NaN");
    assert_eq!(code(&run(&["sweep", "--values", "1"])), 1);
    assert_eq!(code(&run(&["sweep", "--vary", "gamma"])), 1);
}

#[test]
fn sweep_json_embeds_config() {
    let o = run(&["sweep", "--vary", "gamma", "--values", "0.5,1.5", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["vary"], "gamma");
    assert_eq!(v["config"]["engine"], "shoot");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["shoot_status"], "ok");
    assert!(rows[0]["shoot_aitken"].is_null());
}

fn solve(mu: f64) -> Output {
    run(&[
        "solve", "--lam", "1", "--Lam", "2", "--dim", "5", "--gamma", "1.5", "--nodes", "2048",
        "--rhs", "-1", "--mu", &mu.to_string(),
    ])
}

#[test]
fn solve_below_and_above_the_eigenvalue() {
    let lam = num(&json(&run(&["eig", "--lam", "1", "--Lam", "2", "--dim", "5", "--gamma", "1.5"]))["eigenvalue"]);
    let o = solve(0.5 * lam);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert!(num(&v["min_interior_value"]) > 0.0);
    assert_eq!(num(&v["rhs"]), -1.0);
    let o = solve(1.5 * lam);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("diverged"), "{}", stderr(&o));
    assert_eq!(code(&run(&["solve", "--engine", "shoot"])), 1);
    assert_eq!(code(&run(&["solve", "--beta", "-1"])), 1);
}

#[test]
fn solve_torsion_on_the_ball() {
    let o = run(&["solve", "--operator", "laplacian", "--dim", "3", "--rhs", "-1", "--format", "csv", "--samples", "5"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    let get = |k: &str| -> f64 { rows.iter().find(|r| r[0] == k).unwrap()[1].parse().unwrap() };
    for i in 0..5 {
        let r = get(&format!("r.{i}"));
        assert!((get(&format!("u.{i}")) - (1.0 - r * r) / 6.0).abs() < 1e-6);
    }
}

#[test]
fn verify_all_pass() {
    let o = run(&["verify"]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("9 of 9 checks passed"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_detects_injected_sign_bug() {
    let o = run(&["verify", "--inject-sign-bug"]);
    assert_eq!(code(&o), 4);
    let text = stdout(&o);
    for check in ["gamma2-residual", "supersolution", "comparison", "maximum", "derivative-bounds", "simplicity"] {
        let line = text.lines().find(|l| l.starts_with(check)).unwrap();
        assert!(line.contains("FAIL"), "{line}");
    }
}

#[test]
fn verify_only_runs_the_named_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.txt");
    let o = run(&["verify", "--only", "gamma2-residual", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(Path::new(&out)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines[1].starts_with("gamma2-residual") && lines[1].contains("PASS"));
    assert_eq!(code(&run(&["verify", "--only", "gamma2-residual", "--inject-sign-bug"])), 4);
    assert_eq!(code(&run(&["verify", "--only", "nonsense"])), 1);
    assert_eq!(stdout(&run(&["verify", "--list"])).lines().count(), 9);
}
