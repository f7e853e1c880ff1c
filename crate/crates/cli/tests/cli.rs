use std::fs;
use std::process::{Command, Output};

fn cmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn profile_point_value() {
    let o = cmc(&["profile", "--H", "0.5", "--r", "inf", "--s", "0"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["height"], 0.0);
    assert_eq!(v["params"]["r"], "inf");
}

#[test]
fn profile_table_has_fixed_columns() {
    let o = cmc(&["profile", "--H", "1", "--r", "1", "--n", "11"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,height,phi,flux_residual");
    assert_eq!(lines.len(), 12);
    assert!(lines.iter().all(|l| l.split(',').count() == 4));
}

#[test]
fn criteria_exit_codes() {
    let ok = cmc(&["criteria", "--H", "0.3", "--h", "0.2", "--r", "1", "--R", "2", "--d", "1", "--diam-beta", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["verdict"], true);

    let tall = cmc(&["criteria", "--H", "0.3", "--h", "5", "--r", "1", "--R", "2", "--d", "1", "--diam-beta", "4"]);
    assert_eq!(tall.status.code(), Some(2));
    assert_eq!(json(&tall)["verdict"], false);

    let below = cmc(&["criteria", "--H", "0.3", "--h", "-0.1", "--r", "1", "--R", "2", "--d", "1", "--diam-beta", "4"]);
    assert_eq!(json(&below)["theorem"], "ExistBelow");

    let missing = cmc(&["criteria", "--H", "0.3", "--h", "0.2"]);
    assert_eq!(missing.status.code(), Some(4));
}

#[test]
fn criteria_from_domain_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("domain.json");
    let circle = |rho: f64| -> Vec<[f64; 2]> {
        let e = (0.5 * rho).tanh();
        (0..400)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / 400.0;
                [e * t.cos(), e * t.sin()]
            })
            .collect()
    };
    let body = serde_json::json!({"outer": circle(2.0), "inner": circle(1.0)});
    fs::write(&path, body.to_string()).unwrap();
    let o = cmc(&["criteria", "--H", "0.3", "--h", "0.2", "--domain", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["hypotheses"][0]["actual"].as_f64().map(|x| (x - 4.0).abs() < 1e-9), Some(true));
}

#[test]
fn nonexistence_reports() {
    let horo = cmc(&["criteria", "--theorem", "horo", "--H", "0.5", "--h", "1"]);
    assert_eq!(horo.status.code(), Some(0));
    let cyl = cmc(&["criteria", "--theorem", "cyl", "--H", "1", "--r", "1", "--h", "3"]);
    assert_eq!(cyl.status.code(), Some(2));
}

#[test]
fn radial_errors_map_to_solver_code() {
    let o = cmc(&["solve-radial", "--H", "1", "--h", "-0.5", "--rho-in", "1", "--rho-out", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = cmc(&["solve-radial", "--H", "0.3", "--h", "0.2", "--rho-in", "1", "--rho-out", "2", "--format", "json"]);
    assert!(o.status.success());
    assert!((json(&o)["achieved_h"].as_f64().unwrap() - 0.2).abs() < 1e-10);
}

#[test]
fn disk_dump_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.csv");
    let o = cmc(&[
        "solve-disk", "--H", "0.3", "--h", "0.2", "--rho-in", "1", "--rho-out", "2", "--spacing", "0.04",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let header: serde_json::Value = serde_json::from_str(&fs::read_to_string(path.with_extension("json")).unwrap()).unwrap();
    assert_eq!(header["converged"], true);
    let csv = fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("x,y,u\n"));
    assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 3));
}

#[test]
fn unconverged_solve_exits_with_solver_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    fs::write(&cfg, "spacing = 0.04\ntol = 1e-12\nmax_newton = 1\ndamping = 0.5\n").unwrap();
    let o = cmc(&["solve-disk", "--H", "0.3", "--h", "0.2", "--rho-in", "1", "--rho-out", "2", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn coarse_spacing_is_an_input_error() {
    let o = cmc(&["solve-disk", "--H", "0", "--h", "0.1", "--rho-in", "1", "--rho-out", "2", "--spacing", "0.3"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn mesh_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.obj");
    let b = dir.path().join("b.obj");
    for p in [&a, &b] {
        let o = cmc(&[
            "mesh", "--H", "1", "--r", "1", "--n-radial", "8", "--n-angular", "12", "--reflect", "--s-max", "0.5",
            "--out", p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 12 * 15);
}

#[test]
fn graph_mesh_json() {
    let o = cmc(&[
        "mesh", "--kind", "graph", "--H", "0", "--h", "0.3", "--rho-in", "1", "--rho-out", "2", "--spacing", "0.05",
        "--format", "json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert!(!v["faces"].as_array().unwrap().is_empty());
}

#[test]
fn bounds_report() {
    let o = cmc(&["bounds", "--H", "0.5"]);
    let v = json(&o);
    assert!((v["horocylinder_bound"].as_f64().unwrap() - (std::f64::consts::PI - 2.0)).abs() < 1e-12);
    assert_eq!(v["T_H"], "inf");
}

#[test]
fn bad_arguments_exit_with_input_code() {
    assert_eq!(cmc(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(cmc(&["profile", "--H", "-1", "--r", "1"]).status.code(), Some(4));
    assert_eq!(cmc(&["--help"]).status.code(), Some(0));
}
