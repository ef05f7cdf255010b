use std::process::{Command, Output};

fn plsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plsym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = plsym(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json output"))
}

#[test]
fn tables_check() {
    let o = plsym(&["tables", "commutation", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check: pass, 25/25 entries"));
    let o = plsym(&["tables", "invariants", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("12/12 rows"));
}

#[test]
fn adjoint_table_csv() {
    let o = plsym(&["tables", "adjoint", "--format", "csv"]);
    let text = stdout(&o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap().len(), 6);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows.iter().map(|r| r.len() - 1).sum::<usize>(), 25);
    assert_eq!(&rows[1][1], "X1 - eps*X2");
}

#[test]
fn classify_examples() {
    let o = plsym(&["classify", "1", "0", "0", "0", "0"]);
    assert!(stdout(&o).starts_with("case 3: X1\n"));
    let o = plsym(&["classify", "0", "0", "1", "0", "0"]);
    assert!(stdout(&o).starts_with("case 2: X3\n"));
    let (code, v) = json(&["classify", "1", "2", "3", "4", "5", "--theta", "0.5", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][1]["name"], "adjoint matrix replay");
    assert_eq!(v["checks"][1]["verdict"], "pass");
    assert_eq!(plsym(&["classify", "-1/3", "2", "0", "1", "1"]).status.code(), Some(0));
}

#[test]
fn usage_errors() {
    assert_eq!(plsym(&["classify", "0", "0", "0", "0", "0"]).status.code(), Some(2));
    assert_eq!(plsym(&["classify", "1", "0", "0", "0", "0", "--theta", "1.5"]).status.code(), Some(2));
    assert_eq!(plsym(&["classify", "1", "0"]).status.code(), Some(2));
    assert_eq!(plsym(&["tables", "bogus"]).status.code(), Some(2));
    let o = plsym(&["simulate", "S1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ill-posed"));
}

#[test]
fn verify_symmetries() {
    let (code, v) = json(&["verify", "symmetries"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["verdict"] == "pass" && c["source_ref"].is_string()));
}

#[test]
fn verify_conservation() {
    let (code, v) = json(&["verify", "conservation", "--h", "0"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    let div: Vec<_> = checks.iter().filter(|c| c["name"].as_str().unwrap().contains("divergence")).collect();
    assert_eq!(div.len(), 5);
    assert!(div.iter().all(|c| c["verdict"] == "pass"));

    let (code, v) = json(&["verify", "conservation"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    let sa = checks.iter().find(|c| c["name"] == "self-adjointness (h symbolic)").unwrap();
    assert_eq!(sa["verdict"], "documented-discrepancy");
    assert!(sa["detail"].as_str().unwrap().contains("h*theta*phi^(theta - 1)*Psi"));
    let x5 = checks.iter().find(|c| c["name"] == "X5 eta_x vs printed").unwrap();
    assert!(x5["detail"].as_str().unwrap().contains("-2*c2*phi*phi_y + 2*c3*phi*phi_y"));
}

#[test]
fn expectations_file_controls_discrepancies() {
    let dir = std::env::temp_dir().join(format!("plsym-expect-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("none.txt");
    std::fs::write(&file, "# nothing is expected to fail\n").unwrap();
    let o = plsym(&["verify", "conservation", "--expectations", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[fail] X5 eta_x vs printed"));
}

#[test]
fn verify_solutions_and_adjoint() {
    let (code, v) = json(&["verify", "solutions"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    let get = |n: &str| checks.iter().find(|c| c["name"] == n).unwrap()["verdict"].clone();
    assert_eq!(get("S2 residual"), "pass");
    assert_eq!(get("S6 residual"), "documented-discrepancy");
    assert_eq!(get("S6 numeric spot check"), "documented-discrepancy");
    let (code, v) = json(&["verify", "adjoint", "--round-trips", "200", "--seed", "7"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
}

#[test]
fn simulate_runs() {
    let (code, v) = json(&["simulate", "S2", "--theta", "0.5", "--h", "2", "--steps", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][1]["name"], "stationarity drift");
    // the plane is integrated exactly, so the dt sweep shows no first-order decay
    let (code, v) = json(&["simulate", "S3", "--h", "0", "--dt-sweep", "--n", "16", "--steps", "20"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][2]["verdict"], "fail");
    assert_eq!(plsym(&["simulate", "S3", "--h", "2"]).status.code(), Some(2));
}

#[test]
fn export_writes_panels() {
    let dir = std::env::temp_dir().join(format!("plsym-export-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let o = plsym(&["export", "F1", "--out", d]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 3);
    let text = std::fs::read_to_string(dir.join("F1a_surface_t10.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,phi"));
    // S1 at t = 10, x = y = -5: −50/160
    assert_eq!(lines.next(), Some("-5,-5,-0.3125"));
    let o = plsym(&["export", "f3", "--out", d]);
    assert_eq!(o.status.code(), Some(0));
    let o = plsym(&["export", "F6", "--out", d]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("domain error"));
    std::fs::remove_dir_all(&dir).unwrap();
}
