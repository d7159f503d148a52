//! End-to-end tests of the command-line binary: subcommands, exit
//! codes, output formats, and determinism of the JSON reports.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polarcalc"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn polarcalc");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const WP1235: &str = r#"{"vertices": [[0,0,0],[15,0,0],[0,10,0],[0,0,6]]}"#;

#[test]
fn toric_wp1235_table() {
    let out = run_with_stdin(&["toric", "--input", "-"], WP1235);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("900"));
    assert!(text.contains("3270"));
    assert!(text.contains("4451"));
    assert!(text.contains("2688"));
    assert!(text.contains("ED degree: 11309"));
}

#[test]
fn toric_json_is_deterministic() {
    let a = run_with_stdin(&["toric", "--input", "-", "--output", "json"], WP1235);
    let b = run_with_stdin(&["toric", "--input", "-", "--output", "json"], WP1235);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "identical inputs must give byte-identical output");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["mode"], "toric");
    assert_eq!(v["results"]["ed_degree"], "11309");
    assert_eq!(v["results"]["polar"]["entries"][1], "3270");
}

#[test]
fn toric_from_file_with_order() {
    let dir = std::env::temp_dir();
    let path = dir.join("polarcalc_cli_triangle.json");
    std::fs::write(&path, r#"{"vertices": [[0,0],[3,0],[0,3]], "order": 2}"#).unwrap();
    let out = bin()
        .args(["toric", "--input", path.to_str().unwrap(), "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["higher_order"]["kind"], "polygon");
    assert_eq!(v["results"]["higher_order"]["degrees"][0], "18");
    assert_eq!(v["results"]["higher_order"]["degrees"][1], "15");
}

#[test]
fn toric_point_input() {
    let out = run_with_stdin(
        &["toric", "--input", "-", "--output", "json"],
        r#"{"vertices": [[7,7]]}"#,
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["polar"]["entries"][0], "1");
    assert_eq!(v["results"]["ed_degree"], "1");
}

#[test]
fn malformed_input_exits_2() {
    let out = run_with_stdin(&["toric", "--input", "-"], r#"{"vertices": [[0.5]]}"#);
    assert_eq!(out.status.code(), Some(2));
    let out = run_with_stdin(&["toric", "--input", "-"], "not json");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_failure_exits_3() {
    // not smooth at order 2
    let out = run_with_stdin(
        &["toric", "--input", "-", "--order", "2"],
        r#"{"vertices": [[0,0],[2,0],[1,2]]}"#,
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn resource_limit_exits_4() {
    let out = bin()
        .args(["toric", "--input", "-", "--order", "2"])
        .env("POLARCALC_SCAN_BUDGET", "0")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map(|mut c| {
            c.stdin
                .as_mut()
                .unwrap()
                .write_all(br#"{"vertices": [[0,0],[3,0],[0,3]]}"#)
                .unwrap();
            c.wait_with_output().unwrap()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn curve_subcommand() {
    let out = bin()
        .args(["curve", "-n", "4", "-d", "4", "-g", "0", "--kappa", "0,0,0", "-k", "2", "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["rank"], "6");
    assert_eq!(v["results"]["reciprocal"], "10");

    let out = bin()
        .args(["curve", "-n", "2", "-d", "3", "-g", "1", "--kappa", "0", "-k", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("r_1 = 6"));
    assert!(text.contains("9"));

    // k = 0 echoes the degree
    let out = bin()
        .args(["curve", "-n", "2", "-d", "5", "-g", "0", "--kappa", "0", "-k", "0", "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["rank"], "5");
}

#[test]
fn scroll_subcommand() {
    let out = bin()
        .args(["scroll", "--type", "3,3,3", "--order", "3", "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["dual_degree"], "9");
    assert_eq!(v["results"]["balanced_selfdual"], true);

    let out = bin()
        .args(["scroll", "--elliptic", "-e", "0", "-d", "5", "--decomposable", "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["order"], 4);
    assert_eq!(v["results"]["dual_degree"], "40");

    // k above d_1 is a precondition failure
    let out = bin()
        .args(["scroll", "--type", "2,3", "--order", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // invalid elliptic parameter combination
    let out = bin()
        .args(["scroll", "--elliptic", "-e", "1", "-d", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn convert_subcommand() {
    let out = bin()
        .args(["convert", "--from", "mather", "--degrees", "900,330,41,4", "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let polar: Vec<&str> = v["results"]["polar"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(polar, vec!["900", "3270", "4451", "2688"]);

    let out = bin()
        .args(["convert", "--from", "polar", "--degrees", "900,3270,4451,2688", "--delta", "0", "--output", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["mather"]["entries"][1], "330");
    assert_eq!(v["results"]["dual_reversal"]["entries"][0], "2688");

    let out = bin()
        .args(["convert", "--from", "polar", "--degrees", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("mather:     7"));
}

#[test]
fn selftest_passes_and_fault_injection_fails() {
    let out = bin().arg("selftest").output().unwrap();
    assert!(out.status.success(), "selftest failed:\n{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);

    let out = bin()
        .args(["selftest", "--inject-cp-sign-flip"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL cp-involution"));
}

#[test]
fn selftest_zero_budget_exits_4() {
    let out = bin()
        .arg("selftest")
        .env("POLARCALC_SCAN_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}
