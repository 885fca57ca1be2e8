use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charfib"))
        .args(args)
        .env_remove("CHARFIB_MAX_FIELD")
        .output()
        .expect("spawn charfib")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn field_powers() {
    let out = run(&["field", "-p", "3", "-m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("F_9 = F_3[z]/(z^2 + z + 2)"));
    assert!(text.lines().any(|l| l == "α^3 = 2 + 2α"));
    assert!(text.lines().any(|l| l == "α^4 = 2"));

    let out = run(&["field", "-p", "2", "-m", "4", "--modulus", "1,1,0,0"]);
    assert!(stdout(&out).lines().any(|l| l == "α^14 = 1 + α^3"));
}

#[test]
fn bad_parameters_exit_one() {
    assert_eq!(run(&["field", "-p", "4"]).status.code(), Some(1));
    assert_eq!(
        run(&["fibers", "-p", "3", "-m", "2", "-n", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["field", "-p", "3", "-m", "2", "--modulus", "1,0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["constants", "-p", "3"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn field_size_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_charfib"))
        .args(["field", "-p", "3", "-m", "2"])
        .env("CHARFIB_MAX_FIELD", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_charfib"))
        .args(["field", "-p", "2", "-m", "4"])
        .env("CHARFIB_MAX_FIELD", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        run(&["field", "-p", "2", "-m", "21"]).status.code(),
        Some(1)
    );
}

#[test]
fn constants_json() {
    let out = run(&[
        "constants",
        "-p",
        "3",
        "-m",
        "2",
        "-n",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["p"], 3);
    assert_eq!(v["m"], 2);
    assert_eq!(v["n"], 2);
    assert_eq!(v["s"], 4);
    assert_eq!(v["modulus"], serde_json::json!([2, 1]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[0]["i"], 1);
    assert_eq!(entries[0]["j"], 1);
    assert_eq!(entries[0]["c"], serde_json::json!([4, 1, 2]));
}

#[test]
fn constants_csv_with_explicit_modulus() {
    let out = run(&[
        "constants",
        "-p",
        "2",
        "-m",
        "4",
        "--modulus",
        "1,1,0,0",
        "-n",
        "3",
        "--method",
        "cyclotomic",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,j,c0,c1,c2,c3");
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"1,1,5,0,2,2"));
    assert!(lines.contains(&"3,3,5,2,2,0"));
}

#[test]
fn methods_print_identical_output() {
    let base = ["constants", "-p", "13", "-n", "4", "--format", "csv"];
    let outputs: Vec<String> = ["direct", "cyclotomic", "bruteforce"]
        .iter()
        .map(|m| {
            let mut args = base.to_vec();
            args.extend(["--method", m]);
            stdout(&run(&args))
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "constants",
        "-p",
        "5",
        "-m",
        "2",
        "-n",
        "6",
        "--format",
        "json",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let sweep = ["sweep", "--max-q", "32", "--format", "csv"];
    assert_eq!(stdout(&run(&sweep)), stdout(&run(&sweep)));
}

#[test]
fn fibers_listing() {
    let out = run(&["fibers", "-p", "3", "-m", "2", "-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("A_")).count(), 4);
    assert_eq!(text.lines().filter(|l| l.starts_with("q_")).count(), 4);
    assert!(text.lines().any(|l| l == "A_1 = {1, 2}"));
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "-p", "3", "-m", "2", "-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS p=3 m=2 n=4"));
}

#[test]
fn perron_range() {
    let out = run(&["perron", "--max-p", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 45);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    assert!(text.contains("PASS p=199 d=50"));

    let out = run(&["perron", "-p", "5", "-m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("quadratic_constant_terms: PASS"));

    assert_eq!(run(&["perron", "-p", "2"]).status.code(), Some(1));
}

#[test]
fn small_sweep() {
    let out = run(&["sweep", "--max-q", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "PASS p=3 m=2 q=9 n={2,4,8}"));
    assert!(text.lines().last().unwrap().starts_with("PASS:"));

    let out = run(&[
        "sweep",
        "--max-q",
        "16",
        "--method",
        "direct,bruteforce",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_str::<serde_json::Value>(&stdout(&out)).unwrap();
}
