use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unipotent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn dual_and_infchar_print_plain_values() {
    let o = run(&["dual", "--direction", "CtoB", "--shape", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3,1,1");
    let o = run(&["dual", "--direction", "BtoC", "--shape", "3,1,1"]);
    assert_eq!(stdout(&o), "2,2");
    let o = run(&["infchar", "--family", "sp", "--shape", "1,1,1,1"]);
    assert_eq!(stdout(&o), "1,2");
}

#[test]
fn dual_json_mode() {
    let o = run(&["dual", "--direction", "DtoD", "--shape", "1,1,1,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dual"], "3,1");
}

#[test]
fn domain_errors_exit_two() {
    let o = run(&["dual", "--direction", "CtoB", "--shape", "3,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not of type C"));
    let o = run(&["certify", "--form", "sp", "--p", "1", "--q", "1", "--tableau", "2+ 2+"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["korbits", "--form", "sp", "--p", "1", "--q", "1", "--shape", "3,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["dual", "--direction", "CtoB", "--shape", "2,x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
}

#[test]
fn korbits_lists_signed_tableaux() {
    let o = run(&["korbits", "--form", "sp", "--p", "2", "--q", "1", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.ends_with("2+ 2- 1+^2")));
    let o = run(&["korbits", "--form", "sp", "--p", "2", "--q", "0", "--shape", "2,2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["shapes"][0]["count"], 0);
}

#[test]
fn parabolic_and_certify_json() {
    let o = run(&["parabolic", "--form", "sp", "--p", "1", "--q", "1", "--tableau", "2+ 2-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["weakly_fair"], true);
    let o = run(&["certify", "--form", "sp", "--p", "2", "--q", "2", "--tableau", "2+^2 2-^2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "chain");
    assert_eq!(v["terminal"]["dense_orbit"], "4+ 4- 2+ 2-");
}

#[test]
fn special_nonintegral_route() {
    let o = run(&["special", "--form", "sp", "--p", "2", "--q", "1", "--dual-shape", "3,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["route"] == "nonintegral"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["verify", "--check", "chain", "--max-n", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["special", "--form", "sostar", "--n", "4", "--dual-shape", "3,3,1,1", "--text"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_all_small() {
    let o = run(&["verify", "--all", "--max-n", "3", "--text"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn unknown_check_is_a_domain_error() {
    let o = run(&["verify", "--check", "everything"]);
    assert_eq!(o.status.code(), Some(2));
}
