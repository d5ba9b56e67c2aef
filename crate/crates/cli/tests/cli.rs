use std::fs;
use std::path::PathBuf;

use assert_cmd::Command;

fn bin() -> Command {
    Command::cargo_bin("theta-symbols").unwrap()
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    fs::read_to_string(path).unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn enum_lists_s40_in_order() {
    assert_eq!(stdout(&["enum", "--group", "O+8", "--delta", "0"]), fixture("s40_order.txt"));
}

#[test]
fn table_matches_fixture_except_two_rows() {
    let ours = stdout(&["table", "--pair", "O+8,Sp10"]);
    let expected = fixture("o8_sp10_table.txt");
    let differing: Vec<&str> = ours
        .lines()
        .zip(expected.lines())
        .filter(|(a, b)| a != b)
        .map(|(a, _)| a.split(" =>").next().unwrap())
        .collect();
    assert_eq!(ours.lines().count(), expected.lines().count());
    // (3,0;3) and (4,0;2) satisfy the relation but are missing from the fixture.
    assert_eq!(differing, ["3;1", "4,1;1,0"]);
    assert!(ours.contains("4;0 => 2,0;4 | 3,0;3*! |"));
}

#[test]
fn theta_set_with_peak() {
    let out = stdout(&["theta-set", "--pair", "O+30,Sp30", "--symbol", "9,4,2,1;5,4,2,0", "--peak"]);
    assert!(out.contains("alpha: 1 3 6 7 8 9 10\n"));
    assert!(out.contains("beta: 9 8 7 6 4 1 0\n"));
    assert!(out.contains("k0: 2\ntie: true\n"));
}

#[test]
fn empty_theta_set() {
    let out = stdout(&["theta-set", "--pair", "O+8,Sp10", "--symbol", "-;3,2,1,0"]);
    assert!(out.ends_with("(empty)\n"), "{out}");
}

#[test]
fn first_occurrence_both_series() {
    let out = stdout(&["first-occ", "--symbol", "2,0;4"]);
    assert!(out.contains("series O+: theta 4 underline 4 overline 5"));
    assert!(out.contains("series O-: theta 2 underline 2 overline 2"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "first-occ", "--symbol", "2,0;4", "--series", "O-"]))
            .unwrap();
    assert_eq!(json["series"][0]["overline"], 2);
}

#[test]
fn csv_output_has_header() {
    let out = stdout(&["--format", "csv", "table", "--pair", "O+8,Sp10", "--delta", "4"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("delta,tau,source,underline,overline,k0,tie"));
    assert_eq!(lines.next(), Some("4,3,\"3,2,1,0;-\",\"3;3,2,1,0\",\"3;3,2,1,0\",0,false"));
}

#[test]
fn json_table_round_trips_through_the_checker() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let json = stdout(&["--format", "json", "table", "--pair", "O+8,Sp10"]);
    fs::write(&path, &json).unwrap();

    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", json);

    let out = stdout(&["verify", "--property", "L0430", "--table-file", path.to_str().unwrap()]);
    assert!(out.contains("0 violations, ok"), "{out}");
}

#[test]
fn mutated_table_fails_injectivity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let json = stdout(&["--format", "json", "table", "--pair", "O+8,Sp10"]);
    let mut value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = &mut value["families"][1]["rows"];
    rows[1]["overline"] = rows[0]["overline"].clone();
    fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();

    let out = bin().args(["verify", "--property", "L0430", "--table-file", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAILED"));
}

#[test]
fn property_sweep_exit_codes() {
    bin().args(["verify", "--property", "L0413", "--max-rank", "2"]).assert().success();
    bin().args(["verify", "--property", "L9999"]).assert().code(2);
    bin().args(["theta-set", "--pair", "O+8,Sp10", "--symbol", "2,0;4"]).assert().code(2);
    bin().args(["table", "--pair", "Sp4,Sp6"]).assert().code(2);
}

#[test]
fn thread_variable_is_validated() {
    bin()
        .env("THETA_SYMBOLS_THREADS", "two")
        .args(["verify", "--property", "L0203", "--max-rank", "1"])
        .assert()
        .code(2);
    bin()
        .env("THETA_SYMBOLS_THREADS", "2")
        .args(["verify", "--property", "L0203", "--max-rank", "2"])
        .assert()
        .success();
}
