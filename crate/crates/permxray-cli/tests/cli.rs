//! Golden tests for the command-line surface.

use assert_cmd::Command;

fn permxray() -> Command {
    Command::new(env!("CARGO_BIN_EXE_permxray"))
}

#[test]
fn xray_prints_the_word() {
    permxray()
        .args(["xray", "321"])
        .assert()
        .success()
        .stdout("00300\n");
    permxray()
        .args(["xray", "1"])
        .assert()
        .success()
        .stdout("1\n");
    permxray()
        .args(["xray", "3124"])
        .assert()
        .success()
        .stdout("0111001\n");
}

#[test]
fn xray_diagonal_flag() {
    permxray()
        .args(["xray", "--diagonal", "73142865"])
        .assert()
        .success()
        .stdout("000021111100010\n");
}

#[test]
fn xray_rejects_malformed_input() {
    permxray().args(["xray", "1231"]).assert().code(2);
    permxray().args(["xray", "hello"]).assert().code(2);
}

#[test]
fn classes_table_lines() {
    permxray()
        .args(["classes", "5", "--table"])
        .assert()
        .success()
        .stdout("C(5)=5: 1(20),2(26),3(6),4(6),6(1)\n");
    permxray()
        .args(["classes", "1"])
        .assert()
        .success()
        .stdout("C(1)=1: 1(1)\n");
}

#[test]
fn classes_six_carries_the_corrected_cell_and_note() {
    let assert = permxray().args(["classes", "6"]).assert().success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("12(1)"), "{stdout}");
    assert!(stdout.contains("NOTE:"), "{stdout}");
    assert!(stdout.contains("2(1) printed but not realized"), "{stdout}");
}

#[test]
fn classes_json_schema() {
    let assert = permxray()
        .args(["classes", "4", "--json", "--full"])
        .assert()
        .success();
    let value: serde_json::Value =
        serde_json::from_slice(&assert.get_output().stdout).unwrap();
    assert_eq!(value["schema"], "permxray/1");
    assert_eq!(value["n"], 4);
    assert_eq!(value["x_n"], 16);
    assert_eq!(value["c"], 3);
    assert_eq!(value["histogram"][0], serde_json::json!([1, 9]));
    assert_eq!(value["classes"]["0012100"][0], "3421");
}

#[test]
fn classes_full_table_lists_members() {
    let assert = permxray().args(["classes", "3", "--full"]).assert().success();
    let stdout = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(stdout.contains("01110: 231,312"), "{stdout}");
    assert!(stdout.contains("10101: 123"), "{stdout}");
}

#[test]
fn classes_respects_the_sweep_cap() {
    permxray()
        .args(["--limit-n", "4", "classes", "5"])
        .assert()
        .code(2);
}

#[test]
fn reconstruct_enumerates_witnesses() {
    let assert = permxray()
        .args(["reconstruct", "01110", "--mode", "enumerate"])
        .assert()
        .success();
    let value: serde_json::Value =
        serde_json::from_slice(&assert.get_output().stdout).unwrap();
    assert_eq!(value["found"], true);
    assert_eq!(value["count"], 2);
    assert_eq!(value["witnesses"], serde_json::json!(["231", "312"]));
}

#[test]
fn reconstruct_reports_infeasible_words() {
    for word in ["11", "000110200002100"] {
        let assert = permxray()
            .args(["reconstruct", word, "--mode", "count"])
            .assert()
            .success();
        let value: serde_json::Value =
            serde_json::from_slice(&assert.get_output().stdout).unwrap();
        assert_eq!(value["found"], false, "{word}");
        assert_eq!(value["count"], 0, "{word}");
    }
}

#[test]
fn reconstruct_counts_the_corrected_eight_letter_word() {
    let assert = permxray()
        .args(["reconstruct", "001101200002100", "--mode", "enumerate"])
        .assert()
        .success();
    let value: serde_json::Value =
        serde_json::from_slice(&assert.get_output().stdout).unwrap();
    assert_eq!(value["count"], 8);
    let witnesses: Vec<&str> = value["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_str().unwrap())
        .collect();
    for expect in ["73142865", "72413865", "35248716", "42538716"] {
        assert!(witnesses.contains(&expect), "missing {expect}");
    }
}

#[test]
fn reconstruct_decide_respects_a_node_budget() {
    permxray()
        .args([
            "reconstruct",
            "0001111111000",
            "--mode",
            "decide",
            "--node-budget",
            "2",
        ])
        .assert()
        .code(2);
}

#[test]
fn verify_exit_codes() {
    permxray()
        .args(["--offline", "verify", "2", "--max-n", "5"])
        .assert()
        .success();
    permxray()
        .args(["--offline", "verify", "zero-sum", "--max-n", "5"])
        .assert()
        .success();
    permxray().args(["verify", "nonsense"]).assert().code(2);
}

#[test]
fn verify_json_evidence() {
    let assert = permxray()
        .args(["--offline", "verify", "conj-binary", "--max-n", "4", "--json"])
        .assert()
        .success();
    let value: serde_json::Value =
        serde_json::from_slice(&assert.get_output().stdout).unwrap();
    assert_eq!(value["schema"], "permxray/1");
    assert_eq!(value["target"], "conj-binary");
    assert_eq!(value["verdict"], "pass");
    assert_eq!(value["evidence"]["rows"][2]["b_n"], 2);
}

#[test]
fn report_writes_tables_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables");
    permxray()
        .args(["--offline", "report", "--out"])
        .arg(&out)
        .assert()
        .success();
    for file in [
        "xray_counts.json",
        "xray_counts.txt",
        "degeneracy_classes.json",
        "degeneracy_classes.txt",
        "circulants.json",
        "circulants.txt",
        "palindromic_counts.json",
        "palindromic_counts.txt",
        "manifest.json",
    ] {
        assert!(out.join(file).exists(), "{file}");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["schema"], "permxray/1");
    assert_eq!(manifest["records"].as_array().unwrap().len(), 8);
    for record in manifest["records"].as_array().unwrap() {
        let digest = record["result_digest"].as_str().unwrap();
        assert!(digest.starts_with("sha256:") && digest.len() == 71, "{digest}");
    }
}

#[test]
fn report_fails_on_unwritable_output() {
    permxray()
        .args(["report", "--out", "/proc/definitely/not/writable"])
        .assert()
        .code(2);
}
