use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn xmod(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_xmod")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap_or(Value::String(text)), code)
}

fn write_doc(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_succeeds_on_fixture() {
    let (r, code) = xmod(&["check", "J3"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["payload"]["axioms"], true);
}

#[test]
fn unknown_names_and_subcommands_are_usage_errors() {
    assert_eq!(xmod(&["check", "Nope"]).1, 2);
    assert_eq!(xmod(&["frobnicate"]).1, 2);
    assert_eq!(xmod(&["exactseq", "--xm", "J3"]).1, 2);
}

#[test]
fn aut_reports_orders() {
    let (r, code) = xmod(&["aut", "S3"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["aut_order"], 6);
    assert_eq!(r["payload"]["outer_order"], 1);
    let (_, code) = xmod(&["aut", "D4", "--max-order", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn bispace_comparison_exit_codes() {
    let (r, code) = xmod(&["bispace", "--xm", "J3", "--xi", "1", "--compare-xi", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["tensor_dual_trivial"], true);
    let (r, code) = xmod(&["bispace", "--xm", "J3", "--xi", "0", "--compare-xi", "1"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    assert_eq!(xmod(&["bispace", "--name", "V4T"]).1, 0);
}

#[test]
fn cocycle_commands() {
    let (r, code) = xmod(&["cocycle", "--enumerate", "--xm", "J3", "--nerve", "Circ3"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["classes"], 6);
    assert_eq!(r["payload"]["trivial_classes"], 1);
    let (_, code) = xmod(&["cocycle", "--name", "J3Circ3Hol1", "--against", "J3Circ3Type1"]);
    assert_eq!(code, 1);
    let (r, code) = xmod(&["cocycle", "--name", "V4Circ3"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["trivial"], true);
    let (r, code) = xmod(&["cocycle", "--enumerate", "--xm", "AdS3", "--nerve", "RP26"]);
    assert_eq!(code, 2);
    assert!(r["payload"]["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn cohomology_command() {
    let (r, code) = xmod(&["cohomology", "--nerve", "RP26", "--coeff", "Z2", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(xmod(&["cohomology", "--nerve", "RP26", "--coeff", "S3", "--degree", "1"]).1, 2);
    assert_eq!(xmod(&["cohomology", "--nerve", "RP26", "--coeff", "Z2", "--degree", "3"]).1, 2);
}

#[test]
fn obstruction_command() {
    let (r, code) = xmod(&["obstruction", "--xm", "V4", "--nerve", "RP26", "--tau", "w1"]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["zero"], false);
    assert!(r["payload"]["certificate"].is_object());
    let (r, code) = xmod(&["obstruction", "--xm", "V4", "--nerve", "Sphere", "--tau", "trivial"]);
    assert_eq!(code, 0);
    assert!(r["payload"]["corrected_lift"].is_array());
    assert_eq!(xmod(&["obstruction", "--xm", "V4", "--nerve", "Disc2", "--tau", "[1,0,0]"]).1, 2);
}

#[test]
fn exactseq_command() {
    let (r, code) = xmod(&["exactseq", "--xm", "J3", "--nerve", "Circ3"]);
    assert_eq!(code, 0);
    let p = &r["payload"];
    assert_eq!((p["h1_order"].as_u64(), p["pi0_bibun_order"].as_u64(), p["map_order"].as_u64()), (Some(3), Some(6), Some(2)));
    assert_eq!(p["exact"], true);
}

#[test]
fn structures_command() {
    let (r, code) = xmod(&["structures", "--xm", "D1S3", "--nerve", "Disc2", "--g", "[0,0,0]"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["count"], 6);
    let (r, code) = xmod(&["structures", "--xm", "D1S3", "--nerve", "Circ3", "--g", "[1,0,0]"]);
    assert_eq!(code, 1);
    assert!(r["payload"]["failing_edge"].is_array());
}

#[test]
fn workspace_files_extend_and_diagnose() {
    let good = write_doc(
        "good.json",
        r#"{"groups": {"S3b": {"order": 6, "mul": [[0,1,2,3,4,5],[1,0,3,2,5,4],[2,4,0,5,1,3],[3,5,1,4,0,2],[4,2,5,0,3,1],[5,3,4,1,2,0]]}},
            "crossed_modules": {"AdS3b": {"adjoint": "S3b"}}}"#,
    );
    let (r, code) = xmod(&["--workspace", good.to_str().unwrap(), "check", "AdS3b"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["payload"]["pi0_order"], 1);

    let bad = write_doc(
        "bad.json",
        r#"{"groups": {"Loop": {"order": 3, "mul": [[0,1,2],[1,1,1],[2,2,2]]}},
            "nerves": {"Broken": {"vertices": 2, "edges": [[0,5]]}}}"#,
    );
    let (r, code) = xmod(&["--workspace", bad.to_str().unwrap(), "check", "J3"]);
    assert_eq!(code, 2);
    let w = r["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 2);
    assert!(w[0].as_str().unwrap().contains("no inverse for 1"));

    let syntax = write_doc("syntax.json", "{\n  \"groups\": {\n    \"X\": [\n}");
    let (r, code) = xmod(&["--workspace", syntax.to_str().unwrap(), "check", "J3"]);
    assert_eq!(code, 2);
    assert!(r["witnesses"][0].as_str().unwrap().contains("line 4"));
}

#[test]
fn human_output_is_plain_text() {
    let out = Command::new(env!("CARGO_BIN_EXE_xmod")).args(["--human", "check", "V4"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: check\nstatus: ok\n"));
    assert!(text.contains("pi0_order: 1"));
}
