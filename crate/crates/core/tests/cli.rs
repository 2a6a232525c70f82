mod common;

use std::process::{Command, Stdio};

use common::{golden_cases, golden_dir, run_cli};

fn args(line: &str) -> Vec<String> {
    line.split_whitespace().map(str::to_owned).collect()
}

#[test]
fn golden_outputs() {
    let cases = golden_cases();
    assert!(!cases.is_empty());
    for case in cases {
        let (code, out) = run_cli(&case.args, &case.input);
        assert_eq!(code, case.code, "{}", case.name);
        assert_eq!(out, case.expected, "{}", case.name);
    }
}

#[test]
fn reads_a_file_argument() {
    let path = golden_dir().join("hom.json");
    let expected = std::fs::read_to_string(golden_dir().join("hom.out")).unwrap();
    let (code, out) = run_cli(&args(&format!("hom {}", path.display())), "");
    assert_eq!((code, out), (0, expected));
}

#[test]
fn dash_means_stdin() {
    let input = std::fs::read_to_string(golden_dir().join("suspend.json")).unwrap();
    let expected = std::fs::read_to_string(golden_dir().join("suspend.out")).unwrap();
    assert_eq!(run_cli(&args("suspend -"), &input), (0, expected));
}

#[test]
fn writes_to_the_out_file() {
    let dir = std::env::temp_dir().join(format!("dcc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("scene.svg");
    let input = std::fs::read_to_string(golden_dir().join("render_aisle.json")).unwrap();
    let expected = std::fs::read_to_string(golden_dir().join("render_aisle.out")).unwrap();
    let (code, out) = run_cli(&args(&format!("--out {} render", target.display())), &input);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), expected);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn missing_input_file_is_a_domain_error() {
    let (code, out) = run_cli(&args("hom /nonexistent/input.json"), "");
    assert_eq!(code, 1);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(value["error"]["kind"].is_string());
}

#[test]
fn usage_errors_go_to_stderr() {
    let out = Command::new(env!("CARGO_BIN_EXE_dcc"))
        .arg("--window")
        .arg("not-a-number")
        .arg("hom")
        .stdin(Stdio::null())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn help_succeeds() {
    let (code, out) = run_cli(&args("--help"), "");
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}
