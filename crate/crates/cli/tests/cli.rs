use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const PROGRAM: &str = "-- count\nmain = length [1, 2 + 3 * 4]\n";
const SHEET: &str = "x@EBinop -> x { border-width: 1; }\nx@EInt -> x { color: teal; }\n";

fn css4code(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_css4code")).args(args).output().unwrap()
}

fn file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn render_writes_html() {
    let dir = tempfile::tempdir().unwrap();
    let code = file(dir.path(), "p.tiny", PROGRAM);
    let sheet = file(dir.path(), "s.c4c", SHEET);
    let out = dir.path().join("out.html");
    let layout = dir.path().join("layout.json");
    let o = css4code(&[
        "render", "--code", &code, "--sheet", &sheet, "-o", out.to_str().unwrap(), "--dump-layout", layout.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let html = fs::read_to_string(&out).unwrap();
    assert!(html.contains("teal") && html.contains("<svg"), "{html}");
    let l: serde_json::Value = serde_json::from_str(&fs::read_to_string(&layout).unwrap()).unwrap();
    assert!(l.is_object());
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let code = file(dir.path(), "p.tiny", PROGRAM);
    let sheet = file(dir.path(), "s.c4c", SHEET);
    let a = css4code(&["render", "--code", &code, "--sheet", &sheet, "--analysis", "names"]);
    let b = css4code(&["render", "--code", &code, "--sheet", &sheet, "--analysis", "names"]);
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_reports_arity_errors_with_positions() {
    let dir = tempfile::tempdir().unwrap();
    let sheet = file(dir.path(), "bad.c4c", "\nEBinop(x) -> x { color: red; }\n");
    let o = css4code(&["check", "--sheet", &sheet]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.c4c:2:"), "{err}");
}

#[test]
fn an_empty_sheet_is_fine() {
    let dir = tempfile::tempdir().unwrap();
    let code = file(dir.path(), "p.tiny", PROGRAM);
    let sheet = file(dir.path(), "empty.c4c", "");
    assert_eq!(css4code(&["check", "--sheet", &sheet]).status.code(), Some(0));
    let o = css4code(&["render", "--code", &code, "--sheet", &sheet]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("length"));
}

#[test]
fn code_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let code = file(dir.path(), "p.tiny", "main = (1 +\n");
    let sheet = file(dir.path(), "s.c4c", SHEET);
    let o = css4code(&["render", "--code", &code, "--sheet", &sheet]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p.tiny:"));
}

#[test]
fn missing_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let sheet = file(dir.path(), "s.c4c", SHEET);
    let missing = dir.path().join("nope.tiny");
    let o = css4code(&["render", "--code", missing.to_str().unwrap(), "--sheet", &sheet]);
    assert_eq!(o.status.code(), Some(2));
}
