#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Prints the one-line verdict for an acceptance criterion. Written to the
/// raw stderr handle so it shows even when the harness captures output.
pub fn verdict(n: u32, ok: bool, detail: &str) {
    use std::io::Write;
    let line = format!("criterion {n}: {} — {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}
