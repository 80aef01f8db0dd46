#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const BLESS_ENV: &str = "HYPCURVE_BLESS";

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn hypcurve(args: &[&str], env: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hypcurve"));
    cmd.args(args).env_remove("HYPCURVE_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Commands with golden outputs; arguments ending in `.json` name fixtures
/// and the output path is appended.
pub const GOLDEN: &[(&[&str], &str)] = &[
    (&["render", "--in", "circle.json", "--out"], "circle.svg"),
    (&["render", "--in", "circle.json", "--out"], "circle.csv"),
    (&["render", "--in", "horocycle.json", "--alpha", "--out"], "horocycle.svg"),
    (&["render", "--in", "hypercircle.json", "--model", "mercator", "--out"], "hypercircle.svg"),
    (&["classify", "--in", "disjoint.json", "--out"], "classify_disjoint.json"),
    (&["classify", "--in", "containing.json", "--out"], "classify_containing.json"),
    (&["classify", "--in", "disjoint_low.json", "--out"], "classify_disjoint_low.json"),
    (&["classify", "--in", "contained_outside.json", "--out"], "classify_contained_outside.json"),
    (&["reduce", "--in", "contained.json", "--out"], "reduce_contained.json"),
    (&["reduce", "--in", "disjoint.json", "--out"], "reduce_disjoint.json"),
    (&["reduce", "--in", "overlapping.json", "--out"], "reduce_overlapping.json"),
];

/// Runs every golden command into `dir` and returns the files written,
/// sorted by name. Commands must exit with 0 or 3.
pub fn run_golden(dir: &Path) -> Result<Vec<std::ffi::OsString>, String> {
    for (args, name) in GOLDEN {
        let mut full: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") { fixture(a).to_str().unwrap().to_string() } else { a.to_string() })
            .collect();
        full.push(p(&dir.join(name)).to_string());
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let (code, err) = hypcurve(&refs, &[]);
        if code != 0 && code != 3 {
            return Err(format!("{name}: exit {code}: {err}"));
        }
    }
    let mut produced: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    produced.sort();
    Ok(produced)
}
