//! Fixtures and process helpers shared by the CLI test targets.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

/// Three states, a biased pair (every belief arrow funnels into the
/// `f(s) = s1` block), so belief and knowledge genuinely differ.
pub const MODEL: &str = r#"{
  "states": ["s0", "s1", "s2"],
  "types": {"V": ["s1", "s2"]},
  "functions": {
    "f": {"domain": "S", "codomain": "V", "map": {"s0": "s1", "s1": "s1", "s2": "s2"}},
    "g": {"domain": "V", "codomain": "V", "map": {"s1": "s1", "s2": "s1"}}
  },
  "belief_labels": {"a": ["f", "g"]},
  "knowledge_labels": {"a": ["f", "g"]},
  "valuation": {"P": ["s1", "s2"], "Q": ["s0"]}
}"#;

/// Serial, transitive, euclidean, but not symmetric.
pub const KD45_RELATION: &str =
    r#"{"states": ["s0", "s1"], "pairs": [["s0", "s1"], ["s1", "s1"]]}"#;

/// The identity on two states: an equivalence.
pub const EQUIVALENCE_RELATION: &str =
    r#"{"states": ["s0", "s1"], "pairs": [["s0", "s0"], ["s1", "s1"]]}"#;

/// `s1` has no successor.
pub const NON_SERIAL_RELATION: &str = r#"{"states": ["s0", "s1"], "pairs": [["s0", "s1"]]}"#;

/// Same shape over the model's three states, for `--override-relation`.
pub const OVERRIDE_RELATION: &str =
    r#"{"states": ["s0", "s1", "s2"], "pairs": [["s0", "s1"]]}"#;

pub fn doxa() -> Command {
    Command::new(env!("CARGO_BIN_EXE_doxa"))
}

pub fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).expect("fixture writes succeed");
    path
}

pub fn stdout_of(output: &std::process::Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

pub fn stderr_of(output: &std::process::Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}
