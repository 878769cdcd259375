#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn instance(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(name);
    path.to_string_lossy().into_owned()
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interdict"))
        .args(args)
        .env_remove("INTERDICT_SIZE_GUARD")
        .output()
        .expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Zeroes every `wall_time_ms` / `time_ms` value.
pub fn strip_times(text: &str) -> String {
    if text.starts_with("file,") {
        return text
            .lines()
            .map(|l| match l.rsplit_once(',') {
                Some((head, _)) => format!("{head},"),
                None => l.to_string(),
            })
            .collect::<Vec<_>>()
            .join("\n");
    }
    text.lines()
        .map(|l| match l.split_once("\"wall_time_ms\": ") {
            Some((head, _)) => format!("{head}\"wall_time_ms\": 0"),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}
