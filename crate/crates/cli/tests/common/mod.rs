#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

pub const EXAMPLE_A: &str = "time,event\n10,1\n30,1\n55,1\n100,1\n120,1\n150,1\n200,1\n250,1\n300,1\n400,1\n";
pub const EXAMPLE_B: &str = "time,event\n10,1\n30,1\n55,1\n100,1\n120,1\n150,1\n200,1\n250,1\n300,1\n50,0\n";

pub fn csv_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

pub fn dssurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dssurv")).args(args).output().unwrap()
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Identical two-arm trial: the same rows labelled `v` and `p`.
pub fn mirrored_arms(rows: &[(f64, bool)]) -> String {
    let mut s = String::from("time,event,arm\n");
    for arm in ["v", "p"] {
        for (t, e) in rows {
            s.push_str(&format!("{t},{},{arm}\n", u8::from(*e)));
        }
    }
    s
}
