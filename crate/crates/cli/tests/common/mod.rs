#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn krull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krull")).args(args).output().expect("krull binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 report")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

/// Runs `krull args` and compares stdout with the golden file; set
/// `KRULL_BLESS=1` to rewrite the file instead.
pub fn golden(name: &str, args: &[&str]) -> Result<(), String> {
    let out = krull(args);
    if out.status.code() != Some(0) {
        return Err(format!("{args:?} exited with {:?}: {}", out.status.code(), stderr(&out)));
    }
    let got = stdout(&out);
    let path = golden_path(name);
    if std::env::var_os("KRULL_BLESS").is_some() {
        std::fs::write(&path, &got).expect("write golden file");
        return Ok(());
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if got == want {
        Ok(())
    } else {
        Err(format!("{} differs:\n--- want\n{want}\n--- got\n{got}", path.display()))
    }
}

/// `(golden file, arguments)`; data file names are resolved by the caller.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("dim_hyperbola.yaml", &["dim", "hyperbola.krl"]),
    ("dim_two_rows.yaml", &["dim", "two_rows.krl"]),
    ("dim_twisted_cubic.yaml", &["dim", "twisted_cubic.krl"]),
    ("profile_coordinate_line.yaml", &["profile", "coordinate_line.krl"]),
    ("profile_hyperbola.yaml", &["profile", "hyperbola.krl"]),
    ("monicize_power.yaml", &["monicize", "--poly", "x1*x2+1"]),
    ("monicize_identity.yaml", &["monicize", "--poly", "x2^3+x1"]),
];

/// Checks every golden case.
pub fn all_golden() -> Vec<Result<(), String>> {
    GOLDEN
        .iter()
        .map(|(name, args)| {
            let resolved: Vec<String> = args
                .iter()
                .map(|a| if a.ends_with(".krl") { data(a).display().to_string() } else { a.to_string() })
                .collect();
            let refs: Vec<&str> = resolved.iter().map(String::as_str).collect();
            golden(name, &refs)
        })
        .collect()
}
