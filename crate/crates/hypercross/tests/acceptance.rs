//! Acceptance criteria 1-10, one PASS/FAIL line each. Criterion 10 also runs
//! the built binary twice per command and compares the bytes.

use std::path::Path;
use std::process::{Command, ExitCode};

use hypercross::suites::{run_criterion, SuiteResult, CRITERIA};

const SEED: u64 = 0;

fn binary(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hypercross")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn twice(args: &[&str]) -> Result<Vec<u8>, String> {
    let a = binary(args)?;
    let b = binary(args)?;
    if a != b {
        return Err(format!("{args:?}: two runs differ"));
    }
    Ok(a)
}

fn binary_determinism(dir: &Path) -> Result<usize, String> {
    let drawing = dir.join("drawing.json");
    let shaped = dir.join("shaped.json");
    let witness = dir.join("witness.json");
    let (drawing, shaped, witness) = (drawing.to_str().unwrap(), shaped.to_str().unwrap(), witness.to_str().unwrap());
    let mut bytes = 0;
    let gen = twice(&["gen", "--signature", "3x3", "--seed", "7"])?;
    std::fs::write(drawing, &gen).map_err(|e| e.to_string())?;
    bytes += gen.len();
    let gen = twice(&["gen", "--signature", "2x3+2x2", "--seed", "7"])?;
    std::fs::write(shaped, &gen).map_err(|e| e.to_string())?;
    bytes += gen.len();
    for args in [
        &["count", "--input", drawing, "--emit-pairs"][..],
        &["count", "--input", drawing, "--format", "structured"],
        &["witness", "--input", shaped],
        &["tverberg", "--input", drawing],
        &["bounds", "--n", "3..5", "--d", "2..8"],
    ] {
        bytes += twice(args)?.len();
    }
    binary(&["witness", "--input", shaped, "--output", witness])?;
    binary(&["verify", "--witness", witness, "--drawing", shaped])?;
    Ok(bytes)
}

fn main() -> ExitCode {
    let results: Vec<SuiteResult> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA.iter().map(|&(id, _)| s.spawn(move || run_criterion(id, SEED))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });

    let mut failed = 0;
    for mut result in results {
        if result.id == 10 {
            let dir = tempfile::tempdir().expect("temp dir");
            match binary_determinism(dir.path()) {
                Ok(bytes) => result.detail.push_str(&format!("; binary run twice per command: {bytes} bytes identical")),
                Err(e) => {
                    result.passed = false;
                    result.detail.push_str(&format!("; binary: {e}"));
                }
            }
        }
        println!("{result}");
        failed += usize::from(!result.passed);
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
