//! Acceptance criteria, one line per criterion. Every tolerance is exact:
//! all quantities are integers or rationals compared for equality or by
//! integer inequality.
//!
//! Runs without the libtest harness so the report is always printed.

use std::process::{Command, ExitCode};
use std::time::Instant;

use isotropy::selftest::{self, Config};

const SEED: u64 = 42;

/// Runs `selftest` through the binary and returns its JSON with timing
/// fields removed.
fn selftest_output(seed: u64) -> Result<serde_json::Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_isotropy"))
        .args(["selftest", "--seed", &seed.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("selftest exited with {}", out.status));
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok(selftest::strip_timing(&v))
}

fn determinism_via_binary() -> (bool, String) {
    match (selftest_output(SEED), selftest_output(SEED)) {
        (Ok(a), Ok(b)) => {
            let (a, b) = (a.to_string(), b.to_string());
            (a == b, format!("two selftest runs, {} bytes each, identical: {}", a.len(), a == b))
        }
        (Err(e), _) | (_, Err(e)) => (false, e),
    }
}

fn main() -> ExitCode {
    let cfg = Config {
        seed: SEED,
        mutation: None,
    };
    let start = Instant::now();
    let mut failed = 0;
    for id in 1..=11u32 {
        let t = Instant::now();
        let (passed, detail) = if id == 11 {
            determinism_via_binary()
        } else {
            let r = selftest::run_criterion(id, &cfg);
            (r.passed, r.detail)
        };
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {id:>2} [{}] {} (exact; {} ms): {detail}",
            if passed { "PASS" } else { "FAIL" },
            selftest::NAMES[(id - 1) as usize],
            t.elapsed().as_millis()
        );
    }
    println!("{} of 11 criteria passed in {} ms", 11 - failed, start.elapsed().as_millis());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
