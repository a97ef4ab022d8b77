//! Runs the built-in acceptance suite and prints one line per check.

use isotropy::selftest::{run_all, Config};

fn main() {
    let report = run_all(&Config { seed: 42, mutation: None });
    for c in &report.criteria {
        println!("{:>2} {} {} ({} ms)", c.id, if c.passed { "ok  " } else { "FAIL" }, c.name, c.elapsed_ms);
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
