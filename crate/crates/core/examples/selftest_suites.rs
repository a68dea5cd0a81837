//! Every self-test suite with a small case count.

use einstein_residue::verify::selftest::{selftest, SUITES};

fn main() -> einstein_residue::Result<()> {
    for suite in SUITES {
        let r = selftest(suite, 1, 5)?;
        println!("{suite}: {} checks, passed {}", r.checks.len(), r.passed);
    }
    Ok(())
}
