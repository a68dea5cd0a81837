//! A seeded parallel campaign; identical seeds give identical reports.

use einstein_residue::verify::random::RandomOptions;
use einstein_residue::verify::report::{campaign, VerifyOptions};

fn main() -> einstein_residue::Result<()> {
    let run = || campaign(2, 100, 4, &RandomOptions::default(), &VerifyOptions::default());
    let (a, b) = (run()?, run()?);
    for c in &a.cases {
        println!("seed {:?}: total {} internal {}", c.seed, c.densities.total, c.internal_pass);
    }
    println!("byte-identical: {}", a.to_json() == b.to_json());
    Ok(())
}
