//! Engine values against the printed closed forms, with per-power attribution.

use einstein_residue::verify::random::random_geometry;
use einstein_residue::verify::report::{run_verify, VerifyOptions};

fn main() -> einstein_residue::Result<()> {
    let g = random_geometry(2, 2, 3);
    let r = run_verify(&g, &VerifyOptions { per_term: true, strict_paper: false })?;
    for p in r.printed.iter().filter(|p| !p.matches) {
        println!("{} t^{}: engine {} printed {} diff {}", p.quantity, p.power, p.engine, p.printed, p.diff);
    }
    for d in &r.discrepancies {
        let terms: Vec<String> = d.term_diffs.iter().map(|t| format!("{} {}", t.term, t.diff)).collect();
        println!("total t^{} off by {}: {} + bookkeeping {}", d.power, d.total_diff, terms.join(", "), d.bookkeeping_residual);
    }
    println!("internal suite passed: {}", r.internal_pass);
    Ok(())
}
