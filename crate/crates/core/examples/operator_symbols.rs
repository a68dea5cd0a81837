//! Symbols of the fluctuated Dirac operator and of c(v)D_t c(w)D_t, with the
//! transcribed formulas checked against generic composition.

use einstein_residue::operators::{composed_ab, dirac_jets, laplace_inverse_jets, transcribed_ab};
use einstein_residue::verify::random::random_geometry;
use einstein_residue::generate_gammas;

fn main() -> einstein_residue::Result<()> {
    let g = random_geometry(2, 5, 3);
    let gammas = generate_gammas(2)?;
    for piece in dirac_jets(&g, &gammas)?.pieces() {
        println!("sigma_{}(D_t): {} terms", piece.degree(), piece.len());
    }
    let lap = laplace_inverse_jets(&g, 2, &gammas)?;
    for (name, jet) in lap.sub_subleading.named() {
        println!("sigma_-6 part {name}: {} terms", jet.len());
    }
    let (tr, co) = (transcribed_ab(&g, &gammas)?, composed_ab(&g, &gammas)?);
    for d in [2, 1, 0] {
        let same = tr.piece(d).zip(co.piece(d)).is_some_and(|(a, b)| a.equivalent(b));
        println!("sigma_{d}(AB): transcribed == composed: {same}");
    }
    Ok(())
}
