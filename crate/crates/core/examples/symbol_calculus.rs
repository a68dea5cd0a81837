//! Symbol jets: products, derivatives, composition and canonical equality.

use einstein_residue::scalar::GaussianRational;
use einstein_residue::symbol::SymbolFamily;
use einstein_residue::{compose, generate_gammas, SymbolJet};

fn main() -> einstein_residue::Result<()> {
    let g = generate_gammas(2)?;
    let id = g.identity();

    // ξ_1 composed with the multiplication operator x_1: the commutator term is −i.
    let xi = SymbolFamily::new(vec![SymbolJet::monomial(id.clone(), &[0], 0)])?;
    let mut x = SymbolJet::empty(2, 0, 2);
    x.push_indices(id.clone(), &[0], &[], 0)?;
    let composed = compose(&xi, &SymbolFamily::new(vec![x])?, 0, 2)?.eval_x0();
    let (_, c) = composed.terms().next().expect("one term");
    println!("sigma_0(xi_1 o x_1) at x0 = {}", c.get(0, 0));

    // ‖ξ‖^{-2} Σ ξ_a² equals 1 after canonicalization.
    let mut sum = SymbolJet::empty(2, 0, 0);
    for a in 0..4 {
        sum.push_indices(id.clone(), &[], &[a, a], 2)?;
    }
    println!("sum xi_a^2 / |xi|^2 == 1: {}", sum.equivalent(&SymbolJet::monomial(id.clone(), &[], 0)));

    let jet = SymbolJet::monomial(id, &[0, 1], 4);
    let euler = jet.euler();
    println!("Euler identity at degree {}: {}", jet.degree(), euler.equivalent(&jet.scale(&GaussianRational::from_int(-2))));
    Ok(())
}
