//! Gamma matrices by doubling, the Clifford relation and the Wick trace oracle.

use einstein_residue::scalar::{int, TPoly};
use einstein_residue::{generate_gammas, wick_trace_oracle};

fn main() -> einstein_residue::Result<()> {
    let g = generate_gammas(2)?;
    println!("m = {}, n = {}, matrices {}x{}", g.m(), g.n(), g.identity().dim(), g.identity().dim());

    let minus_two = g.identity().scale_rational(&int(-2));
    let anti = &(g.gamma(0) * g.gamma(0)) + &(g.gamma(0) * g.gamma(0));
    println!("gamma_1 gamma_1 + gamma_1 gamma_1 = -2: {}", anti == minus_two);

    let e = |a: usize| (0..4).map(|i| TPoly::from_int(i64::from(i == a))).collect::<Vec<_>>();
    let vectors = [e(0), e(1), e(0), e(1)];
    let matrix = g.product(&[0, 1, 0, 1]).normalized_trace();
    println!("tr(g1 g2 g1 g2)/tr(1): matrix {matrix}, wick {}", wick_trace_oracle(&vectors));
    Ok(())
}
