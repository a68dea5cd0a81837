//! The residue density on the unit-curvature worked case and on a random geometry.

use einstein_residue::geometry::{PointGeometry, RiemannTensor, VectorJet};
use einstein_residue::residue::{density_report, part1_breakdown};
use einstein_residue::scalar::int;
use einstein_residue::verify::random::random_geometry;
use einstein_residue::generate_gammas;

fn main() -> einstein_residue::Result<()> {
    let gammas = generate_gammas(2)?;
    let mut g = PointGeometry::flat(2);
    g.riemann = RiemannTensor::constant_curvature(4, &int(1));
    g.v = VectorJet::basis(4, 0);
    g.w = VectorJet::basis(4, 0);
    let d = density_report(&g, &gammas)?;
    println!("unit curvature: part1 {}, part2 {}, total {}", d.part1, d.part2, d.total);
    for (i, h) in d.h.iter().enumerate() {
        println!("  H{} = {h}", i + 1);
    }

    let r = random_geometry(2, 1, 3);
    let d = density_report(&r, &gammas)?;
    println!("random seed 1: total {}", d.total);
    for (name, v) in part1_breakdown(&r, &gammas)?.named() {
        println!("  part1 {name}: {v}");
    }
    Ok(())
}
