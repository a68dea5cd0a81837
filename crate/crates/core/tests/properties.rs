//! Property tests over seeded random data; every comparison is exact.

use num_traits::Zero;
use proptest::prelude::*;

use einstein_residue::closed_forms::{einstein_closed_form, part1_closed_form, part2_closed_form};
use einstein_residue::operators::laplace_inverse_jets;
use einstein_residue::residue::{density_report, einstein_density};
use einstein_residue::scalar::{int, rat};
use einstein_residue::verify::random::random_geometry;
use einstein_residue::verify::spec_file::{parse_geometry, spec_from_geometry};
use einstein_residue::{generate_gammas, CliffordElement, GaussianRational, PointGeometry, Rational, RiemannTensor, SymbolJet, TPoly, VectorJet};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(small_rational(), n * (n + 1) / 2).prop_map(move |upper| {
        let mut p = vec![vec![Rational::zero(); n]; n];
        let mut it = upper.into_iter();
        for a in 0..n {
            for b in a..n {
                let x = it.next().unwrap();
                p[a][b] = x.clone();
                p[b][a] = x;
            }
        }
        p
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), n)
}

fn matmul(p: &[Vec<Rational>], q: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = p.len();
    (0..n).map(|a| (0..n).map(|b| (0..n).map(|k| &p[a][k] * &q[k][b]).sum()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kulkarni_nomizu_square_contractions(p in symmetric(4)) {
        let r = RiemannTensor::kulkarni_nomizu_square(&p);
        prop_assert!(r.validate().is_ok());
        let tr: Rational = (0..4).map(|a| p[a][a].clone()).sum();
        let p2 = matmul(&p, &p);
        let ric = r.ricci().unwrap();
        for a in 0..4 {
            for b in 0..4 {
                prop_assert_eq!(&ric[a][b], &(&tr * &p[a][b] - &p2[a][b]));
            }
        }
        let tr2: Rational = (0..4).map(|a| p2[a][a].clone()).sum();
        prop_assert_eq!(r.scalar().unwrap(), &tr * &tr - tr2);
    }

    #[test]
    fn random_geometries_validate_and_round_trip(seed in any::<u64>(), m in 2usize..=3) {
        let g = random_geometry(m, seed, 3);
        prop_assert!(g.riemann.validate().is_ok());
        prop_assert_eq!(&random_geometry(m, seed, 3), &g);
        let text = serde_json::to_string(&spec_from_geometry(&g)).unwrap();
        prop_assert_eq!(parse_geometry(&text).unwrap().geometry, g);
    }

    #[test]
    fn printed_totals_are_consistent(seed in any::<u64>()) {
        let g = random_geometry(2, seed, 3);
        let lhs = &part1_closed_form(&g).unwrap() + &part2_closed_form(&g).unwrap();
        prop_assert_eq!(lhs, einstein_closed_form(&g).unwrap());
    }

    #[test]
    fn translation_invariance_with_constant_fields(y in vector(4), v in vector(4), w in vector(4)) {
        let g = PointGeometry::flat(2)
            .with_y(VectorJet::constant(y))
            .with_v(VectorJet::constant(v))
            .with_w(VectorJet::constant(w));
        let d = einstein_density(&g, &generate_gammas(2).unwrap()).unwrap();
        prop_assert!(d.is_zero(), "density {}", d);
    }

    #[test]
    fn laplace_jets_match_the_exact_flat_expansion(y in vector(4), p in 1usize..=3) {
        let g = PointGeometry::flat(2).with_y(VectorJet::constant(y.clone()));
        let gammas = generate_gammas(2).unwrap();
        let jets = laplace_inverse_jets(&g, p, &gammas).unwrap();
        let (expected_1, expected_2) = flat_expansion(&y, p);
        prop_assert!(jets.leading.eval_x0().equivalent(&SymbolJet::monomial(CliffordElement::identity(2), &[], 2 * p as i32)));
        prop_assert!(jets.subleading.eval_x0().equivalent(&expected_1));
        prop_assert!(jets.sub_subleading.total().unwrap().equivalent(&expected_2));
    }
}

/// The pieces of degree `−2p−1` and `−2p−2` of `(Σ (ξ_a − itY_a)²)^{−p}`.
fn flat_expansion(y: &[Rational], p: usize) -> (SymbolJet, SymbolJet) {
    let (n, k) = (y.len(), 2 * p as i32);
    let pi = p as i64;
    let scalar = |c: TPoly| CliffordElement::scalar(2, c);
    let mut first = SymbolJet::empty(2, -k - 1, 0);
    let mut second = SymbolJet::empty(2, -k - 2, 0);
    let norm: Rational = y.iter().map(|a| a * a).sum();
    second.push_indices(scalar(TPoly::monomial(GaussianRational::real(int(pi) * norm), 2)), &[], &[], k + 2).unwrap();
    for a in 0..n {
        let c = GaussianRational::new(Rational::zero(), int(2 * pi) * &y[a]);
        first.push_indices(scalar(TPoly::monomial(c, 1)), &[], &[a], k + 2).unwrap();
        for b in 0..n {
            let c = GaussianRational::real(int(-2 * pi * (pi + 1)) * &y[a] * &y[b]);
            second.push_indices(scalar(TPoly::monomial(c, 2)), &[], &[a, b], k + 4).unwrap();
        }
    }
    (first, second)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn density_is_real_and_at_most_quadratic(seed in any::<u64>()) {
        let d = density_report(&random_geometry(2, seed, 3), &generate_gammas(2).unwrap()).unwrap();
        prop_assert!(d.total.degree().is_none_or(|k| k <= 2));
        prop_assert_eq!(&d.part2, &d.oracle_part2);
    }

    #[test]
    fn bilinear_in_w(seed in any::<u64>(), q in small_rational()) {
        let g = random_geometry(2, seed, 3);
        let gammas = generate_gammas(2).unwrap();
        let base = einstein_density(&g, &gammas).unwrap();
        let scaled = einstein_density(&g.with_w(g.w.scaled(&q)), &gammas).unwrap();
        prop_assert_eq!(scaled, base.scale(&q));
        let other = g.with_w(g.v.clone());
        let summed = einstein_density(&g.with_w(g.w.sum(&g.v)), &gammas).unwrap();
        prop_assert_eq!(summed, &base + &einstein_density(&other, &gammas).unwrap());
    }
}
