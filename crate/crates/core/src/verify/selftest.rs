//! Self-test suites: each checks one layer against an independent oracle.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{generate_gammas, wick_trace_oracle, CliffordElement, GammaFamily};
use crate::error::{EngineError, Result};
use crate::residue::{density_report, sphere_moment};
use crate::scalar::{format_rational, int, GaussianRational, Rational, TPoly};
use crate::symbol::SymbolJet;
use crate::verify::random::{random_geometry, rational};
use crate::verify::report::{symbol_oracle_check, Check};

/// Suite names accepted by [`selftest`].
pub const SUITES: [&str; 4] = ["traces", "moments", "jets", "oracle"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub checks: Vec<Check>,
    pub passed: bool,
}

pub fn selftest(suite: &str, seed: u64, cases: usize) -> Result<SuiteReport> {
    let checks = match suite {
        "traces" => traces(seed, cases)?,
        "moments" => moments(),
        "jets" => jets(seed, cases)?,
        "oracle" => oracle(seed, cases)?,
        other => return Err(EngineError::Parse(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport { suite: suite.into(), seed, cases, passed: checks.iter().all(|c| c.passed), checks })
}

fn check(name: String, passed: bool, detail: impl Into<String>) -> Check {
    Check { name, passed, detail: detail.into() }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng, 4)).collect()
}

fn poly_vector(v: &[Rational]) -> Vec<TPoly> {
    v.iter().cloned().map(TPoly::from_rational).collect()
}

fn normalized(e: &CliffordElement) -> TPoly {
    e.normalized_trace()
}

fn random_element(rng: &mut ChaCha8Rng, g: &GammaFamily) -> CliffordElement {
    let mut out = g.zero();
    for _ in 0..3 {
        let len = rng.random_range(0..4);
        let idx: Vec<usize> = (0..len).map(|_| rng.random_range(0..g.n())).collect();
        let c = GaussianRational::new(rational(rng, 3), rational(rng, 3));
        out.add_scaled(&g.product(&idx), &c);
    }
    out
}

fn traces(seed: u64, cases: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in [2, 3] {
        let g = generate_gammas(m)?;
        let n = g.n();
        let minus_two = g.identity().scale_rational(&int(-2));
        let mut anti = true;
        for a in 0..n {
            for b in 0..n {
                let s = &(g.gamma(a) * g.gamma(b)) + &(g.gamma(b) * g.gamma(a));
                anti &= if a == b { s == minus_two } else { s.is_zero() };
            }
        }
        out.push(check(format!("m={m} anticommutation"), anti, "gamma_a gamma_b + gamma_b gamma_a = -2 delta_ab"));

        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m as u64));
        let (mut bilinear, mut cyclic, mut odd, mut wick) = (true, true, true, true);
        for _ in 0..cases {
            let x = random_vector(&mut rng, n);
            let y = random_vector(&mut rng, n);
            let cx = g.clifford_of_rational(&x)?;
            let cy = g.clifford_of_rational(&y)?;
            let dot: Rational = x.iter().zip(&y).map(|(a, b)| a * b).sum();
            bilinear &= normalized(&(&cx * &cy)) == TPoly::from_rational(-dot);

            let (a, b, c) = (random_element(&mut rng, &g), random_element(&mut rng, &g), random_element(&mut rng, &g));
            cyclic &= (&(&a * &b) * &c).trace() == (&(&c * &a) * &b).trace();

            for p in [1usize, 3, 5] {
                let idx: Vec<usize> = (0..p).map(|_| rng.random_range(0..n)).collect();
                odd &= g.product(&idx).trace().is_zero();
            }

            for p in [2usize, 4, 6] {
                let vs: Vec<Vec<Rational>> = (0..p).map(|_| random_vector(&mut rng, n)).collect();
                let mut prod = g.identity();
                for v in &vs {
                    prod = &prod * &g.clifford_of_rational(v)?;
                }
                let polys: Vec<Vec<TPoly>> = vs.iter().map(|v| poly_vector(v)).collect();
                wick &= normalized(&prod) == wick_trace_oracle(&polys);
            }
        }
        out.push(check(format!("m={m} bilinear trace"), bilinear, "tr(c(X)c(Y))/tr(1) = -g(X,Y)"));
        out.push(check(format!("m={m} cyclicity"), cyclic, "tr(ABC) = tr(CAB)"));
        out.push(check(format!("m={m} odd traces"), odd, "products of 1, 3, 5 gammas are traceless"));
        out.push(check(format!("m={m} wick"), wick, "matrix traces of 2, 4, 6 vectors match the contraction recursion"));
    }
    Ok(out)
}

/// `E[x^β]` for a standard Gaussian by integration by parts,
/// `E[x_j^b · rest] = (b−1) E[x_j^{b−2} · rest]`.
fn gaussian_moment(beta: &[u8]) -> Rational {
    match beta.iter().position(|&b| b > 0) {
        None => Rational::one(),
        Some(j) if beta[j] == 1 => Rational::zero(),
        Some(j) => {
            let mut rest = beta.to_vec();
            rest[j] -= 2;
            int(i64::from(beta[j]) - 1) * gaussian_moment(&rest)
        }
    }
}

fn compositions(n: usize, total: u8) -> Vec<Vec<u8>> {
    if n == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut tail in compositions(n - 1, total - first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn factorial(k: u8) -> Rational {
    (1..=i64::from(k)).map(int).product()
}

/// `E|x|^{2B}` by expanding `(Σ x_j²)^B` multinomially.
fn gaussian_norm_moment(n: usize, half: u8) -> Rational {
    compositions(n, half)
        .into_iter()
        .map(|k| {
            let coeff = factorial(half) / k.iter().map(|&e| factorial(e)).product::<Rational>();
            let beta: Vec<u8> = k.iter().map(|e| 2 * e).collect();
            coeff * gaussian_moment(&beta)
        })
        .sum()
}

fn moments() -> Vec<Check> {
    let mut out = Vec::new();
    for n in [4usize, 6] {
        let (mut ratio, mut count) = (true, 0usize);
        for half in 0..=4u8 {
            let norm = gaussian_norm_moment(n, half);
            for k in compositions(n, half) {
                let beta: Vec<u8> = k.iter().map(|e| 2 * e).collect();
                ratio &= sphere_moment(&beta, n) == gaussian_moment(&beta) / &norm;
                count += 1;
            }
        }
        out.push(check(format!("n={n} gaussian ratio"), ratio, format!("{count} even exponents up to total degree 8")));

        let unit = |b: &[u8]| sphere_moment(b, n);
        let mut second = Rational::zero();
        let mut fourth = true;
        for j in 0..n {
            let mut b = vec![0u8; n];
            b[j] = 2;
            second += unit(&b);
        }
        for k in 0..n {
            let mut bk = vec![0u8; n];
            bk[k] = 2;
            let mut s = Rational::zero();
            for j in 0..n {
                let mut b = bk.clone();
                b[j] += 2;
                s += unit(&b);
            }
            fourth &= s == unit(&bk);
        }
        out.push(check(format!("n={n} second moment"), second.is_one(), format!("sum of <xi_j^2> = {}", format_rational(&second))));
        out.push(check(format!("n={n} fourth moment"), fourth, "sum_j <xi_j^2 xi_k^2> = <xi_k^2>"));
    }
    out
}

fn random_jet(rng: &mut ChaCha8Rng, g: &GammaFamily, degree: i32, with_x: bool) -> Result<SymbolJet> {
    let n = g.n();
    let mut jet = SymbolJet::empty(g.m(), degree, if with_x { 2 } else { 0 });
    for _ in 0..3 {
        let order = rng.random_range(0..4usize);
        let xi: Vec<usize> = (0..order).map(|_| rng.random_range(0..n)).collect();
        let x: Vec<usize> = if with_x { (0..rng.random_range(0..3)).map(|_| rng.random_range(0..n)).collect() } else { Vec::new() };
        jet.push_indices(random_element(rng, g), &x, &xi, order as i32 - degree)?;
    }
    Ok(jet)
}

fn jets(seed: u64, cases: usize) -> Result<Vec<Check>> {
    let g = generate_gammas(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut euler, mut assoc, mut degrees) = (true, true, true);
    for _ in 0..cases {
        let d = rng.random_range(-3..=2);
        let a = random_jet(&mut rng, &g, d, true)?;
        euler &= a.euler().equivalent(&a.scale(&GaussianRational::real(int(i64::from(d)))));

        let ds: [i32; 3] = [rng.random_range(-2..=1), rng.random_range(-2..=1), rng.random_range(-2..=1)];
        let p = random_jet(&mut rng, &g, ds[0], false)?;
        let q = random_jet(&mut rng, &g, ds[1], false)?;
        let r = random_jet(&mut rng, &g, ds[2], false)?;
        let left = p.product(&q)?.product(&r)?;
        let right = p.product(&q.product(&r)?)?;
        assoc &= left.equivalent(&right);

        let pq = p.product(&q)?;
        degrees &= pq.degree() == p.degree() + q.degree()
            && p.d_xi(0).degree() == p.degree() - 1
            && p.mul_xi(0).degree() == p.degree() + 1
            && a.d_x(0)?.max_x_order() + 1 == a.max_x_order();
    }
    Ok(vec![
        check("euler identity".into(), euler, "sum_j xi_j d_xi_j sigma = degree * sigma"),
        check("associativity".into(), assoc, "(pq)r = p(qr) for x-independent jets"),
        check("degree bookkeeping".into(), degrees, "products add degrees, d_xi lowers, xi raises, d_x lowers the x-order"),
    ])
}

fn oracle(seed: u64, cases: usize) -> Result<Vec<Check>> {
    let gammas = generate_gammas(2)?;
    let mut out = Vec::new();
    for i in 0..cases {
        let s = seed.wrapping_add(i as u64);
        let g = random_geometry(2, s, 3);
        let mut c = symbol_oracle_check(&g, &gammas)?;
        c.name = format!("seed {s} symbols");
        out.push(c);
        let d = density_report(&g, &gammas)?;
        out.push(check(format!("seed {s} part2"), d.part2 == d.oracle_part2, format!("{} vs {}", d.part2, d.oracle_part2)));
    }
    Ok(out)
}
