//! Gamma-matrix realization of the negative-definite Clifford algebra on
//! `C^(2^m)` and the trace machinery built on it.
//!
//! The generators satisfy `γ_i γ_j + γ_j γ_i = -2 δ_ij · Id`. They are built
//! by the usual doubling construction from the `m = 1` pair
//!
//! ```text
//! γ_1 = [[i, 0], [0, -i]],   γ_2 = [[0, 1], [-1, 0]]
//! ```
//!
//! and every entry is one of `0, ±1, ±i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{EngineError, Result};
use crate::scalar::{GaussianRational, Rational, TPoly};

/// Supported half-dimensions (`n = 2m`).
pub const MIN_M: usize = 1;
pub const MAX_M: usize = 4;

/// Endomorphism of the spinor space: a `2^m × 2^m` matrix over `TPoly`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    m: usize,
    entries: Vec<TPoly>,
}

impl CliffordElement {
    pub fn zero(m: usize) -> Self {
        let d = 1usize << m;
        Self { m, entries: vec![TPoly::zero(); d * d] }
    }

    pub fn identity(m: usize) -> Self {
        Self::scalar(m, TPoly::one())
    }

    /// `p · Id`.
    pub fn scalar(m: usize, p: TPoly) -> Self {
        let mut out = Self::zero(m);
        let d = out.dim();
        if !p.is_zero() {
            for i in 0..d {
                out.entries[i * d + i] = p.clone();
            }
        }
        out
    }

    /// Row-major entries; the length must be `4^m`.
    pub fn from_entries(m: usize, entries: Vec<TPoly>) -> Result<Self> {
        let d = 1usize << m;
        if entries.len() != d * d {
            return Err(EngineError::Dimension { context: "clifford entries", expected: d * d, got: entries.len() });
        }
        Ok(Self { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn get(&self, row: usize, col: usize) -> &TPoly {
        &self.entries[row * self.dim() + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TPoly::is_zero)
    }

    pub fn scale(&self, p: &TPoly) -> Self {
        if p.is_zero() {
            return Self::zero(self.m);
        }
        Self { m: self.m, entries: self.entries.iter().map(|e| e * p).collect() }
    }

    pub fn scale_gauss(&self, c: &GaussianRational) -> Self {
        Self { m: self.m, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self { m: self.m, entries: self.entries.iter().map(|e| e.scale_rational(q)).collect() }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &CliffordElement, c: &GaussianRational) {
        debug_assert_eq!(self.m, other.m);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                a.add_scaled(b, c);
            }
        }
    }

    /// `self += p · other` for a `t`-polynomial `p`.
    pub fn add_scaled_poly(&mut self, other: &CliffordElement, p: &TPoly) {
        debug_assert_eq!(self.m, other.m);
        if p.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += &(b * p);
            }
        }
    }

    pub fn trace(&self) -> TPoly {
        let d = self.dim();
        let mut acc = TPoly::zero();
        for i in 0..d {
            acc += &self.entries[i * d + i];
        }
        acc
    }

    /// `trace / 2^m`, so that the identity has normalized trace 1.
    pub fn normalized_trace(&self) -> TPoly {
        self.trace().scale_rational(&Rational::new(1.into(), (self.dim() as i64).into()))
    }

    /// Degree in `t` over all entries; `None` for the zero matrix.
    pub fn t_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(TPoly::degree).max()
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        writeln!(f, "CliffordElement(m={}) [", self.m)?;
        for r in 0..d {
            let row: Vec<String> = (0..d).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        debug_assert_eq!(self.m, rhs.m);
        CliffordElement { m: self.m, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        debug_assert_eq!(self.m, rhs.m);
        CliffordElement { m: self.m, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        CliffordElement { m: self.m, entries: self.entries.iter().map(|a| -a.clone()).collect() }
    }
}

impl<'a> Mul<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        debug_assert_eq!(self.m, rhs.m);
        let d = self.dim();
        let mut out = vec![TPoly::zero(); d * d];
        // gamma products are monomial matrices, so skip zeros on both sides
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &rhs.entries[k * d + j];
                    if !b.is_zero() {
                        out[i * d + j] += &(a * b);
                    }
                }
            }
        }
        CliffordElement { m: self.m, entries: out }
    }
}

fn kron(a: &CliffordElement, b: &[[GaussianRational; 2]; 2]) -> CliffordElement {
    let d = a.dim();
    let nd = 2 * d;
    let mut entries = vec![TPoly::zero(); nd * nd];
    for i in 0..d {
        for j in 0..d {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for (p, row) in b.iter().enumerate() {
                for (q, y) in row.iter().enumerate() {
                    entries[(2 * i + p) * nd + (2 * j + q)] = x.scale(y);
                }
            }
        }
    }
    CliffordElement { m: a.m + 1, entries }
}

/// The generators `γ_1 … γ_{2m}` for one spinor dimension.
#[derive(Clone, Debug)]
pub struct GammaFamily {
    m: usize,
    gammas: Vec<CliffordElement>,
}

/// Builds `n = 2m` gamma matrices with `γ_iγ_j + γ_jγ_i = -2δ_ij·Id`.
pub fn generate_gammas(m: usize) -> Result<GammaFamily> {
    if !(MIN_M..=MAX_M).contains(&m) {
        return Err(EngineError::Range { what: "m", value: m, range: "1..=4" });
    }
    let g = |re: i64, im: i64| GaussianRational::new(crate::scalar::int(re), crate::scalar::int(im));
    let c = |v: GaussianRational| TPoly::constant(v);
    let mut gammas = vec![
        CliffordElement::from_entries(1, vec![c(g(0, 1)), TPoly::zero(), TPoly::zero(), c(g(0, -1))])?,
        CliffordElement::from_entries(1, vec![TPoly::zero(), c(g(1, 0)), c(g(-1, 0)), TPoly::zero()])?,
    ];
    let tau3 = [[g(1, 0), g(0, 0)], [g(0, 0), g(-1, 0)]];
    let a = [[g(0, 0), g(1, 0)], [g(-1, 0), g(0, 0)]];
    let b = [[g(0, 0), g(0, 1)], [g(0, 1), g(0, 0)]];
    for level in 1..m {
        let id = CliffordElement::identity(level);
        let mut next: Vec<CliffordElement> = gammas.iter().map(|gm| kron(gm, &tau3)).collect();
        next.push(kron(&id, &a));
        next.push(kron(&id, &b));
        gammas = next;
    }
    Ok(GammaFamily { m, gammas })
}

impl GammaFamily {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Real dimension `n = 2m`.
    pub fn n(&self) -> usize {
        2 * self.m
    }

    pub fn gamma(&self, a: usize) -> &CliffordElement {
        &self.gammas[a]
    }

    pub fn gammas(&self) -> &[CliffordElement] {
        &self.gammas
    }

    pub fn identity(&self) -> CliffordElement {
        CliffordElement::identity(self.m)
    }

    pub fn zero(&self) -> CliffordElement {
        CliffordElement::zero(self.m)
    }

    /// `c(X) = Σ_a X_a γ_a`.
    pub fn clifford_of(&self, coeffs: &[TPoly]) -> Result<CliffordElement> {
        if coeffs.len() != self.n() {
            return Err(EngineError::Dimension { context: "clifford_of", expected: self.n(), got: coeffs.len() });
        }
        let mut out = self.zero();
        for (c, g) in coeffs.iter().zip(&self.gammas) {
            out.add_scaled_poly(g, c);
        }
        Ok(out)
    }

    /// `c(X)` for a real rational vector.
    pub fn clifford_of_rational(&self, coeffs: &[Rational]) -> Result<CliffordElement> {
        if coeffs.len() != self.n() {
            return Err(EngineError::Dimension { context: "clifford_of", expected: self.n(), got: coeffs.len() });
        }
        let mut out = self.zero();
        for (c, g) in coeffs.iter().zip(&self.gammas) {
            out.add_scaled(g, &GaussianRational::real(c.clone()));
        }
        Ok(out)
    }

    /// `γ_{i_1} γ_{i_2} ⋯` (identity for an empty list).
    pub fn product(&self, indices: &[usize]) -> CliffordElement {
        let mut out = self.identity();
        for &i in indices {
            out = &out * &self.gammas[i];
        }
        out
    }
}

/// Normalized trace `tr(c(X_1)⋯c(X_p)) / tr(Id)` computed purely from the
/// anticommutation relation, without any matrices:
///
/// ```text
/// τ(X_1 … X_p) = Σ_{k≥2} (-1)^k · (-⟨X_1, X_k⟩) · τ(X_2 … X̂_k … X_p)
/// ```
///
/// with `τ() = 1` and `τ(X) = 0`.
pub fn wick_trace_oracle(vectors: &[Vec<TPoly>]) -> TPoly {
    fn inner(x: &[TPoly], y: &[TPoly]) -> TPoly {
        let mut acc = TPoly::zero();
        for (a, b) in x.iter().zip(y) {
            acc += &(a * b);
        }
        acc
    }
    fn go(vs: &[&Vec<TPoly>]) -> TPoly {
        match vs.len() {
            0 => return TPoly::one(),
            p if p % 2 == 1 => return TPoly::zero(),
            _ => {}
        }
        let first = vs[0];
        let mut acc = TPoly::zero();
        for k in 1..vs.len() {
            let pair = inner(first, vs[k]);
            if pair.is_zero() {
                continue;
            }
            let rest: Vec<&Vec<TPoly>> = vs[1..].iter().enumerate().filter(|(i, _)| i + 1 != k).map(|(_, v)| *v).collect();
            let sub = go(&rest);
            // position k (0-based) is the (k+1)-th factor: sign (-1)^(k+1) times -⟨,⟩
            let term = &pair * &sub;
            if k % 2 == 1 {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        acc
    }
    let refs: Vec<&Vec<TPoly>> = vectors.iter().collect();
    go(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn basis(n: usize, a: usize) -> Vec<TPoly> {
        (0..n).map(|i| if i == a { TPoly::one() } else { TPoly::zero() }).collect()
    }

    #[test]
    fn m1_matches_the_documented_pair() {
        let g = generate_gammas(1).unwrap();
        let i = GaussianRational::i();
        assert_eq!(g.gamma(0).get(0, 0), &TPoly::constant(i.clone()));
        assert_eq!(g.gamma(0).get(1, 1), &TPoly::constant(-i));
        assert_eq!(g.gamma(1).get(0, 1), &TPoly::one());
        assert_eq!(g.gamma(1).get(1, 0), &TPoly::from_int(-1));
        let minus_id = g.identity().scale(&TPoly::from_int(-1));
        assert_eq!(g.gamma(0) * g.gamma(0), minus_id);
        assert_eq!(g.gamma(1) * g.gamma(1), minus_id);
        let anti = &(g.gamma(0) * g.gamma(1)) + &(g.gamma(1) * g.gamma(0));
        assert!(anti.is_zero());
    }

    #[test]
    fn anticommutation_for_all_supported_m() {
        for m in 1..=3 {
            let g = generate_gammas(m).unwrap();
            let two_id = g.identity().scale(&TPoly::from_int(2));
            for i in 0..g.n() {
                for j in 0..g.n() {
                    let mut s = &(g.gamma(i) * g.gamma(j)) + &(g.gamma(j) * g.gamma(i));
                    if i == j {
                        s = &s + &two_id;
                    }
                    assert!(s.is_zero(), "m={m} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn out_of_range_m_is_rejected() {
        assert!(matches!(generate_gammas(0), Err(EngineError::Range { .. })));
        assert!(matches!(generate_gammas(5), Err(EngineError::Range { .. })));
        assert!(generate_gammas(4).is_ok());
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_gammas(3).unwrap();
        let b = generate_gammas(3).unwrap();
        assert_eq!(a.gammas(), b.gammas());
    }

    #[test]
    fn clifford_of_examples() {
        let g = generate_gammas(2).unwrap();
        assert_eq!(g.clifford_of(&basis(4, 0)).unwrap(), *g.gamma(0));
        assert!(g.clifford_of(&vec![TPoly::zero(); 4]).unwrap().is_zero());
        let x = vec![TPoly::t(), TPoly::one(), TPoly::zero(), TPoly::zero()];
        let cx = g.clifford_of(&x).unwrap();
        let t2p1 = &(&TPoly::t() * &TPoly::t()) + &TPoly::one();
        assert_eq!(&cx * &cx, g.identity().scale(&-t2p1));
        assert!(matches!(g.clifford_of(&basis(3, 0)), Err(EngineError::Dimension { .. })));
    }

    #[test]
    fn trace_examples() {
        let g = generate_gammas(2).unwrap();
        assert_eq!(g.identity().trace(), TPoly::from_int(4));
        assert_eq!(g.identity().normalized_trace(), TPoly::one());
        assert!(g.product(&[0, 1]).trace().is_zero());
        assert_eq!(g.product(&[0, 1, 0, 1]).trace(), TPoly::from_int(-4));
    }

    #[test]
    fn chirality_element_is_traceless() {
        for m in 1..=3 {
            let g = generate_gammas(m).unwrap();
            let all: Vec<usize> = (0..g.n()).collect();
            assert!(g.product(&all).trace().is_zero());
        }
    }

    #[test]
    fn wick_examples() {
        let e = |a| basis(4, a);
        assert!(wick_trace_oracle(&[e(0), e(1), e(2)]).is_zero());
        assert_eq!(wick_trace_oracle(&[e(2), e(2)]), TPoly::from_int(-1));
        assert_eq!(wick_trace_oracle(&[e(0), e(1), e(1), e(0)]), TPoly::one());
        assert_eq!(wick_trace_oracle(&[]), TPoly::one());
        let g = generate_gammas(2).unwrap();
        assert_eq!(g.product(&[0, 1, 1, 0]).normalized_trace(), TPoly::one());
        let x: Vec<TPoly> = [3, -1, 2, 5].iter().map(|&k| TPoly::from_rational(int(k))).collect();
        assert_eq!(wick_trace_oracle(&[x.clone(), x]), TPoly::from_int(-39));
    }
}
