//! Truncated pseudodifferential symbols at the base point.
//!
//! A [`SymbolJet`] is a finite sum of terms `C · x^α · ξ^β · ‖ξ‖^{-k}` with a
//! common ξ-homogeneity `|β| − k` and an x-Taylor order of at most two. The
//! norm power is kept symbolic; only equality testing rewrites it.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::clifford::CliffordElement;
use crate::error::{EngineError, Result};
use crate::scalar::{int, GaussianRational, Rational, TPoly};

/// Highest x-order any jet carries.
pub const MAX_X_ORDER: u8 = 2;

/// Exponent data of one term. `norm_pow = k` means a factor `‖ξ‖^{-k}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: Vec<u8>,
    pub xi: Vec<u8>,
    pub norm_pow: i32,
}

impl Monomial {
    /// Builds exponents from coordinate lists, e.g. `x = [0, 0]` is `x_1²`.
    pub fn from_indices(n: usize, x: &[usize], xi: &[usize], norm_pow: i32) -> Self {
        let mut xe = vec![0u8; n];
        let mut xie = vec![0u8; n];
        for &j in x {
            xe[j] += 1;
        }
        for &j in xi {
            xie[j] += 1;
        }
        Self { x: xe, xi: xie, norm_pow }
    }

    pub fn x_order(&self) -> u8 {
        self.x.iter().sum()
    }

    pub fn xi_order(&self) -> i32 {
        self.xi.iter().map(|&e| i32::from(e)).sum()
    }

    pub fn homogeneity(&self) -> i32 {
        self.xi_order() - self.norm_pow
    }
}

/// One term of a jet, used for construction and inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTerm {
    pub coeff: CliffordElement,
    pub monomial: Monomial,
}

/// A ξ-homogeneous symbol of fixed degree, known through x-order `max_x_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolJet {
    m: usize,
    degree: i32,
    max_x_order: u8,
    terms: BTreeMap<Monomial, CliffordElement>,
}

fn accumulate(terms: &mut BTreeMap<Monomial, CliffordElement>, key: Monomial, value: CliffordElement) {
    if value.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(existing) => {
            *existing = &*existing + &value;
            if existing.is_zero() {
                terms.remove(&key);
            }
        }
        None => {
            terms.insert(key, value);
        }
    }
}

impl SymbolJet {
    pub fn empty(m: usize, degree: i32, max_x_order: u8) -> Self {
        Self { m, degree, max_x_order: max_x_order.min(MAX_X_ORDER), terms: BTreeMap::new() }
    }

    /// A single x-independent term, exact to the full x-order.
    pub fn monomial(coeff: CliffordElement, xi: &[usize], norm_pow: i32) -> Self {
        let m = coeff.m();
        let mono = Monomial::from_indices(2 * m, &[], xi, norm_pow);
        let mut jet = Self::empty(m, mono.homogeneity(), MAX_X_ORDER);
        accumulate(&mut jet.terms, mono, coeff);
        jet
    }

    pub fn from_terms(m: usize, degree: i32, max_x_order: u8, terms: Vec<SymbolTerm>) -> Result<Self> {
        let mut jet = Self::empty(m, degree, max_x_order);
        for t in terms {
            jet.push(t.coeff, t.monomial)?;
        }
        Ok(jet)
    }

    /// Adds one term, checking homogeneity, dimension and x-order.
    pub fn push(&mut self, coeff: CliffordElement, monomial: Monomial) -> Result<()> {
        let n = 2 * self.m;
        if coeff.m() != self.m {
            return Err(EngineError::Dimension { context: "symbol coefficient", expected: self.m, got: coeff.m() });
        }
        if monomial.x.len() != n || monomial.xi.len() != n {
            return Err(EngineError::Dimension { context: "symbol exponent", expected: n, got: monomial.x.len().max(monomial.xi.len()) });
        }
        if monomial.homogeneity() != self.degree {
            return Err(EngineError::Contract(format!(
                "term of homogeneity {} pushed into a jet of degree {}",
                monomial.homogeneity(),
                self.degree
            )));
        }
        if monomial.x_order() > self.max_x_order {
            return Err(EngineError::Truncation {
                context: "symbol term".into(),
                needed: monomial.x_order(),
                available: self.max_x_order,
            });
        }
        accumulate(&mut self.terms, monomial, coeff);
        Ok(())
    }

    /// Convenience form of [`push`](Self::push) taking coordinate lists.
    pub fn push_indices(&mut self, coeff: CliffordElement, x: &[usize], xi: &[usize], norm_pow: i32) -> Result<()> {
        let mono = Monomial::from_indices(2 * self.m, x, xi, norm_pow);
        self.push(coeff, mono)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        2 * self.m
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn max_x_order(&self) -> u8 {
        self.max_x_order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CliffordElement)> {
        self.terms.iter()
    }

    pub fn with_max_x_order(mut self, order: u8) -> Self {
        self.max_x_order = order.min(MAX_X_ORDER);
        self.terms.retain(|k, _| k.x_order() <= self.max_x_order);
        self
    }

    fn map_coeffs(&self, f: impl Fn(&CliffordElement) -> CliffordElement) -> Self {
        let mut out = Self::empty(self.m, self.degree, self.max_x_order);
        for (k, c) in &self.terms {
            accumulate(&mut out.terms, k.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coeffs(|x| x.scale_gauss(c))
    }

    pub fn scale_poly(&self, p: &TPoly) -> Self {
        self.map_coeffs(|x| x.scale(p))
    }

    pub fn left_mul(&self, e: &CliffordElement) -> Self {
        self.map_coeffs(|x| e * x)
    }

    pub fn right_mul(&self, e: &CliffordElement) -> Self {
        self.map_coeffs(|x| x * e)
    }

    /// Sum of two jets of equal degree; the x-order is the smaller one.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(EngineError::Contract(format!("adding jets of degree {} and {}", self.degree, other.degree)));
        }
        if self.m != other.m {
            return Err(EngineError::Dimension { context: "jet sum", expected: self.m, got: other.m });
        }
        let order = self.max_x_order.min(other.max_x_order);
        let mut out = Self::empty(self.m, self.degree, order);
        for (k, c) in self.terms.iter().chain(&other.terms) {
            if k.x_order() <= order {
                accumulate(&mut out.terms, k.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| -x)
    }

    /// Noncommutative pointwise product. Degrees add; the result is known
    /// only through the smaller x-order, so higher terms are dropped.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(EngineError::Dimension { context: "jet product", expected: self.m, got: other.m });
        }
        let order = self.max_x_order.min(other.max_x_order);
        let mut out = Self::empty(self.m, self.degree + other.degree, order);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if ka.x_order() + kb.x_order() > order {
                    continue;
                }
                let key = Monomial {
                    x: ka.x.iter().zip(&kb.x).map(|(a, b)| a + b).collect(),
                    xi: ka.xi.iter().zip(&kb.xi).map(|(a, b)| a + b).collect(),
                    norm_pow: ka.norm_pow + kb.norm_pow,
                };
                accumulate(&mut out.terms, key, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every term by `ξ_j`.
    pub fn mul_xi(&self, j: usize) -> Self {
        let mut out = Self::empty(self.m, self.degree + 1, self.max_x_order);
        for (k, c) in &self.terms {
            let mut key = k.clone();
            key.xi[j] += 1;
            accumulate(&mut out.terms, key, c.clone());
        }
        out
    }

    /// `∂/∂ξ_j`, using `∂_{ξ_j} ‖ξ‖^{-k} = −k ξ_j ‖ξ‖^{-k-2}`.
    pub fn d_xi(&self, j: usize) -> Self {
        let mut out = Self::empty(self.m, self.degree - 1, self.max_x_order);
        for (k, c) in &self.terms {
            let e = k.xi[j];
            if e > 0 {
                let mut key = k.clone();
                key.xi[j] -= 1;
                accumulate(&mut out.terms, key, c.scale_rational(&int(i64::from(e))));
            }
            if k.norm_pow != 0 {
                let mut key = k.clone();
                key.xi[j] += 1;
                key.norm_pow += 2;
                accumulate(&mut out.terms, key, c.scale_rational(&int(-i64::from(k.norm_pow))));
            }
        }
        out
    }

    /// `∂/∂x_j`. Needs at least one order of x-jet.
    pub fn d_x(&self, j: usize) -> Result<Self> {
        if self.max_x_order == 0 {
            return Err(EngineError::Truncation { context: format!("d_x{}", j + 1), needed: 1, available: 0 });
        }
        let mut out = Self::empty(self.m, self.degree, self.max_x_order - 1);
        for (k, c) in &self.terms {
            let e = k.x[j];
            if e > 0 {
                let mut key = k.clone();
                key.x[j] -= 1;
                accumulate(&mut out.terms, key, c.scale_rational(&int(i64::from(e))));
            }
        }
        Ok(out)
    }

    /// Value at `x₀`: keeps the x-free terms. The result is a pointwise value,
    /// so it carries no x-jet.
    pub fn eval_x0(&self) -> Self {
        let mut out = Self::empty(self.m, self.degree, 0);
        for (k, c) in &self.terms {
            if k.x_order() == 0 {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// `Σ_j ξ_j ∂_{ξ_j}`, which equals `degree · self` for homogeneous jets.
    pub fn euler(&self) -> Self {
        let mut out = Self::empty(self.m, self.degree, self.max_x_order);
        for j in 0..self.n() {
            for (k, c) in self.d_xi(j).mul_xi(j).terms {
                accumulate(&mut out.terms, k, c);
            }
        }
        out
    }

    /// Normal form for equality: every `ξ_n²` is rewritten as
    /// `‖ξ‖² − Σ_{j<n} ξ_j²` until `ξ_n` appears at most linearly. The
    /// remaining monomials are independent on the sphere, and homogeneity
    /// then fixes the norm power, so the map below is unique.
    pub fn canonical(&self) -> BTreeMap<(Vec<u8>, Vec<u8>), CliffordElement> {
        let n = self.n();
        let last = n - 1;
        let mut out: BTreeMap<(Vec<u8>, Vec<u8>), CliffordElement> = BTreeMap::new();
        let mut work: Vec<(Monomial, CliffordElement)> = self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        while let Some((k, c)) = work.pop() {
            if k.xi[last] < 2 {
                let key = (k.x, k.xi);
                match out.get_mut(&key) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        out.insert(key, c);
                    }
                }
                continue;
            }
            let mut base = k.clone();
            base.xi[last] -= 2;
            let mut reduced = base.clone();
            reduced.norm_pow -= 2;
            work.push((reduced, c.clone()));
            let neg = -&c;
            for j in 0..last {
                let mut key = base.clone();
                key.xi[j] += 2;
                work.push((key, neg.clone()));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Equality as functions on `x`-jets times the cosphere.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.m == other.m && self.degree == other.degree && self.canonical() == other.canonical()
    }
}

/// The graded pieces `σ_d` of one symbol, highest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolFamily {
    pieces: Vec<SymbolJet>,
}

impl SymbolFamily {
    pub fn new(mut pieces: Vec<SymbolJet>) -> Result<Self> {
        pieces.sort_by_key(|p| std::cmp::Reverse(p.degree));
        for w in pieces.windows(2) {
            if w[0].degree == w[1].degree {
                return Err(EngineError::Contract(format!("two graded pieces of degree {}", w[0].degree)));
            }
            if w[0].m != w[1].m {
                return Err(EngineError::Dimension { context: "symbol family", expected: w[0].m, got: w[1].m });
            }
        }
        Ok(Self { pieces })
    }

    pub fn pieces(&self) -> &[SymbolJet] {
        &self.pieces
    }

    pub fn piece(&self, degree: i32) -> Option<&SymbolJet> {
        self.pieces.iter().find(|p| p.degree == degree)
    }

    pub fn eval_x0(&self) -> Self {
        Self { pieces: self.pieces.iter().map(SymbolJet::eval_x0).collect() }
    }

    /// Left multiplication of every piece by an order-0 jet.
    pub fn left_multiply(&self, f: &SymbolJet) -> Result<Self> {
        Self::new(self.pieces.iter().map(|p| f.product(p)).collect::<Result<_>>()?)
    }
}

/// Nondecreasing coordinate sequences of length `0..=max_len`.
fn multi_indices(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            let start = seq.last().copied().unwrap_or(0);
            for j in start..n {
                let mut s = seq.clone();
                s.push(j);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn factorial_of_multiplicities(seq: &[usize]) -> Rational {
    let mut out = int(1);
    let mut run = 0i64;
    for (i, j) in seq.iter().enumerate() {
        run = if i > 0 && seq[i - 1] == *j { run + 1 } else { 1 };
        out *= int(run);
    }
    out
}

/// The degree-`target` piece of the composition `a ∘ b`:
/// `Σ (−i)^{|α|}/α! · ∂_ξ^α σ_i(a) · ∂_x^α σ_j(b)` over `i + j − |α| = target`.
///
/// Terms whose ξ-derivative vanishes are skipped; any other term that needs
/// more x-jet than `b` carries is a truncation error.
pub fn compose(a: &SymbolFamily, b: &SymbolFamily, target: i32, max_alpha: usize) -> Result<SymbolJet> {
    let m = a.pieces.first().or(b.pieces.first()).map(|p| p.m).unwrap_or(1);
    let n = 2 * m;
    let alphas = multi_indices(n, max_alpha);
    let mut order = a.pieces.iter().chain(&b.pieces).map(|p| p.max_x_order).min().unwrap_or(MAX_X_ORDER);
    let mut acc: Option<SymbolJet> = None;
    for pa in &a.pieces {
        for pb in &b.pieces {
            for alpha in &alphas {
                if pa.degree + pb.degree - alpha.len() as i32 != target {
                    continue;
                }
                let mut da = pa.clone();
                for &j in alpha {
                    da = da.d_xi(j);
                }
                if da.is_empty() {
                    continue;
                }
                if (pb.max_x_order as usize) < alpha.len() {
                    return Err(EngineError::Truncation {
                        context: format!("composition at degree {target}"),
                        needed: alpha.len() as u8,
                        available: pb.max_x_order,
                    });
                }
                let mut db = pb.clone();
                for &j in alpha {
                    db = db.d_x(j)?;
                }
                let weight = GaussianRational::minus_i_pow(alpha.len()).scale(&(int(1) / factorial_of_multiplicities(alpha)));
                let term = da.product(&db)?.scale(&weight);
                order = order.min(term.max_x_order);
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.add(&term)?,
                });
            }
        }
    }
    Ok(acc.unwrap_or_else(|| SymbolJet::empty(m, target, order)).with_max_x_order(order))
}

/// Scalar `Rational` as a multiple of the identity.
pub fn id_scaled(m: usize, q: &Rational) -> CliffordElement {
    if q.is_zero() {
        CliffordElement::zero(m)
    } else {
        CliffordElement::identity(m).scale_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::generate_gammas;
    use crate::scalar::rat;

    fn id(m: usize) -> CliffordElement {
        CliffordElement::identity(m)
    }

    #[test]
    fn product_examples() {
        let a = SymbolJet::monomial(id(2), &[], 2);
        let b = SymbolJet::monomial(id(2), &[0], 0);
        let p = a.product(&b).unwrap();
        assert_eq!(p.degree(), -1);
        assert_eq!(p, SymbolJet::monomial(id(2), &[0], 2));

        let e = SymbolJet::empty(2, 0, 2);
        assert!(a.product(&e).unwrap().is_empty());

        let g = generate_gammas(2).unwrap();
        let x = SymbolJet::monomial(g.gamma(0).clone(), &[0], 0);
        let y = SymbolJet::monomial(g.gamma(1).clone(), &[1], 0);
        assert_eq!(x.product(&y).unwrap(), y.product(&x).unwrap().neg());
    }

    #[test]
    fn d_xi_examples() {
        let j = SymbolJet::monomial(id(2), &[0], 0);
        assert_eq!(j.d_xi(0), SymbolJet::monomial(id(2), &[], 0));

        let j = SymbolJet::monomial(id(2), &[], 2);
        assert_eq!(j.d_xi(0), SymbolJet::monomial(id(2).scale_rational(&int(-2)), &[0], 4));

        let j = SymbolJet::monomial(id(2), &[0], 2);
        let mut expected = SymbolJet::monomial(id(2), &[], 2);
        expected.push_indices(id(2).scale_rational(&int(-2)), &[], &[0, 0], 4).unwrap();
        assert_eq!(j.d_xi(0), expected);
        assert!(j.euler().equivalent(&j.scale(&GaussianRational::from_int(-1))));
    }

    #[test]
    fn d_x_and_eval_examples() {
        let c = id(1).scale_rational(&rat(3, 2));
        let flat = SymbolJet::monomial(c.clone(), &[0], 0);
        assert!(flat.d_x(0).unwrap().is_empty());

        let mut j = SymbolJet::empty(1, -1, 2);
        j.push_indices(c.clone(), &[0], &[0], 2).unwrap();
        assert!(j.eval_x0().is_empty());

        let mut j = SymbolJet::empty(1, 1, 2);
        j.push_indices(c.clone(), &[0, 0], &[1], 0).unwrap();
        let once = j.d_x(0).unwrap();
        let mut expected = SymbolJet::empty(1, 1, 1);
        expected.push_indices(c.scale_rational(&int(2)), &[0], &[1], 0).unwrap();
        assert_eq!(once, expected);
        assert!(once.eval_x0().is_empty());
        assert_eq!(once.d_x(0).unwrap().eval_x0(), SymbolJet::monomial(c.scale_rational(&int(2)), &[1], 0).eval_x0());
        assert!(matches!(once.d_x(0).unwrap().eval_x0().d_x(0), Err(EngineError::Truncation { .. })));
    }

    #[test]
    fn canonical_form_identifies_norm_rewrites() {
        // Σ ξ_a² ‖ξ‖^{-4} equals ‖ξ‖^{-2}
        let mut a = SymbolJet::empty(2, -2, 2);
        for k in 0..4 {
            a.push_indices(id(2), &[], &[k, k], 4).unwrap();
        }
        let b = SymbolJet::monomial(id(2), &[], 2);
        assert!(a.equivalent(&b));
        assert!(!a.equivalent(&b.scale(&GaussianRational::from_int(2))));
    }

    #[test]
    fn compose_examples() {
        let ident = SymbolFamily::new(vec![SymbolJet::monomial(id(1), &[], 0)]).unwrap();
        let mut b0 = SymbolJet::empty(1, 0, 1);
        b0.push_indices(id(1), &[0], &[], 0).unwrap();
        let b = SymbolFamily::new(vec![b0.clone()]).unwrap();
        assert_eq!(compose(&ident, &b, 0, 2).unwrap(), b0);

        let p = SymbolFamily::new(vec![SymbolJet::monomial(id(1), &[0], 0)]).unwrap();
        let q = SymbolFamily::new(vec![SymbolJet::monomial(id(1), &[1], 0)]).unwrap();
        assert_eq!(compose(&p, &q, 2, 2).unwrap(), SymbolJet::monomial(id(1), &[0, 1], 0));

        // ξ_1 ∘ x_1 = x_1 ξ_1 − i
        let r = compose(&p, &b, 0, 2).unwrap();
        let mut expected = SymbolJet::empty(1, 0, 0);
        expected.push_indices(CliffordElement::scalar(1, TPoly::i()).scale_gauss(&GaussianRational::from_int(-1)), &[], &[], 0).unwrap();
        // the derivative term is known only at x₀, so the sum is too
        assert_eq!(r.max_x_order(), 0);
        assert_eq!(r, expected);
    }

    #[test]
    fn compose_reports_missing_jet() {
        let a = SymbolFamily::new(vec![SymbolJet::monomial(id(1), &[0], 0)]).unwrap();
        let b = SymbolFamily::new(vec![SymbolJet::monomial(id(1), &[], 2).eval_x0()]).unwrap();
        assert!(matches!(compose(&a, &b, -2, 1), Err(EngineError::Truncation { .. })));
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(2, 2).len(), 1 + 2 + 3);
        assert_eq!(factorial_of_multiplicities(&[0, 0, 1]), int(2));
    }
}
