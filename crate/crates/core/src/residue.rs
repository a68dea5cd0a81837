//! Cosphere integration and the residue density of the Einstein functional.
//!
//! All densities are in units of `2^m · Vol(S^{n−1})`: a jet is integrated
//! as `Σ normalized_trace(C) · ⟨ξ^β⟩` with `⟨·⟩` the normalized sphere mean.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::clifford::GammaFamily;
use crate::closed_forms;
use crate::error::{EngineError, Result};
use crate::geometry::PointGeometry;
use crate::operators::{composed_ab, laplace_inverse_jets, transcribed_ab};
use crate::scalar::{format_rational, int, rat, GaussianRational, Rational, TPoly};
use crate::symbol::{compose, SymbolFamily, SymbolJet};

/// `∫_{S^{n−1}} ξ^β / Vol(S^{n−1})`.
pub fn sphere_moment(beta: &[u8], n: usize) -> Rational {
    if beta.iter().any(|b| b % 2 == 1) {
        return Rational::zero();
    }
    let mut num = int(1);
    for &b in beta {
        let mut k = i64::from(b) - 1;
        while k > 1 {
            num *= int(k);
            k -= 2;
        }
    }
    let half: i64 = beta.iter().map(|&b| i64::from(b)).sum::<i64>() / 2;
    let mut den = int(1);
    for k in 0..half {
        den *= int(n as i64 + 2 * k);
    }
    num / den
}

/// A real polynomial in `t`, the residue density in units of `2^m·Vol(S^{n−1})`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DensityValue {
    coeffs: Vec<Rational>,
}

impl DensityValue {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_coeffs(vec![q])
    }

    /// Fails with an integrity error if any coefficient has an imaginary part.
    pub fn from_tpoly(p: &TPoly, context: &str) -> Result<Self> {
        if !p.is_real() {
            return Err(EngineError::Integrity(format!("{context}: density has imaginary part ({p})")));
        }
        Ok(Self::from_coeffs(p.coeffs().iter().map(|c| c.re.clone()).collect()))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Coefficients `t⁰, t¹, t²` as `"p/q"` strings.
    pub fn to_strings(&self, min_len: usize) -> Vec<String> {
        (0..self.coeffs.len().max(min_len)).map(|k| format_rational(&self.coeff(k))).collect()
    }
}

impl Add for &DensityValue {
    type Output = DensityValue;
    fn add(self, rhs: &DensityValue) -> DensityValue {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DensityValue::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &DensityValue {
    type Output = DensityValue;
    fn sub(self, rhs: &DensityValue) -> DensityValue {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DensityValue::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &DensityValue {
    type Output = DensityValue;
    fn neg(self) -> DensityValue {
        self.scale(&-Rational::one())
    }
}

impl std::iter::Sum for DensityValue {
    fn sum<I: Iterator<Item = DensityValue>>(iter: I) -> Self {
        iter.fold(DensityValue::default(), |a, b| &a + &b)
    }
}

impl fmt::Display for DensityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for DensityValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings(3).serialize(s)
    }
}

/// Integrates a degree `−n` jet at `x₀` over the cosphere.
pub fn integrate_density(jet: &SymbolJet) -> Result<DensityValue> {
    let n = jet.n();
    if jet.degree() != -(n as i32) {
        return Err(EngineError::Contract(format!("integrand has degree {} but the residue needs {}", jet.degree(), -(n as i32))));
    }
    let mut acc = TPoly::zero();
    for (mono, coeff) in jet.terms() {
        if mono.x_order() > 0 {
            return Err(EngineError::Contract("integrand still depends on x; evaluate at x0 first".into()));
        }
        let moment = sphere_moment(&mono.xi, n);
        if !moment.is_zero() {
            acc += &coeff.normalized_trace().scale_rational(&moment);
        }
    }
    DensityValue::from_tpoly(&acc, "cosphere integral")
}

fn require_m_at_least_two(g: &PointGeometry) -> Result<()> {
    if g.m < 2 {
        return Err(EngineError::Unsupported("the residue density needs m >= 2 (the power −n+2 degenerates at m = 1)".into()));
    }
    Ok(())
}

/// The six summands of the part-one density, in the order the sub-symbol
/// lists them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Part1Breakdown {
    pub ricci: DensityValue,
    pub y_y: DensityValue,
    pub norm_and_divergence: DensityValue,
    pub curvature_bivector: DensityValue,
    pub jacobian: DensityValue,
    pub endomorphism: DensityValue,
}

impl Part1Breakdown {
    pub fn named(&self) -> [(&'static str, &DensityValue); 6] {
        [
            ("ricci", &self.ricci),
            ("y-y", &self.y_y),
            ("norm-and-divergence", &self.norm_and_divergence),
            ("curvature-bivector", &self.curvature_bivector),
            ("jacobian", &self.jacobian),
            ("endomorphism", &self.endomorphism),
        ]
    }

    pub fn total(&self) -> DensityValue {
        self.named().iter().map(|(_, d)| (*d).clone()).sum()
    }
}

/// `c(v)c(w) · σ_{−2m}(Δ_t^{−(m−1)})` at `x₀`, integrated summand by summand.
pub fn part1_breakdown(g: &PointGeometry, gammas: &GammaFamily) -> Result<Part1Breakdown> {
    require_m_at_least_two(g)?;
    let jets = laplace_inverse_jets(g, g.m - 1, gammas)?;
    let cvcw = &gammas.clifford_of_rational(&g.v.value)? * &gammas.clifford_of_rational(&g.w.value)?;
    let f = |j: &SymbolJet| integrate_density(&j.left_mul(&cvcw));
    let s = &jets.sub_subleading;
    Ok(Part1Breakdown {
        ricci: f(&s.ricci)?,
        y_y: f(&s.y_y)?,
        norm_and_divergence: f(&s.norm_and_divergence)?,
        curvature_bivector: f(&s.curvature_bivector)?,
        jacobian: f(&s.jacobian)?,
        endomorphism: f(&s.endomorphism)?,
    })
}

pub fn part1_density(g: &PointGeometry, gammas: &GammaFamily) -> Result<DensityValue> {
    Ok(part1_breakdown(g, gammas)?.total())
}

fn piece(f: &SymbolFamily, d: i32) -> Result<&SymbolJet> {
    f.piece(d).ok_or_else(|| EngineError::Contract(format!("symbol family lacks its degree {d} piece")))
}

/// `H_1 … H_6` built from a given set of `AB` symbols at `x₀`.
pub fn h_terms_from(ab: &SymbolFamily, g: &PointGeometry, gammas: &GammaFamily) -> Result<[DensityValue; 6]> {
    require_m_at_least_two(g)?;
    let lap = laplace_inverse_jets(g, g.m, gammas)?;
    let k = 2 * g.m as i32;
    let (s2, s1, s0) = (piece(ab, 2)?, piece(ab, 1)?, piece(ab, 0)?);
    let l0 = &lap.leading;
    let l1 = &lap.subleading;
    let l2 = lap.sub_subleading.total()?;
    let n = g.n();
    let minus_i = GaussianRational::minus_i_pow(1);
    let minus_half = GaussianRational::real(rat(-1, 2));

    let h1 = integrate_density(&s0.product(&l0.eval_x0())?)?;
    let h2 = integrate_density(&s1.product(&l1.eval_x0())?)?;
    let h3 = integrate_density(&s2.product(&l2)?)?;

    let mut h4 = SymbolJet::empty(g.m, -k, 0);
    let mut h5 = SymbolJet::empty(g.m, -k, 0);
    let mut h6 = SymbolJet::empty(g.m, -k, 0);
    for j in 0..n {
        h4 = h4.add(&s2.d_xi(j).product(&l1.d_x(j)?.eval_x0())?.scale(&minus_i))?;
        h5 = h5.add(&s1.d_xi(j).product(&l0.d_x(j)?.eval_x0())?.scale(&minus_i))?;
        let dj = l0.d_x(j)?;
        let s2j = s2.d_xi(j);
        for l in 0..n {
            let term = s2j.d_xi(l).product(&dj.d_x(l)?.eval_x0())?;
            h6 = h6.add(&term.scale(&minus_half))?;
        }
    }
    Ok([h1, h2, h3, integrate_density(&h4)?, integrate_density(&h5)?, integrate_density(&h6)?])
}

/// `H_1 … H_6` from the transcribed `AB` symbols.
pub fn h_terms(g: &PointGeometry, gammas: &GammaFamily) -> Result<[DensityValue; 6]> {
    h_terms_from(&transcribed_ab(g, gammas)?, g, gammas)
}

pub fn part2_density(g: &PointGeometry, gammas: &GammaFamily) -> Result<DensityValue> {
    Ok(h_terms(g, gammas)?.into_iter().sum())
}

pub fn einstein_density(g: &PointGeometry, gammas: &GammaFamily) -> Result<DensityValue> {
    Ok(&part1_density(g, gammas)? + &part2_density(g, gammas)?)
}

/// Independent path for the second part: generic composition of the
/// symbols of `A`, `B` and `Δ_t^{−m}`, with no transcribed formula involved.
pub fn oracle_part2(g: &PointGeometry, gammas: &GammaFamily) -> Result<DensityValue> {
    require_m_at_least_two(g)?;
    let ab = composed_ab(g, gammas)?;
    let lap = laplace_inverse_jets(g, g.m, gammas)?.family()?;
    let jet = compose(&ab, &lap, -(g.n() as i32), 2)?;
    integrate_density(&jet.eval_x0())
}

/// Engine values next to the printed closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub part1: DensityValue,
    pub h: [DensityValue; 6],
    pub part2: DensityValue,
    pub total: DensityValue,
    pub oracle_part2: DensityValue,
    pub cf_part1: DensityValue,
    pub cf_h: [DensityValue; 6],
    pub cf_part2: DensityValue,
    pub cf_total: DensityValue,
}

impl DensityReport {
    /// `(label, engine, closed form)` for every compared quantity.
    pub fn comparisons(&self) -> Vec<(String, &DensityValue, &DensityValue)> {
        let mut out = vec![("part1".to_string(), &self.part1, &self.cf_part1)];
        for i in 0..6 {
            out.push((format!("H{}", i + 1), &self.h[i], &self.cf_h[i]));
        }
        out.push(("part2".into(), &self.part2, &self.cf_part2));
        out.push(("total".into(), &self.total, &self.cf_total));
        out
    }
}

pub fn density_report(g: &PointGeometry, gammas: &GammaFamily) -> Result<DensityReport> {
    let part1 = part1_density(g, gammas)?;
    let h = h_terms(g, gammas)?;
    let part2: DensityValue = h.iter().cloned().sum();
    let total = &part1 + &part2;
    let cf_h = closed_forms::h_closed_forms(g)?;
    Ok(DensityReport {
        oracle_part2: oracle_part2(g, gammas)?,
        cf_part1: closed_forms::part1_closed_form(g)?,
        cf_part2: closed_forms::part2_closed_form(g)?,
        cf_total: closed_forms::einstein_closed_form(g)?,
        part1,
        h,
        part2,
        total,
        cf_h,
    })
}
