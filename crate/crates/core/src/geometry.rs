//! Pointwise geometric input at the base point `x₀` of a normal chart.
//!
//! Everything is expressed in an orthonormal frame at `x₀`: the metric is
//! `δ`, Christoffel symbols vanish, and covariant derivatives of vector
//! fields reduce to plain Jacobian columns.
//!
//! Curvature convention: `R_abcd` is the algebraic curvature tensor with
//! `R_abab > 0` on the round sphere (so the unit sphere has
//! `R_abcd = δ_ac δ_bd − δ_ad δ_bc`), and `Ric_bd = Σ_a R_abad`.

use std::fmt;

use num_traits::{One, Zero};

use crate::clifford::{CliffordElement, GammaFamily};
use crate::error::{EngineError, Result};
use crate::scalar::{rat, GaussianRational, Rational, TPoly};

/// Dense algebraic curvature tensor, indices `0..n` internally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannTensor {
    n: usize,
    comps: Vec<Rational>,
}

/// One failed identity, reported with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `R_abcd ≠ -R_bacd`
    FirstPairAntisymmetry([usize; 4]),
    /// `R_abcd ≠ -R_abdc`
    SecondPairAntisymmetry([usize; 4]),
    /// `R_abcd ≠ R_cdab`
    PairExchange([usize; 4]),
    /// `R_abcd + R_acdb + R_adbc ≠ 0`
    Bianchi([usize; 4]),
}

impl Violation {
    pub fn is_bianchi(&self) -> bool {
        matches!(self, Violation::Bianchi(_))
    }

    pub fn indices(&self) -> [usize; 4] {
        match self {
            Violation::FirstPairAntisymmetry(i)
            | Violation::SecondPairAntisymmetry(i)
            | Violation::PairExchange(i)
            | Violation::Bianchi(i) => *i,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.indices();
        match self {
            Violation::FirstPairAntisymmetry(_) => write!(f, "pair-antisymmetry R[{a}][{b}][{c}][{d}] != -R[{b}][{a}][{c}][{d}]"),
            Violation::SecondPairAntisymmetry(_) => write!(f, "pair-antisymmetry R[{a}][{b}][{c}][{d}] != -R[{a}][{b}][{d}][{c}]"),
            Violation::PairExchange(_) => write!(f, "pair-exchange R[{a}][{b}][{c}][{d}] != R[{c}][{d}][{a}][{b}]"),
            Violation::Bianchi(_) => write!(f, "first Bianchi fails at ({a},{b},{c},{d})"),
        }
    }
}

impl RiemannTensor {
    pub fn zero(n: usize) -> Self {
        Self { n, comps: vec![Rational::zero(); n.pow(4)] }
    }

    /// `R_abcd = k (δ_ac δ_bd − δ_ad δ_bc)`.
    pub fn constant_curvature(n: usize, k: &Rational) -> Self {
        let mut r = Self::zero(n);
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    r.set(a, b, a, b, k.clone());
                    r.set(a, b, b, a, -k.clone());
                }
            }
        }
        r
    }

    /// Kulkarni–Nomizu square `R_abcd = P_ac P_bd − P_ad P_bc` of a symmetric `P`.
    pub fn kulkarni_nomizu_square(p: &[Vec<Rational>]) -> Self {
        let n = p.len();
        let mut r = Self::zero(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let v = &p[a][c] * &p[b][d] - &p[a][d] * &p[b][c];
                        r.set(a, b, c, d, v);
                    }
                }
            }
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.n + b) * self.n + c) * self.n + d
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &Rational {
        &self.comps[self.idx(a, b, c, d)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: Rational) {
        let i = self.idx(a, b, c, d);
        self.comps[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self { n: self.n, comps: self.comps.iter().map(|c| c * k).collect() }
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self { n: self.n, comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() }
    }

    /// Every violated symmetry or Bianchi identity, or `Ok(())`.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let r = self.get(a, b, c, d);
                        let one = [a + 1, b + 1, c + 1, d + 1];
                        if (r + self.get(b, a, c, d)) != Rational::zero() {
                            out.push(Violation::FirstPairAntisymmetry(one));
                        }
                        if (r + self.get(a, b, d, c)) != Rational::zero() {
                            out.push(Violation::SecondPairAntisymmetry(one));
                        }
                        if r != self.get(c, d, a, b) {
                            out.push(Violation::PairExchange(one));
                        }
                        if (r + self.get(a, c, d, b) + self.get(a, d, b, c)) != Rational::zero() {
                            out.push(Violation::Bianchi(one));
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    fn require_valid(&self) -> Result<()> {
        self.validate().map_err(EngineError::InvalidTensor)
    }

    /// `Ric_bd = Σ_a R_abad`.
    pub fn ricci(&self) -> Result<Vec<Vec<Rational>>> {
        self.require_valid()?;
        Ok(self.ricci_unchecked())
    }

    fn ricci_unchecked(&self) -> Vec<Vec<Rational>> {
        let n = self.n;
        let mut ric = vec![vec![Rational::zero(); n]; n];
        for (b, row) in ric.iter_mut().enumerate() {
            for (d, entry) in row.iter_mut().enumerate() {
                for a in 0..n {
                    *entry += self.get(a, b, a, d);
                }
            }
        }
        ric
    }

    pub fn scalar(&self) -> Result<Rational> {
        let ric = self.ricci()?;
        Ok((0..self.n).map(|b| ric[b][b].clone()).sum())
    }
}

/// First jet of a vector field at `x₀`: `jacobian[a][b] = ∂_b X_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorJet {
    pub value: Vec<Rational>,
    pub jacobian: Vec<Vec<Rational>>,
}

impl VectorJet {
    pub fn zero(n: usize) -> Self {
        Self { value: vec![Rational::zero(); n], jacobian: vec![vec![Rational::zero(); n]; n] }
    }

    /// A field that is constant in the chart.
    pub fn constant(value: Vec<Rational>) -> Self {
        let n = value.len();
        Self { value, jacobian: vec![vec![Rational::zero(); n]; n] }
    }

    /// The constant coordinate field `e_a` (0-based `a`).
    pub fn basis(n: usize, a: usize) -> Self {
        let mut v = Self::zero(n);
        v.value[a] = Rational::one();
        v
    }

    pub fn n(&self) -> usize {
        self.value.len()
    }

    /// `∂_b X`, the `b`-th Jacobian column.
    pub fn column(&self, b: usize) -> Vec<Rational> {
        self.jacobian.iter().map(|row| row[b].clone()).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.jacobian.iter().flatten().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self {
            value: self.value.iter().map(|x| x * k).collect(),
            jacobian: self.jacobian.iter().map(|r| r.iter().map(|x| x * k).collect()).collect(),
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self {
            value: self.value.iter().zip(&other.value).map(|(a, b)| a + b).collect(),
            jacobian: self
                .jacobian
                .iter()
                .zip(&other.jacobian)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    fn check(&self, n: usize, name: &'static str) -> Result<()> {
        if self.value.len() != n {
            return Err(EngineError::Dimension { context: name, expected: n, got: self.value.len() });
        }
        if self.jacobian.len() != n {
            return Err(EngineError::Dimension { context: name, expected: n, got: self.jacobian.len() });
        }
        for row in &self.jacobian {
            if row.len() != n {
                return Err(EngineError::Dimension { context: name, expected: n, got: row.len() });
            }
        }
        Ok(())
    }
}

/// The data at one point: curvature plus first jets of `v`, `w`, `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGeometry {
    pub m: usize,
    pub riemann: RiemannTensor,
    pub v: VectorJet,
    pub w: VectorJet,
    pub y: VectorJet,
}

impl PointGeometry {
    pub fn new(m: usize, riemann: RiemannTensor, v: VectorJet, w: VectorJet, y: VectorJet) -> Result<Self> {
        if m == 0 {
            return Err(EngineError::Range { what: "m", value: m, range: "1..=4" });
        }
        let n = 2 * m;
        if riemann.n() != n {
            return Err(EngineError::Dimension { context: "riemann", expected: n, got: riemann.n() });
        }
        v.check(n, "v")?;
        w.check(n, "w")?;
        y.check(n, "y")?;
        Ok(Self { m, riemann, v, w, y })
    }

    /// Flat chart with every field zero.
    pub fn flat(m: usize) -> Self {
        let n = 2 * m;
        Self { m, riemann: RiemannTensor::zero(n), v: VectorJet::zero(n), w: VectorJet::zero(n), y: VectorJet::zero(n) }
    }

    pub fn n(&self) -> usize {
        2 * self.m
    }

    pub fn with_y(&self, y: VectorJet) -> Self {
        Self { y, ..self.clone() }
    }

    pub fn with_v(&self, v: VectorJet) -> Self {
        Self { v, ..self.clone() }
    }

    pub fn with_w(&self, w: VectorJet) -> Self {
        Self { w, ..self.clone() }
    }
}

pub(crate) fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// `∇_X Z` at `x₀` in normal coordinates: `Σ_a X_a ∂_a Z`.
fn nabla(x: &VectorJet, z: &VectorJet) -> Vec<Rational> {
    let n = x.n();
    (0..n).map(|c| (0..n).map(|a| &x.value[a] * &z.jacobian[c][a]).sum()).collect()
}

/// `X(g(U, V))` at `x₀`; the metric is flat to first order there.
fn directional_of_inner(x: &VectorJet, u: &VectorJet, v: &VectorJet) -> Rational {
    dot(&nabla(x, u), &v.value) + dot(&u.value, &nabla(x, v))
}

/// Scalar and vector quantities built from a [`PointGeometry`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseOps {
    pub g_vw: Rational,
    pub g_vy: Rational,
    pub g_wy: Rational,
    pub norm_y_sq: Rational,
    pub div_y: Rational,
    pub div_w: Rational,
    pub nabla_v_w: Vec<Rational>,
    pub nabla_w_v: Vec<Rational>,
    pub nabla_v_y: Vec<Rational>,
    pub nabla_w_y: Vec<Rational>,
    pub nabla_y_w: Vec<Rational>,
    /// `w(g(v, Y))`
    pub w_of_g_vy: Rational,
    /// `v(g(w, Y))`
    pub v_of_g_wy: Rational,
    pub ric_vw: Rational,
    pub scalar: Rational,
}

impl PointwiseOps {
    /// `g(∇_v Y, w) − g(∇_w Y, v)`
    pub fn antisymmetric_nabla_y(&self, g: &PointGeometry) -> Rational {
        dot(&self.nabla_v_y, &g.w.value) - dot(&self.nabla_w_y, &g.v.value)
    }

    /// `w(g(v,Y)) + v(g(w,Y)) − g(∇_w v, Y) − g(∇_v w, Y)`
    pub fn symmetric_derivative_combination(&self, g: &PointGeometry) -> Rational {
        &self.w_of_g_vy + &self.v_of_g_wy - dot(&self.nabla_w_v, &g.y.value) - dot(&self.nabla_v_w, &g.y.value)
    }

    /// `Ric(v,w) − ½ s g(v,w)`
    pub fn einstein_vw(&self) -> Rational {
        &self.ric_vw - &self.scalar * &self.g_vw * rat(1, 2)
    }
}

pub fn pointwise_ops(g: &PointGeometry) -> Result<PointwiseOps> {
    let ric = g.riemann.ricci()?;
    let scalar = (0..g.n()).map(|b| ric[b][b].clone()).sum();
    let ric_vw = (0..g.n()).flat_map(|a| (0..g.n()).map(move |b| (a, b))).map(|(a, b)| &ric[a][b] * &g.v.value[a] * &g.w.value[b]).sum();
    Ok(PointwiseOps {
        g_vw: dot(&g.v.value, &g.w.value),
        g_vy: dot(&g.v.value, &g.y.value),
        g_wy: dot(&g.w.value, &g.y.value),
        norm_y_sq: dot(&g.y.value, &g.y.value),
        div_y: (0..g.n()).map(|a| g.y.jacobian[a][a].clone()).sum(),
        div_w: (0..g.n()).map(|a| g.w.jacobian[a][a].clone()).sum(),
        nabla_v_w: nabla(&g.v, &g.w),
        nabla_w_v: nabla(&g.w, &g.v),
        nabla_v_y: nabla(&g.v, &g.y),
        nabla_w_y: nabla(&g.w, &g.y),
        nabla_y_w: nabla(&g.y, &g.w),
        w_of_g_vy: directional_of_inner(&g.w, &g.v, &g.y),
        v_of_g_wy: directional_of_inner(&g.v, &g.w, &g.y),
        ric_vw,
        scalar,
    })
}

/// The Taylor data of the connection of the squared fluctuated operator and
/// its endomorphism term, all at `x₀`:
///
/// * `t_a[a]    = −t Y_a`
/// * `t_ab[a][b] = −⅛ Σ_{s,t} R_bats γ_s γ_t − t ∂_b Y_a · Id`
/// * `e          = −(s/4) Id + (t/2) Σ_j [c(∂_j Y) γ_j − γ_j c(∂_j Y)]`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionData {
    pub t_a: Vec<TPoly>,
    pub t_ab: Vec<Vec<CliffordElement>>,
    pub e: CliffordElement,
}

pub(crate) fn rational_tpoly(q: &Rational) -> TPoly {
    TPoly::from_rational(q.clone())
}

pub(crate) fn t_times(q: &Rational) -> TPoly {
    TPoly::monomial(GaussianRational::real(q.clone()), 1)
}

/// `Σ_{s,t} coeff(s,t) γ_s γ_t`.
pub(crate) fn bivector(gammas: &GammaFamily, coeff: impl Fn(usize, usize) -> Rational) -> CliffordElement {
    let mut out = gammas.zero();
    for s in 0..gammas.n() {
        for t in 0..gammas.n() {
            let c = coeff(s, t);
            if !c.is_zero() {
                out.add_scaled(&gammas.product(&[s, t]), &GaussianRational::real(c));
            }
        }
    }
    out
}

/// `Σ_j [c(∂_j Y) γ_j − γ_j c(∂_j Y)]`.
pub(crate) fn y_commutator_sum(g: &PointGeometry, gammas: &GammaFamily) -> Result<CliffordElement> {
    let mut out = gammas.zero();
    for j in 0..g.n() {
        let dy = gammas.clifford_of_rational(&g.y.column(j))?;
        let gj = gammas.gamma(j);
        out = &out + &(&(&dy * gj) - &(gj * &dy));
    }
    Ok(out)
}

pub fn connection_data(g: &PointGeometry, gammas: &GammaFamily) -> Result<ConnectionData> {
    g.riemann.validate().map_err(EngineError::InvalidTensor)?;
    if gammas.m() != g.m {
        return Err(EngineError::Dimension { context: "gamma family", expected: g.m, got: gammas.m() });
    }
    let n = g.n();
    let t_a = (0..n).map(|a| t_times(&-g.y.value[a].clone())).collect();
    let t_ab = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let curv = bivector(gammas, |s, t| g.riemann.get(b, a, t, s) * rat(-1, 8));
                    let mut out = curv;
                    out.add_scaled_poly(&gammas.identity(), &t_times(&-g.y.jacobian[a][b].clone()));
                    out
                })
                .collect()
        })
        .collect();
    let s = g.riemann.scalar()?;
    let mut e = gammas.identity().scale(&rational_tpoly(&(-s * rat(1, 4))));
    e.add_scaled_poly(&y_commutator_sum(g, gammas)?, &t_times(&rat(1, 2)));
    Ok(ConnectionData { t_a, t_ab, e })
}
