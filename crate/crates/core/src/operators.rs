//! Symbols of the operators entering the Einstein functional: the fluctuated
//! Dirac operator, the products `A = c(v)D_t`, `B = c(w)D_t`, and the inverse
//! powers of the Laplace-type operator `Δ_t = D_t²`.

use num_traits::Zero;

use crate::clifford::{CliffordElement, GammaFamily};
use crate::error::{EngineError, Result};
use crate::geometry::{bivector, connection_data, y_commutator_sum, PointGeometry, VectorJet};
use crate::scalar::{int, rat, GaussianRational, Rational, TPoly};
use crate::symbol::{compose, SymbolFamily, SymbolJet, MAX_X_ORDER};

fn i_times(q: Rational) -> GaussianRational {
    GaussianRational::new(Rational::zero(), q)
}

fn check_family(g: &PointGeometry, gammas: &GammaFamily) -> Result<()> {
    if gammas.m() != g.m {
        return Err(EngineError::Dimension { context: "gamma family", expected: g.m, got: gammas.m() });
    }
    g.riemann.validate().map_err(EngineError::InvalidTensor)
}

/// `Σ_p γ_p Σ_{s,t} coeff(p,s,t) γ_s γ_t`.
fn trivector(gammas: &GammaFamily, coeff: impl Fn(usize, usize, usize) -> Rational) -> CliffordElement {
    let mut out = gammas.zero();
    for p in 0..gammas.n() {
        let inner = bivector(gammas, |s, t| coeff(p, s, t));
        if !inner.is_zero() {
            out = &out + &(gammas.gamma(p) * &inner);
        }
    }
    out
}

/// `c(ξ)` as a degree-one jet with coefficient `scale · γ_a` on `ξ_a`.
fn clifford_xi(gammas: &GammaFamily, scale: &GaussianRational, left: &CliffordElement, right: &CliffordElement) -> Result<SymbolJet> {
    let mut jet = SymbolJet::empty(gammas.m(), 1, MAX_X_ORDER);
    for a in 0..gammas.n() {
        jet.push_indices((&(left * gammas.gamma(a)) * right).scale_gauss(scale), &[], &[a], 0)?;
    }
    Ok(jet)
}

/// Symbols of `D_t`: `σ_1 = i c(ξ)` and `σ_0` through x-order one.
///
/// The spin-connection coefficients vanish at `x₀` and have first derivative
/// `∂_j ω_st(e_p) = ½ R_jpst`, so the x-linear part of `σ_0` is
/// `x_j (−⅛ Σ R_jpst γ_p γ_s γ_t + t c(∂_j Y))`.
pub fn dirac_jets(g: &PointGeometry, gammas: &GammaFamily) -> Result<SymbolFamily> {
    check_family(g, gammas)?;
    let id = gammas.identity();
    let sigma1 = clifford_xi(gammas, &GaussianRational::i(), &id, &id)?.with_max_x_order(1);
    let mut sigma0 = SymbolJet::empty(g.m, 0, 1);
    let cy = gammas.clifford_of_rational(&g.y.value)?;
    sigma0.push_indices(cy.scale(&TPoly::t()), &[], &[], 0)?;
    for j in 0..g.n() {
        let curvature = trivector(gammas, |p, s, t| g.riemann.get(j, p, s, t) * rat(-1, 8));
        let dy = gammas.clifford_of_rational(&g.y.column(j))?.scale(&TPoly::t());
        sigma0.push_indices(&curvature + &dy, &[j], &[], 0)?;
    }
    SymbolFamily::new(vec![sigma1, sigma0])
}

/// `c(f)` as an order-zero jet: `c(f(x₀)) + Σ_j x_j c(∂_j f)`.
pub fn multiplier_jet(f: &VectorJet, gammas: &GammaFamily) -> Result<SymbolJet> {
    let mut jet = SymbolJet::empty(gammas.m(), 0, 1);
    jet.push_indices(gammas.clifford_of_rational(&f.value)?, &[], &[], 0)?;
    for j in 0..gammas.n() {
        jet.push_indices(gammas.clifford_of_rational(&f.column(j))?, &[j], &[], 0)?;
    }
    Ok(jet)
}

/// Symbols of `c(f) D_t`, exact left multiplication of the Dirac jets.
pub fn clifford_times_dirac(f: &VectorJet, g: &PointGeometry, gammas: &GammaFamily) -> Result<SymbolFamily> {
    dirac_jets(g, gammas)?.left_multiply(&multiplier_jet(f, gammas)?)
}

/// `σ_2, σ_1, σ_0` of `AB` at `x₀` computed by the generic composition rule.
pub fn composed_ab(g: &PointGeometry, gammas: &GammaFamily) -> Result<SymbolFamily> {
    let a = clifford_times_dirac(&g.v, g, gammas)?;
    let b = clifford_times_dirac(&g.w, g, gammas)?;
    let pieces = [2, 1, 0].iter().map(|&d| compose(&a, &b, d, 2).map(|j| j.eval_x0())).collect::<Result<_>>()?;
    SymbolFamily::new(pieces)
}

/// `σ_2, σ_1, σ_0` of `AB` at `x₀`, transcribed term by term from the
/// printed expansion (the spin-connection terms vanish at `x₀`).
///
/// The curvature term is `⅛ Σ R'_jpst c(v) γ_j c(w) γ_p γ_s γ_t` with
/// `R'_jpst = ⟨R(e_j,e_p)e_s, e_t⟩ = R_jpts` in this crate's convention.
pub fn transcribed_ab(g: &PointGeometry, gammas: &GammaFamily) -> Result<SymbolFamily> {
    check_family(g, gammas)?;
    let m = g.m;
    let n = g.n();
    let cv = gammas.clifford_of_rational(&g.v.value)?;
    let cw = gammas.clifford_of_rational(&g.w.value)?;
    let cy = gammas.clifford_of_rational(&g.y.value)?;
    let t = TPoly::t();

    // σ_2 = −c(v)c(ξ)c(w)c(ξ)
    let mut s2 = SymbolJet::empty(m, 2, 0);
    for a in 0..n {
        let left = &cv * gammas.gamma(a);
        for b in 0..n {
            let c = &(&(&left * &cw) * gammas.gamma(b));
            s2.push_indices(-c, &[], &[a, b], 0)?;
        }
    }

    // σ_1 = i t c(v)c(ξ)c(w)c(Y) + i t c(v)c(Y)c(w)c(ξ) + i Σ ∂_j w_γ c(v)c(dx_j)c(e_γ)c(ξ)
    let it = TPoly::i() * TPoly::t();
    let cvcy_cw = &(&cv * &cy) * &cw;
    let mut s1 = SymbolJet::empty(m, 1, 0);
    for a in 0..n {
        let first = &(&(&cv * gammas.gamma(a)) * &cw) * &cy;
        let second = &cvcy_cw * gammas.gamma(a);
        let mut c = (&first + &second).scale(&it);
        for j in 0..n {
            let dw = gammas.clifford_of_rational(&g.w.column(j))?;
            let term = &(&(&cv * gammas.gamma(j)) * &dw) * gammas.gamma(a);
            c.add_scaled(&term, &GaussianRational::i());
        }
        s1.push_indices(c, &[], &[a], 0)?;
    }

    // σ_0
    let mut c0 = gammas.zero();
    for j in 0..n {
        let curv = trivector(gammas, |p, s, tt| g.riemann.get(j, p, tt, s) * rat(1, 8));
        if !curv.is_zero() {
            c0 = &c0 + &(&(&(&cv * gammas.gamma(j)) * &cw) * &curv);
        }
    }
    c0.add_scaled_poly(&(&cvcy_cw * &cy), &(&t * &t));
    for j in 0..n {
        let dw = gammas.clifford_of_rational(&g.w.column(j))?;
        let dy = gammas.clifford_of_rational(&g.y.column(j))?;
        let vj = &cv * gammas.gamma(j);
        c0.add_scaled_poly(&(&(&vj * &dw) * &cy), &t);
        c0.add_scaled_poly(&(&(&vj * &cw) * &dy), &t);
    }
    let mut s0 = SymbolJet::empty(m, 0, 0);
    s0.push_indices(c0, &[], &[], 0)?;

    SymbolFamily::new(vec![s2, s1, s0])
}

/// The sub-leading-squared symbol `σ_{−2p−2}(Δ_t^{−p})` split into its
/// printed summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSubleadingParts {
    /// `p(p+1)/3 ‖ξ‖^{−2p−4} Σ Ric_ab ξ_a ξ_b`
    pub ricci: SymbolJet,
    /// `−2p(p+1) t² ‖ξ‖^{−2p−4} Σ Y_a Y_b ξ_a ξ_b`
    pub y_y: SymbolJet,
    /// `p t² ‖ξ‖^{−2p−2} |Y|² + p t ‖ξ‖^{−2p−2} div Y`
    pub norm_and_divergence: SymbolJet,
    /// `−¼ p(p+1) ‖ξ‖^{−2p−4} Σ R_abst γ_s γ_t ξ_a ξ_b`
    pub curvature_bivector: SymbolJet,
    /// `−2p(p+1) t ‖ξ‖^{−2p−4} Σ ∂_b Y_a ξ_a ξ_b`
    pub jacobian: SymbolJet,
    /// `−p ‖ξ‖^{−2p−2} [s/4 − (t/2) Σ_j (c(∂_j Y)γ_j − γ_j c(∂_j Y))]`
    pub endomorphism: SymbolJet,
}

impl SubSubleadingParts {
    pub fn named(&self) -> [(&'static str, &SymbolJet); 6] {
        [
            ("ricci", &self.ricci),
            ("y-y", &self.y_y),
            ("norm-and-divergence", &self.norm_and_divergence),
            ("curvature-bivector", &self.curvature_bivector),
            ("jacobian", &self.jacobian),
            ("endomorphism", &self.endomorphism),
        ]
    }

    pub fn total(&self) -> Result<SymbolJet> {
        let mut acc = self.ricci.clone();
        for (_, j) in &self.named()[1..] {
            acc = acc.add(j)?;
        }
        Ok(acc)
    }
}

/// The three graded pieces of `Δ_t^{−p}` at `x₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceInverseJets {
    pub p: usize,
    pub leading: SymbolJet,
    pub subleading: SymbolJet,
    pub sub_subleading: SubSubleadingParts,
}

impl LaplaceInverseJets {
    pub fn family(&self) -> Result<SymbolFamily> {
        SymbolFamily::new(vec![self.leading.clone(), self.subleading.clone(), self.sub_subleading.total()?])
    }
}

pub fn laplace_inverse_jets(g: &PointGeometry, p: usize, gammas: &GammaFamily) -> Result<LaplaceInverseJets> {
    if p == 0 {
        return Err(EngineError::Range { what: "p", value: p, range: "1.." });
    }
    check_family(g, gammas)?;
    let m = g.m;
    let n = g.n();
    let pi = p as i64;
    let k0 = 2 * p as i32;
    let id = gammas.identity();
    let t = TPoly::t();
    let t2 = &t * &t;
    let ric = g.riemann.ricci()?;
    let cd = connection_data(g, gammas)?;

    // σ_{−2p} = ‖ξ‖^{−2p} − (p/3) ‖ξ‖^{−2p−2} Σ R_ajbk x_j x_k ξ_a ξ_b
    let mut leading = SymbolJet::empty(m, -k0, 2);
    leading.push_indices(id.clone(), &[], &[], k0)?;
    for a in 0..n {
        for b in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = g.riemann.get(a, j, b, k);
                    if !r.is_zero() {
                        leading.push_indices(id.scale_rational(&(r * rat(-pi, 3))), &[j, k], &[a, b], k0 + 2)?;
                    }
                }
            }
        }
    }

    // σ_{−2p−1}
    let mut subleading = SymbolJet::empty(m, -k0 - 1, 1);
    let minus_2pi = i_times(int(-2 * pi));
    for a in 0..n {
        for b in 0..n {
            if !ric[a][b].is_zero() {
                subleading.push_indices(id.scale_gauss(&i_times(&ric[a][b] * rat(-2 * pi, 3))), &[b], &[a], k0 + 2)?;
            }
            subleading.push_indices(cd.t_ab[a][b].scale_gauss(&minus_2pi), &[b], &[a], k0 + 2)?;
        }
        subleading.push_indices(id.scale(&cd.t_a[a].scale(&minus_2pi)), &[], &[a], k0 + 2)?;
    }

    // σ_{−2p−2}
    let pp1 = int(pi * (pi + 1));
    let mut ricci = SymbolJet::empty(m, -k0 - 2, 0);
    let mut y_y = ricci.clone();
    let mut norm_and_divergence = ricci.clone();
    let mut curvature_bivector = ricci.clone();
    let mut jacobian = ricci.clone();
    let mut endomorphism = ricci.clone();
    let mut norm_y = Rational::zero();
    let mut div_y = Rational::zero();
    for a in 0..n {
        norm_y += &g.y.value[a] * &g.y.value[a];
        div_y += &g.y.jacobian[a][a];
        for b in 0..n {
            ricci.push_indices(id.scale_rational(&(&ric[a][b] * &pp1 * rat(1, 3))), &[], &[a, b], k0 + 4)?;
            let yy = &g.y.value[a] * &g.y.value[b] * &pp1 * int(-2);
            y_y.push_indices(id.scale(&t2.scale_rational(&yy)), &[], &[a, b], k0 + 4)?;
            let biv = bivector(gammas, |s, tt| g.riemann.get(a, b, s, tt).clone()).scale_rational(&(&pp1 * rat(-1, 4)));
            curvature_bivector.push_indices(biv, &[], &[a, b], k0 + 4)?;
            let jab = &g.y.jacobian[a][b] * &pp1 * int(-2);
            jacobian.push_indices(id.scale(&t.scale_rational(&jab)), &[], &[a, b], k0 + 4)?;
        }
    }
    // p (T_a T_a − T_aa) with T_a = −t Y_a: the sign of the t² part follows
    // from T_a T_a = t²|Y|², the exact expansion of |ξ − itY|^{−2p}
    let nd = t2.scale_rational(&(norm_y * int(pi))) + t.scale_rational(&(div_y * int(pi)));
    norm_and_divergence.push_indices(id.scale(&nd), &[], &[], k0 + 2)?;
    let s = g.riemann.scalar()?;
    let mut bracket = id.scale_rational(&(s * rat(1, 4)));
    bracket.add_scaled_poly(&y_commutator_sum(g, gammas)?, &t.scale_rational(&rat(-1, 2)));
    endomorphism.push_indices(bracket.scale_rational(&int(-pi)), &[], &[], k0 + 2)?;

    Ok(LaplaceInverseJets {
        p,
        leading,
        subleading,
        sub_subleading: SubSubleadingParts { ricci, y_y, norm_and_divergence, curvature_bivector, jacobian, endomorphism },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::generate_gammas;
    use crate::geometry::RiemannTensor;

    #[test]
    fn flat_dirac_symbols() {
        let gm = generate_gammas(2).unwrap();
        let g = PointGeometry::flat(2);
        let d = dirac_jets(&g, &gm).unwrap();
        assert!(d.piece(0).unwrap().is_empty());
        let s1 = d.piece(1).unwrap();
        assert_eq!(s1.len(), 4);

        let g = g.with_y(VectorJet::basis(4, 0));
        let d = dirac_jets(&g, &gm).unwrap();
        let expected = SymbolJet::monomial(gm.gamma(0).scale(&TPoly::t()), &[], 0).with_max_x_order(1);
        assert_eq!(d.piece(0).unwrap(), &expected);
    }

    #[test]
    fn multiplier_examples() {
        let gm = generate_gammas(1).unwrap();
        assert!(multiplier_jet(&VectorJet::zero(2), &gm).unwrap().is_empty());
        let mut f = VectorJet::zero(2);
        f.jacobian = vec![vec![int(2), int(0)], vec![int(3), int(0)]];
        let d = multiplier_jet(&f, &gm).unwrap().d_x(0).unwrap().eval_x0();
        let expected = SymbolJet::monomial(gm.clifford_of_rational(&[int(2), int(3)]).unwrap(), &[], 0).eval_x0();
        assert_eq!(d, expected);
    }

    #[test]
    fn laplace_flat_examples() {
        let gm = generate_gammas(2).unwrap();
        let g = PointGeometry::flat(2);
        for p in 1..=3 {
            let l = laplace_inverse_jets(&g, p, &gm).unwrap();
            assert_eq!(l.leading, SymbolJet::monomial(gm.identity(), &[], 2 * p as i32));
            assert!(l.subleading.is_empty());
            assert!(l.sub_subleading.total().unwrap().is_empty());
        }

        let g = g.with_y(VectorJet::basis(4, 0));
        let gm1 = generate_gammas(2).unwrap();
        let l = laplace_inverse_jets(&g, 1, &gm1).unwrap();
        let expected = SymbolJet::monomial(gm1.identity().scale(&TPoly::t().scale(&i_times(int(2)))), &[0], 4);
        assert!(l.subleading.equivalent(&expected));
    }

    #[test]
    fn laplace_constant_curvature_ricci_piece() {
        let gm = generate_gammas(2).unwrap();
        let mut g = PointGeometry::flat(2);
        g.riemann = RiemannTensor::constant_curvature(4, &int(1));
        let l = laplace_inverse_jets(&g, 2, &gm).unwrap();
        let mut expected = SymbolJet::empty(2, -6, 0);
        for a in 0..4 {
            expected.push_indices(gm.identity().scale_rational(&int(6)), &[], &[a, a], 8).unwrap();
        }
        assert_eq!(l.sub_subleading.ricci, expected);
    }

    #[test]
    fn transcription_matches_composition_on_constant_curvature() {
        let gm = generate_gammas(2).unwrap();
        let mut g = PointGeometry::flat(2);
        g.riemann = RiemannTensor::constant_curvature(4, &int(1));
        g.v = VectorJet::basis(4, 0);
        g.w = VectorJet::basis(4, 1);
        let tr = transcribed_ab(&g, &gm).unwrap();
        let co = composed_ab(&g, &gm).unwrap();
        for d in [2, 1, 0] {
            assert!(tr.piece(d).unwrap().equivalent(co.piece(d).unwrap()), "degree {d}");
        }
    }
}
