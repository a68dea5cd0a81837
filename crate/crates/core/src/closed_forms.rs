//! The printed closed forms, evaluated verbatim.
//!
//! These represent what the source formulas say, not what the calculus gives;
//! no suspected typo is corrected here. Where a printed bracket is not
//! well-formed as written (a missing `g(v,w)` factor, an index left free),
//! the reading chosen is the one documented on the function.

use crate::error::{EngineError, Result};
use crate::geometry::{dot, pointwise_ops, PointGeometry};
use crate::residue::DensityValue;
use crate::scalar::{int, rat, Rational};

/// Scalars every printed bracket is built from.
struct Quantities {
    m: Rational,
    g_vw: Rational,
    g_vy: Rational,
    g_wy: Rational,
    norm_y: Rational,
    div_y: Rational,
    div_w: Rational,
    ric_vw: Rational,
    scalar: Rational,
    einstein: Rational,
    /// `w(g(v,Y)) + v(g(w,Y)) − g(∇_w v, Y) − g(∇_v w, Y)`
    sym: Rational,
    /// `g(∇_v Y, w) − g(∇_w Y, v)`
    anti: Rational,
    nabla_v_w_y: Rational,
    nabla_y_w_v: Rational,
    nabla_w_y_v: Rational,
    nabla_v_y_w: Rational,
}

fn quantities(g: &PointGeometry) -> Result<Quantities> {
    let ops = pointwise_ops(g)?;
    Ok(Quantities {
        m: int(g.m as i64),
        sym: ops.symmetric_derivative_combination(g),
        anti: ops.antisymmetric_nabla_y(g),
        einstein: ops.einstein_vw(),
        nabla_v_w_y: dot(&ops.nabla_v_w, &g.y.value),
        nabla_y_w_v: dot(&ops.nabla_y_w, &g.v.value),
        nabla_w_y_v: dot(&ops.nabla_w_y, &g.v.value),
        nabla_v_y_w: dot(&ops.nabla_v_y, &g.w.value),
        g_vw: ops.g_vw,
        g_vy: ops.g_vy,
        g_wy: ops.g_wy,
        norm_y: ops.norm_y_sq,
        div_y: ops.div_y,
        div_w: ops.div_w,
        ric_vw: ops.ric_vw,
        scalar: ops.scalar,
    })
}

fn poly(c0: Rational, c1: Rational, c2: Rational) -> DensityValue {
    DensityValue::from_coeffs(vec![c0, c1, c2])
}

/// The printed total integrand:
/// `−⅙ G(v,w) + 2t² g(v,Y)g(w,Y) + (1−3m)t²|Y|²g(v,w) − t div(Y) g(v,w)
///  + 2t [w(g(v,Y)) + v(g(w,Y)) − g(∇_w v,Y) − g(∇_v w,Y)] − 2t [g(∇_v Y,w) − g(∇_w Y,v)]`.
pub fn einstein_closed_form(g: &PointGeometry) -> Result<DensityValue> {
    let q = quantities(g)?;
    Ok(poly(
        &q.einstein * rat(-1, 6),
        -&q.div_y * &q.g_vw + int(2) * &q.sym - int(2) * &q.anti,
        int(2) * &q.g_vy * &q.g_wy + (int(1) - int(3) * &q.m) * &q.norm_y * &q.g_vw,
    ))
}

/// Part one: `(m−1)/12 · s g(v,w) + (m−1) t [g(∇_v Y,w) − g(∇_w Y,v)]`.
pub fn part1_closed_form(g: &PointGeometry) -> Result<DensityValue> {
    let q = quantities(g)?;
    let m1 = &q.m - int(1);
    Ok(poly(&m1 * &q.scalar * &q.g_vw * rat(1, 12), &m1 * &q.anti, int(0)))
}

/// Part two, the printed sum of `H_1 … H_6`:
/// `−⅙ G − (m−1)/12 · s g + 2t² g(v,Y)g(w,Y) + (1−3m)t²|Y|²g − t div(Y) g
///  + 2t [w(g(v,Y)) + …] − (m+1) t [g(∇_v Y,w) − g(∇_w Y,v)]`.
pub fn part2_closed_form(g: &PointGeometry) -> Result<DensityValue> {
    let q = quantities(g)?;
    let m1 = &q.m - int(1);
    Ok(poly(
        &q.einstein * rat(-1, 6) - &m1 * &q.scalar * &q.g_vw * rat(1, 12),
        -&q.div_y * &q.g_vw + int(2) * &q.sym - (&q.m + int(1)) * &q.anti,
        int(2) * &q.g_vy * &q.g_wy + (int(1) - int(3) * &q.m) * &q.norm_y * &q.g_vw,
    ))
}

/// The printed value of `H_i`, `i ∈ 1..=6`.
///
/// * `H_1 = ¼ s g − ½ Ric + t²(2 g(v,Y)g(w,Y) − |Y|² g)
///   + t [g(∇_v w,Y) − g(∇_Y w,v) + div(w) g(Y,v)] + t [g(∇_w Y,v) + g(∇_v Y,w) + div(Y) g]`
/// * `H_2 = −t [g(v,Y) div(w) − g(∇_Y w,v) + g(∇_v w,Y)] − 2t² g(v,Y)g(w,Y)`
/// * `H_3 = (m/6) s g − ⅓ Ric + (1−m)/4 · s g + t²(2 g(v,Y)g(w,Y) − m|Y|² g)
///   + t²|Y|²(2 − 2m) g + (m−1) t div(Y) g + t [S − m div(Y) g] − m t A − t A`,
///   where `S` is the symmetric combination, `A` the
///   antisymmetric one, the bare `m Σ ∂_a Y_a` inside the `S` bracket is read
///   as carrying `g(v,w)`, and the final free-index term is read as `A`
/// * `H_4 = ⅔ (2 Ric − s g) − t [S − m div(Y) g]`
/// * `H_5 = 0`
/// * `H_6 = −⅓ (2 Ric − s g)`
pub fn h_closed_form(i: usize, g: &PointGeometry) -> Result<DensityValue> {
    let q = quantities(g)?;
    let sg = &q.scalar * &q.g_vw;
    let two_ric_minus_sg = int(2) * &q.ric_vw - &sg;
    let s_minus_div = &q.sym - &q.m * &q.div_y * &q.g_vw;
    Ok(match i {
        1 => poly(
            &sg * rat(1, 4) - &q.ric_vw * rat(1, 2),
            &q.nabla_v_w_y - &q.nabla_y_w_v + &q.div_w * &q.g_vy + &q.nabla_w_y_v + &q.nabla_v_y_w + &q.div_y * &q.g_vw,
            int(2) * &q.g_vy * &q.g_wy - &q.norm_y * &q.g_vw,
        ),
        2 => poly(
            int(0),
            -(&q.g_vy * &q.div_w - &q.nabla_y_w_v + &q.nabla_v_w_y),
            int(-2) * &q.g_vy * &q.g_wy,
        ),
        3 => poly(
            &q.m * &sg * rat(1, 6) - &q.ric_vw * rat(1, 3) + (int(1) - &q.m) * &sg * rat(1, 4),
            (&q.m - int(1)) * &q.div_y * &q.g_vw + &s_minus_div - &q.m * &q.anti - &q.anti,
            int(2) * &q.g_vy * &q.g_wy - &q.m * &q.norm_y * &q.g_vw + &q.norm_y * (int(2) - int(2) * &q.m) * &q.g_vw,
        ),
        4 => poly(&two_ric_minus_sg * rat(2, 3), -s_minus_div, int(0)),
        5 => DensityValue::default(),
        6 => poly(&two_ric_minus_sg * rat(-1, 3), int(0), int(0)),
        _ => return Err(EngineError::Range { what: "H index", value: i, range: "1..=6" }),
    })
}

pub fn h_closed_forms(g: &PointGeometry) -> Result<[DensityValue; 6]> {
    Ok([
        h_closed_form(1, g)?,
        h_closed_form(2, g)?,
        h_closed_form(3, g)?,
        h_closed_form(4, g)?,
        h_closed_form(5, g)?,
        h_closed_form(6, g)?,
    ])
}

/// The one-form version at `t = 0`: `+⅙ G(v,w)`.
pub fn one_form_closed_form(g: &PointGeometry) -> Result<DensityValue> {
    let q = quantities(g)?;
    Ok(DensityValue::constant(&q.einstein * rat(1, 6)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{RiemannTensor, VectorJet};

    fn constant_curvature() -> PointGeometry {
        let mut g = PointGeometry::flat(2);
        g.riemann = RiemannTensor::constant_curvature(4, &int(1));
        g.v = VectorJet::basis(4, 0);
        g.w = VectorJet::basis(4, 0);
        g
    }

    #[test]
    fn flat_is_zero() {
        let g = PointGeometry::flat(2);
        assert!(einstein_closed_form(&g).unwrap().is_zero());
        assert!(part1_closed_form(&g).unwrap().is_zero());
        assert!(part2_closed_form(&g).unwrap().is_zero());
        assert!(one_form_closed_form(&g).unwrap().is_zero());
        assert!(h_closed_forms(&g).unwrap().iter().all(DensityValue::is_zero));
    }

    #[test]
    fn constant_curvature_values() {
        let g = constant_curvature();
        assert_eq!(einstein_closed_form(&g).unwrap(), DensityValue::constant(rat(1, 2)));
        assert_eq!(part1_closed_form(&g).unwrap(), DensityValue::constant(int(1)));
        assert_eq!(part2_closed_form(&g).unwrap(), DensityValue::constant(rat(-1, 2)));
        assert_eq!(one_form_closed_form(&g).unwrap(), DensityValue::constant(rat(-1, 2)));
        let h = h_closed_forms(&g).unwrap();
        let expected = [rat(3, 2), int(0), int(0), int(-4), int(0), int(2)];
        for (v, e) in h.iter().zip(expected) {
            assert_eq!(v, &DensityValue::constant(e));
        }
    }

    #[test]
    fn flat_constant_y_total() {
        let g = PointGeometry::flat(2).with_y(VectorJet::basis(4, 0)).with_v(VectorJet::basis(4, 0)).with_w(VectorJet::basis(4, 0));
        assert_eq!(einstein_closed_form(&g).unwrap(), DensityValue::from_coeffs(vec![int(0), int(0), int(-3)]));
    }

    #[test]
    fn h_index_out_of_range() {
        assert!(h_closed_form(7, &PointGeometry::flat(2)).is_err());
    }
}
