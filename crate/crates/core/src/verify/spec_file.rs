//! JSON geometry files: sparse curvature entries with symmetry completion and
//! first jets of `v`, `w`, `Y`. Indices are 1-based; rationals are `"p/q"`
//! strings or integers.

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::geometry::{PointGeometry, RiemannTensor, VectorJet};
use crate::scalar::{format_rational, parse_rational, Rational};

/// A rational as it appears in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn parse(&self) -> Result<Rational> {
        match self {
            RationalText::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalText::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        RationalText::Text(format_rational(q))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiemannEntry {
    pub indices: [usize; 4],
    pub value: RationalText,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Vec<RationalText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobian: Option<Vec<Vec<RationalText>>>,
}

/// The file-level document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    pub m: usize,
    #[serde(default)]
    pub riemann: Vec<RiemannEntry>,
    #[serde(default)]
    pub v: JetSpec,
    #[serde(default)]
    pub w: JetSpec,
    #[serde(default)]
    pub y: JetSpec,
    #[serde(default, rename = "tEval", skip_serializing_if = "Option::is_none")]
    pub t_eval: Option<[RationalText; 2]>,
}

/// A parsed geometry plus the optional display value of `t = re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGeometry {
    pub geometry: PointGeometry,
    pub t_eval: Option<(Rational, Rational)>,
}

fn parse_vec(v: &[RationalText], n: usize, context: &'static str) -> Result<Vec<Rational>> {
    if v.len() != n {
        return Err(EngineError::Dimension { context, expected: n, got: v.len() });
    }
    v.iter().map(RationalText::parse).collect()
}

fn parse_jet(spec: &JetSpec, n: usize, name: &'static str) -> Result<VectorJet> {
    let mut jet = VectorJet::zero(n);
    if let Some(v) = &spec.value {
        jet.value = parse_vec(v, n, name)?;
    }
    if let Some(rows) = &spec.jacobian {
        if rows.len() != n {
            return Err(EngineError::Dimension { context: name, expected: n, got: rows.len() });
        }
        jet.jacobian = rows.iter().map(|r| parse_vec(r, n, name)).collect::<Result<_>>()?;
    }
    Ok(jet)
}

/// Fills the eight slots related to `R_abcd` by pair antisymmetry and pair
/// exchange. Disagreeing values are a symmetry conflict.
pub fn complete_symmetries(n: usize, entries: &[(usize, usize, usize, usize, Rational)]) -> Result<RiemannTensor> {
    let mut r = RiemannTensor::zero(n);
    let mut set = vec![false; n.pow(4)];
    for (a, b, c, d, value) in entries {
        let (a, b, c, d) = (*a, *b, *c, *d);
        let neg = -value.clone();
        let slots = [
            ((a, b, c, d), value),
            ((b, a, c, d), &neg),
            ((a, b, d, c), &neg),
            ((b, a, d, c), value),
            ((c, d, a, b), value),
            ((d, c, a, b), &neg),
            ((c, d, b, a), &neg),
            ((d, c, b, a), value),
        ];
        for ((p, q, s, t), v) in slots {
            let idx = ((p * n + q) * n + s) * n + t;
            if set[idx] {
                if r.get(p, q, s, t) != v {
                    return Err(EngineError::SymmetryConflict {
                        indices: [p + 1, q + 1, s + 1, t + 1],
                        existing: format_rational(r.get(p, q, s, t)),
                        given: format_rational(v),
                    });
                }
            } else {
                set[idx] = true;
                r.set(p, q, s, t, v.clone());
            }
        }
    }
    Ok(r)
}

pub fn geometry_from_spec(spec: &GeometrySpec) -> Result<LoadedGeometry> {
    if !(1..=4).contains(&spec.m) {
        return Err(EngineError::Range { what: "m", value: spec.m, range: "1..=4" });
    }
    let n = 2 * spec.m;
    let mut entries = Vec::with_capacity(spec.riemann.len());
    for e in &spec.riemann {
        if let Some(&bad) = e.indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(EngineError::Range { what: "riemann index", value: bad, range: "1..=n" });
        }
        let [a, b, c, d] = e.indices;
        entries.push((a - 1, b - 1, c - 1, d - 1, e.value.parse()?));
    }
    let riemann = complete_symmetries(n, &entries)?;
    riemann.validate().map_err(EngineError::InvalidTensor)?;
    let geometry = PointGeometry::new(spec.m, riemann, parse_jet(&spec.v, n, "v")?, parse_jet(&spec.w, n, "w")?, parse_jet(&spec.y, n, "y")?)?;
    let t_eval = match &spec.t_eval {
        Some([re, im]) => Some((re.parse()?, im.parse()?)),
        None => None,
    };
    Ok(LoadedGeometry { geometry, t_eval })
}

pub fn parse_geometry(text: &str) -> Result<LoadedGeometry> {
    let spec: GeometrySpec = serde_json::from_str(text).map_err(|e| EngineError::Parse(e.to_string()))?;
    geometry_from_spec(&spec)
}

pub fn load_geometry(path: &Path) -> Result<LoadedGeometry> {
    let text = std::fs::read_to_string(path).map_err(|source| EngineError::Io { path: path.display().to_string(), source })?;
    parse_geometry(&text)
}

fn jet_spec(j: &VectorJet) -> JetSpec {
    JetSpec {
        value: Some(j.value.iter().map(RationalText::from_rational).collect()),
        jacobian: if j.is_constant() {
            None
        } else {
            Some(j.jacobian.iter().map(|r| r.iter().map(RationalText::from_rational).collect()).collect())
        },
    }
}

/// The inverse of [`geometry_from_spec`]: one entry per independent
/// curvature component (`a < b`, `c < d`, `(a,b) ≤ (c,d)`).
pub fn spec_from_geometry(g: &PointGeometry) -> GeometrySpec {
    let n = g.n();
    let mut riemann = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in 0..n {
                for d in c + 1..n {
                    if (a, b) > (c, d) {
                        continue;
                    }
                    let v = g.riemann.get(a, b, c, d);
                    if !v.is_zero() {
                        riemann.push(RiemannEntry { indices: [a + 1, b + 1, c + 1, d + 1], value: RationalText::from_rational(v) });
                    }
                }
            }
        }
    }
    GeometrySpec { m: g.m, riemann, v: jet_spec(&g.v), w: jet_spec(&g.w), y: jet_spec(&g.y), t_eval: None }
}
