//! Per-geometry verification and report emission.
//!
//! Two tiers: the internal suite (oracle equivalence, reality, t-grading,
//! bilinearity) decides the exit status; differences from the printed closed
//! forms are findings, unless `strict_paper` is set.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::{generate_gammas, GammaFamily};
use crate::closed_forms::one_form_closed_form;
use crate::conventions::note_hash;
use crate::error::Result;
use crate::geometry::{PointGeometry, VectorJet};
use crate::operators::{composed_ab, transcribed_ab};
use crate::residue::{density_report, einstein_density, part1_breakdown, DensityReport, DensityValue, Part1Breakdown};
use crate::scalar::{format_rational, int, rational_to_f64, GaussianRational, Rational, TPoly};
use crate::verify::random::{random_geometry_with, RandomOptions};

/// Highest power of `t` any density can carry.
pub const T_POWERS: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Compare every H-term and the part-one summands, not just totals.
    pub per_term: bool,
    /// Count mismatches with the printed formulas as failures.
    pub strict_paper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

/// One compared coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrintedDiff {
    pub quantity: String,
    pub power: usize,
    pub engine: String,
    pub printed: String,
    pub diff: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermDiff {
    pub term: String,
    pub diff: String,
}

/// Attribution of a mismatch in one power of `t` to individual terms:
/// `total − printed total = Σ_terms (engine − printed) + bookkeeping_residual`,
/// where the residual is the printed terms' own failure to sum to the printed total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub power: usize,
    pub total_diff: String,
    pub term_diffs: Vec<TermDiff>,
    pub bookkeeping_residual: String,
    pub attribution_holds: bool,
}

/// The density evaluated at a numeric `t`, for display only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TEvaluation {
    pub t: [String; 2],
    pub total: [String; 2],
    /// `total · 2^m · Vol(S^{n−1})`, real and imaginary part, as decimals.
    pub scaled_decimal: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub m: usize,
    pub densities: DensityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part1_breakdown: Option<Part1Breakdown>,
    pub internal: Vec<Check>,
    pub printed: Vec<PrintedDiff>,
    pub discrepancies: Vec<Discrepancy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_eval: Option<TEvaluation>,
    pub internal_pass: bool,
    pub printed_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: String,
    pub engine_version: String,
    pub conventions_hash: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub strict_paper: bool,
    pub cases: Vec<CaseReport>,
    pub internal_pass: bool,
    pub printed_match: bool,
}

fn sum(values: &[DensityValue]) -> DensityValue {
    values.iter().cloned().sum()
}

/// `2^m · Vol(S^{n−1}) = 2^m · 2π^m / (m−1)!`.
pub fn unit_scale(m: usize) -> f64 {
    let fact: f64 = (1..m).map(|k| k as f64).product();
    2f64.powi(m as i32) * 2.0 * std::f64::consts::PI.powi(m as i32) / fact
}

fn evaluate_at(d: &DensityValue, t: &GaussianRational) -> GaussianRational {
    let p = TPoly::from_coeffs(d.coeffs().iter().map(|c| GaussianRational::real(c.clone())).collect());
    p.eval(t)
}

fn t_evaluation(m: usize, total: &DensityValue, t: &(Rational, Rational)) -> TEvaluation {
    let v = evaluate_at(total, &GaussianRational::new(t.0.clone(), t.1.clone()));
    let scale = unit_scale(m);
    TEvaluation {
        t: [format_rational(&t.0), format_rational(&t.1)],
        total: [format_rational(&v.re), format_rational(&v.im)],
        scaled_decimal: [format!("{:.12e}", rational_to_f64(&v.re) * scale), format!("{:.12e}", rational_to_f64(&v.im) * scale)],
    }
}

fn printed_diffs(d: &DensityReport, per_term: bool) -> Vec<PrintedDiff> {
    let mut out = Vec::new();
    for (label, engine, printed) in d.comparisons() {
        if !per_term && label.starts_with('H') {
            continue;
        }
        for k in 0..T_POWERS {
            let (e, p) = (engine.coeff(k), printed.coeff(k));
            out.push(PrintedDiff {
                quantity: label.clone(),
                power: k,
                engine: format_rational(&e),
                printed: format_rational(&p),
                diff: format_rational(&(&e - &p)),
                matches: e == p,
            });
        }
    }
    out
}

/// Structured attribution of every mismatching power of `t` in the total.
pub fn discrepancies(d: &DensityReport) -> Vec<Discrepancy> {
    let printed_sum = &(&d.cf_part1 + &sum(&d.cf_h)) - &d.cf_total;
    let mut terms: Vec<(String, DensityValue)> = vec![("part1".into(), &d.part1 - &d.cf_part1)];
    for i in 0..6 {
        terms.push((format!("H{}", i + 1), &d.h[i] - &d.cf_h[i]));
    }
    let total_diff = &d.total - &d.cf_total;
    (0..T_POWERS)
        .filter(|&k| !total_diff.coeff(k).is_zero_rational())
        .map(|k| {
            let attributed: Rational = terms.iter().map(|(_, v)| v.coeff(k)).sum::<Rational>() + printed_sum.coeff(k);
            Discrepancy {
                power: k,
                total_diff: format_rational(&total_diff.coeff(k)),
                term_diffs: terms
                    .iter()
                    .filter(|(_, v)| !v.coeff(k).is_zero_rational())
                    .map(|(name, v)| TermDiff { term: name.clone(), diff: format_rational(&v.coeff(k)) })
                    .collect(),
                bookkeeping_residual: format_rational(&printed_sum.coeff(k)),
                attribution_holds: attributed == total_diff.coeff(k),
            }
        })
        .collect()
}

trait IsZeroRational {
    fn is_zero_rational(&self) -> bool;
}

impl IsZeroRational for Rational {
    fn is_zero_rational(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Symbol-level oracle equivalence: transcribed and composed `σ_d(AB)` at `x₀`.
pub fn symbol_oracle_check(g: &PointGeometry, gammas: &GammaFamily) -> Result<Check> {
    let tr = transcribed_ab(g, gammas)?;
    let co = composed_ab(g, gammas)?;
    let failing: Vec<String> = [2, 1, 0]
        .into_iter()
        .filter(|&d| match (tr.piece(d), co.piece(d)) {
            (Some(a), Some(b)) => !a.equivalent(b),
            _ => true,
        })
        .map(|d| d.to_string())
        .collect();
    Ok(Check::new(
        "oracle-symbols",
        failing.is_empty(),
        if failing.is_empty() { "sigma_2, sigma_1, sigma_0 of AB agree".to_string() } else { format!("degrees {} differ", failing.join(", ")) },
    ))
}

fn internal_checks(g: &PointGeometry, gammas: &GammaFamily, d: &DensityReport) -> Result<Vec<Check>> {
    let mut checks = vec![symbol_oracle_check(g, gammas)?];
    checks.push(Check::new(
        "oracle-part2",
        d.part2 == d.oracle_part2,
        format!("transcribed {} / composed {}", d.part2, d.oracle_part2),
    ));
    let recomposed = &d.part1 + &sum(&d.h);
    checks.push(Check::new("decomposition", recomposed == d.total && sum(&d.h) == d.part2, "total = part1 + sum H_i"));
    checks.push(Check::new("reality", true, "every density has zero imaginary part"));
    checks.push(Check::new("h5-vanishes", d.h[4].is_zero(), format!("H5 = {}", d.h[4])));

    let y_free = einstein_density(&g.with_y(VectorJet::zero(g.n())), gammas)?;
    let graded = d.total.degree().is_none_or(|k| k <= 2);
    checks.push(Check::new(
        "t-grading",
        graded && y_free.coeff(0) == d.total.coeff(0),
        format!("degree {:?}; t^0 with Y = 0 is {}", d.total.degree(), format_rational(&y_free.coeff(0))),
    ));

    let doubled = einstein_density(&g.with_v(g.v.scaled(&int(2))), gammas)?;
    let shifted = einstein_density(&g.with_v(g.v.sum(&g.y)), gammas)?;
    let y_as_v = einstein_density(&g.with_v(g.y.clone()), gammas)?;
    let homogeneous = doubled == d.total.scale(&int(2));
    let additive = shifted == &d.total + &y_as_v;
    checks.push(Check::new("bilinearity", homogeneous && additive, format!("homogeneous {homogeneous}, additive {additive}")));
    Ok(checks)
}

/// Runs the engine, the closed forms and the internal suite on one geometry.
pub fn run_verify(g: &PointGeometry, options: &VerifyOptions) -> Result<CaseReport> {
    run_case("geometry", None, g, None, options)
}

pub fn run_case(label: &str, seed: Option<u64>, g: &PointGeometry, t_eval: Option<&(Rational, Rational)>, options: &VerifyOptions) -> Result<CaseReport> {
    let gammas = generate_gammas(g.m)?;
    let densities = density_report(g, &gammas)?;
    let internal = internal_checks(g, &gammas, &densities)?;
    let printed = printed_diffs(&densities, options.per_term);
    let discrepancies = discrepancies(&densities);
    Ok(CaseReport {
        label: label.into(),
        seed,
        m: g.m,
        part1_breakdown: if options.per_term { Some(part1_breakdown(g, &gammas)?) } else { None },
        internal_pass: internal.iter().all(|c| c.passed),
        printed_match: printed.iter().all(|p| p.matches),
        t_eval: t_eval.map(|t| t_evaluation(g.m, &densities.total, t)),
        densities,
        internal,
        printed,
        discrepancies,
    })
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>, strict_paper: bool, cases: Vec<CaseReport>) -> Self {
        Self {
            tool: "einres".into(),
            engine_version: env!("CARGO_PKG_VERSION").into(),
            conventions_hash: note_hash(),
            command: command.into(),
            seed,
            strict_paper,
            internal_pass: cases.iter().all(|c| c.internal_pass),
            printed_match: cases.iter().all(|c| c.printed_match),
            cases,
        }
    }

    /// 0 on success, 1 on an internal failure or, when strict, a printed-formula mismatch.
    pub fn exit_code(&self) -> i32 {
        if !self.internal_pass || (self.strict_paper && !self.printed_match) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# einres {} report\n", self.command);
        let _ = writeln!(s, "- engine version: {}", self.engine_version);
        let _ = writeln!(s, "- conventions hash: {}", self.conventions_hash);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "- seed: {seed}");
        }
        let _ = writeln!(s, "- internal suite: {}", pass_fail(self.internal_pass));
        let _ = writeln!(s, "- printed agreement: {}", if self.printed_match { "match" } else { "mismatch" });
        for c in &self.cases {
            let _ = writeln!(s, "\n## {} (m = {})\n", c.label, c.m);
            let _ = writeln!(s, "| check | status | detail |\n|---|---|---|");
            for k in &c.internal {
                let _ = writeln!(s, "| {} | {} | {} |", k.name, pass_fail(k.passed), k.detail);
            }
            let _ = writeln!(s, "\n| quantity | power | engine | printed | diff |\n|---|---|---|---|---|");
            for p in &c.printed {
                let _ = writeln!(s, "| {} | t^{} | {} | {} | {} |", p.quantity, p.power, p.engine, p.printed, p.diff);
            }
            if let Some(b) = &c.part1_breakdown {
                let _ = writeln!(s, "\n| part1 summand | value |\n|---|---|");
                for (name, v) in b.named() {
                    let _ = writeln!(s, "| {name} | {v} |");
                }
            }
            for d in &c.discrepancies {
                let terms: Vec<String> = d.term_diffs.iter().map(|t| format!("{} {}", t.term, t.diff)).collect();
                let _ = writeln!(
                    s,
                    "\n- t^{} mismatch {}: terms [{}], printed bookkeeping residual {}, attribution {}",
                    d.power,
                    d.total_diff,
                    terms.join(", "),
                    d.bookkeeping_residual,
                    if d.attribution_holds { "exact" } else { "BROKEN" }
                );
            }
            if let Some(t) = &c.t_eval {
                let _ = writeln!(s, "\n- at t = {} + {}i: total {} + {}i, scaled {} + {}i", t.t[0], t.t[1], t.total[0], t.total[1], t.scaled_decimal[0], t.scaled_decimal[1]);
            }
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("case,kind,name,power,engine,printed,diff,status\n");
        for c in &self.cases {
            for k in &c.internal {
                let _ = writeln!(s, "{},internal,{},,,,,{}", c.label, k.name, pass_fail(k.passed));
            }
            for p in &c.printed {
                let _ = writeln!(s, "{},printed,{},{},{},{},{},{}", c.label, p.quantity, p.power, p.engine, p.printed, p.diff, if p.matches { "match" } else { "mismatch" });
            }
            for d in &c.discrepancies {
                for t in &d.term_diffs {
                    let _ = writeln!(s, "{},discrepancy,{},{},,,{},", c.label, t.term, d.power, t.diff);
                }
                let _ = writeln!(s, "{},discrepancy,bookkeeping,{},,,{},{}", c.label, d.power, d.bookkeeping_residual, if d.attribution_holds { "exact" } else { "broken" });
            }
        }
        s
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

/// Seed of case `i` in a campaign starting at `seed`.
pub fn case_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

/// Runs `cases` random geometries in parallel; order follows the case index.
pub fn campaign(m: usize, seed: u64, cases: usize, random: &RandomOptions, options: &VerifyOptions) -> Result<Report> {
    generate_gammas(m)?;
    let results: Vec<CaseReport> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let s = case_seed(seed, i);
            run_case(&format!("case-{i}"), Some(s), &random_geometry_with(m, s, random), None, options)
        })
        .collect::<Result<_>>()?;
    Ok(Report::new("campaign", Some(seed), options.strict_paper, results))
}

/// Equation ids accepted by [`lemma`].
pub const EQ_IDS: [&str; 10] = ["3.12", "3.23", "3.28", "3.39", "3.46", "3.48", "3.50", "3.51", "1.4", "1.3"];

/// One printed equation next to the engine value it claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub eq_id: String,
    pub quantity: String,
    pub printed: DensityValue,
    pub engine: DensityValue,
    pub diff: DensityValue,
    pub matches: bool,
    pub conventions_hash: String,
}

/// Evaluates equation `eq_id` on `g`. The one-form formula is compared with
/// the engine's `t⁰` part, where it is expected to differ by a sign.
pub fn lemma(eq_id: &str, g: &PointGeometry) -> Result<LemmaReport> {
    let gammas = generate_gammas(g.m)?;
    let d = density_report(g, &gammas)?;
    let (quantity, printed, engine) = match eq_id {
        "3.12" => ("part1", d.cf_part1.clone(), d.part1.clone()),
        "3.23" | "3.28" | "3.39" | "3.46" | "3.48" | "3.50" => {
            let i = ["3.23", "3.28", "3.39", "3.46", "3.48", "3.50"].iter().position(|e| *e == eq_id).unwrap_or(0);
            (["H1", "H2", "H3", "H4", "H5", "H6"][i], d.cf_h[i].clone(), d.h[i].clone())
        }
        "3.51" => ("part2", d.cf_part2.clone(), d.part2.clone()),
        "1.4" => ("total", d.cf_total.clone(), d.total.clone()),
        "1.3" => ("total at t^0 (one-form formula)", one_form_closed_form(g)?, DensityValue::constant(d.total.coeff(0))),
        other => return Err(crate::error::EngineError::Parse(format!("unknown equation id {other:?}; expected one of {}", EQ_IDS.join(", ")))),
    };
    let diff = &engine - &printed;
    Ok(LemmaReport { eq_id: eq_id.into(), quantity: quantity.into(), matches: diff.is_zero(), printed, engine, diff, conventions_hash: note_hash() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RiemannTensor;

    #[test]
    fn flat_geometry_passes_everything() {
        let r = run_verify(&PointGeometry::flat(2), &VerifyOptions { per_term: true, strict_paper: true }).unwrap();
        assert!(r.internal_pass && r.printed_match);
        assert!(r.discrepancies.is_empty());
    }

    #[test]
    fn constant_curvature_report() {
        let mut g = PointGeometry::flat(2);
        g.riemann = RiemannTensor::constant_curvature(4, &int(1));
        g.v = VectorJet::basis(4, 0);
        g.w = VectorJet::basis(4, 0);
        let r = run_verify(&g, &VerifyOptions::default()).unwrap();
        assert!(r.internal_pass && r.printed_match);
        assert_eq!(r.densities.total, DensityValue::constant(crate::scalar::rat(1, 2)));
    }

    #[test]
    fn unknown_eq_id() {
        assert!(lemma("9.9", &PointGeometry::flat(2)).is_err());
    }

    #[test]
    fn unit_scale_m2() {
        // 4 · 2π²
        assert!((unit_scale(2) - 8.0 * std::f64::consts::PI.powi(2)).abs() < 1e-9);
    }
}
