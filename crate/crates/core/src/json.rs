//! JSON encodings. Rationals are strings `"p/q"` (or `"p"`), integers that
//! may grow without bound are decimal strings, and object keys are sorted.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cone::{EnvelopePoint, EnvelopeVerdict};
use crate::error::{Error, Result};
use crate::freesum::{
    AffineReport, BraunVerdict, ConverseReport, Counterexample, DecompositionCheck, DecompositionReport,
    EnvelopeCondition, FreeSumWitness, GorensteinReport, UnivariateBraunVerdict,
};
use crate::linalg::LatticeBasis;
use crate::polytope::{DualPolyhedron, GorensteinData, RationalPolytope};
use crate::rational::{format_qvec, format_rational, parse_rational, QVec};
use crate::series::{DeltaPolynomial, QuasiPolynomial, TruncatedSeries, UnivariateSeries};

/// Parses `{"dim": n, "vertices": [["1/2", "0"], ...]}`. Plain JSON integers
/// are accepted in place of strings.
pub fn polytope_from_json(v: &Value) -> Result<RationalPolytope> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidInput("missing integer field \"dim\"".into()))? as usize;
    let vertices = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("missing array field \"vertices\"".into()))?;
    let points = vertices
        .iter()
        .map(|row| {
            let row = row
                .as_array()
                .ok_or_else(|| Error::InvalidInput("a vertex must be an array".into()))?;
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            row.iter().map(rational_from_json).collect::<Result<QVec>>()
        })
        .collect::<Result<Vec<QVec>>>()?;
    RationalPolytope::new(dim, points)
}

pub fn polytope_from_str(s: &str) -> Result<RationalPolytope> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    polytope_from_json(&v)
}

fn rational_from_json(v: &Value) -> Result<crate::Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(crate::rational::int(n.as_i64().expect("checked"))),
        other => Err(Error::ParseRational(other.to_string())),
    }
}

pub fn qvec_json(v: &[crate::Rational]) -> Value {
    json!(format_qvec(v))
}

fn bigint_json(b: &BigInt) -> Value {
    Value::String(b.to_string())
}

fn bigints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_json).collect())
}

pub fn polytope_to_json(p: &RationalPolytope) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": p.vertices().iter().map(|v| qvec_json(v)).collect::<Vec<_>>(),
    })
}

pub fn lattice_json(l: &LatticeBasis) -> Value {
    json!({
        "ambient_dim": l.ambient_dim(),
        "basis": l.vectors().iter().map(|v| bigints_json(v)).collect::<Vec<_>>(),
    })
}

pub fn dual_to_json(d: &DualPolyhedron) -> Value {
    json!({
        "span_basis": lattice_json(&d.span_basis),
        "vertices": d.vertex_functionals.iter().map(|v| qvec_json(v)).collect::<Vec<_>>(),
        "rays": d.ray_functionals.iter().map(|v| qvec_json(v)).collect::<Vec<_>>(),
        "bounded": d.is_bounded(),
        "lattice": d.is_lattice_polyhedron(),
        "denominator": d.denominator().to_string(),
    })
}

pub fn series_to_json(s: &TruncatedSeries) -> Value {
    s.to_json()
}

pub fn univariate_json(s: &UnivariateSeries) -> Value {
    bigints_json(s.coefficients())
}

pub fn delta_to_json(d: &DeltaPolynomial, dim: usize) -> Value {
    json!({"delta": bigints_json(&d.coefficients), "den": d.den, "dim": dim})
}

pub fn quasipolynomial_json(q: &QuasiPolynomial) -> Value {
    json!({
        "period": q.period,
        "constituents": q.constituents.iter().map(|c| qvec_json(c)).collect::<Vec<_>>(),
    })
}

pub fn envelope_points_json(points: &[EnvelopePoint], height_bound: u64) -> Value {
    let points: Vec<Value> = points
        .iter()
        .map(|e| json!({"coords": qvec_json(&e.coords), "lattice": e.lattice}))
        .collect();
    json!({"points": points, "height_bound": height_bound})
}

pub fn envelope_verdict_json(v: &EnvelopeVerdict) -> Value {
    match v {
        EnvelopeVerdict::Witness {
            point,
            envelope_height,
        } => json!({"nonempty": true, "witness": point, "envelope_height": format_rational(envelope_height)}),
        EnvelopeVerdict::Empty {
            certified,
            searched_height,
        } => json!({"nonempty": false, "certified": certified, "searched_height": searched_height}),
    }
}

pub fn gorenstein_json(g: &GorensteinData) -> Value {
    json!({"index": g.index, "interior_point": g.interior_point, "center": qvec_json(&g.center)})
}

pub fn witness_json(w: &FreeSumWitness) -> Value {
    json!({
        "kind": w.kind.as_str(),
        "p": qvec_json(&w.p),
        "r": w.r,
        "target": lattice_json(&w.target),
        "lattice_j": lattice_json(&w.lattice_j),
        "lattice_k": lattice_json(&w.lattice_k),
        "complementary": true,
        "exponent": w.braun_exponent(),
    })
}

fn counterexample_json(c: &Option<Counterexample>) -> Value {
    match c {
        Some(c) => json!({"exp": c.exponent, "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string()}),
        None => Value::Null,
    }
}

pub fn braun_json(v: &BraunVerdict) -> Value {
    json!({
        "holds": v.holds_up_to_t,
        "T": v.height_bound,
        "exponent": v.exponent,
        "counterexample": counterexample_json(&v.counterexample),
        "first_failure_height": v.first_failure_height,
        "residual": v.residual.to_json(),
        "lhs_univariate": univariate_json(&v.lhs_univariate),
        "rhs_univariate": univariate_json(&v.rhs_univariate),
        "evidence": v.evidence.as_str(),
    })
}

pub fn univariate_braun_json(v: &UnivariateBraunVerdict) -> Value {
    json!({
        "T": v.height_bound,
        "ehrhart_holds": v.ehrhart_holds,
        "first_failure": v.first_failure.as_ref().map(|(t, a, b)| json!({"t": t, "lhs": a.to_string(), "rhs": b.to_string()})),
        "delta_holds": v.delta_holds,
        "delta_p": bigints_json(&v.delta_p.coefficients),
        "delta_q": bigints_json(&v.delta_q.coefficients),
        "delta_sum": bigints_json(&v.delta_sum.coefficients),
    })
}

pub fn decomposition_report_json(r: &DecompositionReport) -> Value {
    json!({
        "T": r.height_bound,
        "holds": r.holds(),
        "points_checked": r.points_checked,
        "violations": r.violations.iter().map(|v| json!({"point": v.point, "matches": v.matches})).collect::<Vec<_>>(),
    })
}

pub fn decomposition_check_json(c: &DecompositionCheck, height_bound: u64) -> Value {
    json!({
        "T": height_bound,
        "holds": c.holds,
        "first_difference": counterexample_json(&c.first_difference),
        "zero_terms": c.zero_terms,
        "dual_denominator": c.dual_denominator,
    })
}

pub fn converse_json(r: &ConverseReport) -> Value {
    json!({
        "dual_p_lattice": r.dual_p_lattice,
        "dual_q_lattice": r.dual_q_lattice,
        "braun_holds": r.braun_holds_up_to_t,
        "consistent": r.consistent,
        "braun": braun_json(&r.verdict),
    })
}

pub fn envelope_condition_json(c: &EnvelopeCondition) -> Value {
    json!({
        "holds": c.holds,
        "T": c.height_bound,
        "witness": c.witness.as_ref().map(|w| qvec_json(w)),
    })
}

pub fn gorenstein_report_json(g: &GorensteinReport) -> Value {
    json!({
        "index": g.index,
        "center": qvec_json(&g.center),
        "braun": braun_json(&g.braun),
        "interior_identity_holds": g.interior_identity_holds,
        "interior_mismatch": g.interior_mismatch,
    })
}

pub fn affine_report_json(a: &AffineReport) -> Value {
    json!({
        "witness": witness_json(&a.witness),
        "envelope_condition": envelope_condition_json(&a.envelope),
        "braun": braun_json(&a.braun),
    })
}

pub fn error_json(e: &Error) -> Value {
    json!({"error": {"code": e.code(), "message": e.to_string()}})
}

/// Pretty, deterministic rendering.
pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn polytope_round_trip() {
        let p = polytope_from_str(r#"{"dim": 2, "vertices": [["1/2","0"], ["0", "1"], [0, 0]]}"#).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(polytope_from_json(&polytope_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn input_errors() {
        assert_eq!(polytope_from_str("{").unwrap_err().code(), "invalid_input");
        assert!(matches!(
            polytope_from_str(r#"{"dim": 2, "vertices": [["1"]]}"#),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(
            polytope_from_str(r#"{"dim": 1, "vertices": [["1/0"]]}"#),
            Err(Error::ParseRational(_))
        ));
    }

    #[test]
    fn keys_are_sorted() {
        let p = RationalPolytope::new(1, vec![vec![rat(-1, 2)], vec![rat(1, 2)]]).unwrap();
        let s = render(&dual_to_json(&p.polar_dual().unwrap()));
        let bounded = s.find("\"bounded\"").unwrap();
        let vertices = s.find("\"vertices\"").unwrap();
        assert!(bounded < vertices);
        assert!(s.contains("\"-2\"") && s.contains("\"2\""));
    }
}
