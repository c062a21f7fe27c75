//! JSON forms of results.
//!
//! Objects are `serde_json` maps, which keep keys sorted, so equal inputs
//! serialize to identical bytes. Elements appear as residues for `Z/n` and
//! as literal text elsewhere (see [`elem_json`]).

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::classify::ClassReport;
use crate::decompose::{Decomposition, InvalidDecomposition, Kind, Scope};
use crate::expr::{elem_json, parse_elem_literal, resolve_literal, ring_name, ElemLit};
use crate::properties::{PropertyVerdict, SuiteReport, Violation};
use crate::ring::{Elem, FiniteRing};

pub const SCHEMA: &str = "1";

/// Wraps a payload object as a versioned report.
pub fn envelope(command: &str, mut payload: Map<String, Value>) -> Value {
    payload.insert("schema".into(), SCHEMA.into());
    payload.insert("command".into(), command.into());
    Value::Object(payload)
}

pub fn class_report_json(ring: &FiniteRing, r: &ClassReport) -> Value {
    json!({
        "element": elem_json(ring, r.element),
        "nilpotent": r.nilpotent,
        "nilpotency_index": r.nilpotency_index,
        "idempotent": r.idempotent,
        "tripotent": r.tripotent,
        "two_idempotent": r.two_idempotent,
        "unit": r.unit,
        "unipotent": r.unipotent,
        "inverse": r.inverse.map(|e| elem_json(ring, e)),
    })
}

pub fn decomposition_json(ring: &FiniteRing, d: &Decomposition) -> Value {
    json!({
        "kind": d.kind().name(),
        "scope": d.scope().name(),
        "element": elem_json(ring, d.element()),
        "target": elem_json(ring, d.target()),
        "parts": d.parts().iter().map(|&p| elem_json(ring, p)).collect::<Vec<_>>(),
        "nilpotent": elem_json(ring, d.nilpotent()),
    })
}

pub fn violation_json(ring: &FiniteRing, v: &Violation) -> Value {
    let mut m = Map::new();
    m.insert("element".into(), elem_json(ring, v.element()));
    m.insert("condition".into(), v.condition().into());
    match v {
        Violation::QuinticDefect { defect, .. } => {
            m.insert("defect".into(), elem_json(ring, *defect));
        }
        Violation::NoDecomposition { kind, scope, .. } => {
            m.insert("kind".into(), kind.name().into());
            m.insert("scope".into(), scope.name().into());
        }
        Violation::PowerNotUnipotent { exponent, .. } => {
            m.insert("exponent".into(), (*exponent).into());
        }
        Violation::NoExchangeIdempotent { .. } | Violation::NotClean { .. } => {}
    }
    Value::Object(m)
}

pub fn verdict_json(ring: &FiniteRing, v: &PropertyVerdict) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("property".into(), v.property.name().into());
    m.insert("ring".into(), ring_name(ring).into());
    m.insert("holds".into(), v.holds.into());
    m.insert(
        "counterexample".into(),
        v.counterexample
            .as_ref()
            .map_or(Value::Null, |c| violation_json(ring, c)),
    );
    if let Some(ws) = &v.witnesses {
        m.insert(
            "witnesses".into(),
            ws.iter().map(|d| decomposition_json(ring, d)).collect(),
        );
    }
    if let Some((name, value)) = v.auxiliary {
        m.insert(name.into(), value.into());
    }
    m
}

pub fn suite_json(report: &SuiteReport) -> Map<String, Value> {
    match serde_json::to_value(report).expect("suite report serializes") {
        Value::Object(m) => m,
        _ => unreachable!("struct serializes to an object"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("missing or malformed field `{0}`")]
    Field(&'static str),
    #[error("field `{field}`: {reason}")]
    Element { field: &'static str, reason: String },
    #[error(transparent)]
    Invalid(#[from] InvalidDecomposition),
}

fn decode_elem(ring: &FiniteRing, field: &'static str, v: &Value) -> Result<Elem, RecordError> {
    let lit = match v {
        Value::Number(n) => ElemLit::Int(n.as_i64().ok_or(RecordError::Field(field))?),
        Value::String(s) => parse_elem_literal(s).map_err(|e| RecordError::Element {
            field,
            reason: e.to_string(),
        })?,
        _ => return Err(RecordError::Field(field)),
    };
    resolve_literal(ring, &lit).map_err(|e| RecordError::Element {
        field,
        reason: e.to_string(),
    })
}

/// Reads back a record produced by [`decomposition_json`] and validates it.
/// `target`, when present, must match the recomputed target.
pub fn decomposition_from_json(ring: &FiniteRing, v: &Value) -> Result<Decomposition, RecordError> {
    let text = |field: &'static str| v.get(field).and_then(Value::as_str).ok_or(RecordError::Field(field));
    let kind: Kind = text("kind")?.parse().map_err(|_| RecordError::Field("kind"))?;
    let scope: Scope = text("scope")?.parse().map_err(|_| RecordError::Field("scope"))?;
    let field = |name: &'static str| v.get(name).ok_or(RecordError::Field(name));
    let element = decode_elem(ring, "element", field("element")?)?;
    let nilpotent = decode_elem(ring, "nilpotent", field("nilpotent")?)?;
    let parts = field("parts")?
        .as_array()
        .ok_or(RecordError::Field("parts"))?
        .iter()
        .map(|p| decode_elem(ring, "parts", p))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Decomposition::with_nilpotent(ring, element, kind, scope, parts, nilpotent)?;
    if let Some(t) = v.get("target") {
        if decode_elem(ring, "target", t)? != d.target() {
            return Err(RecordError::Field("target"));
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::properties::{check_property_with_witnesses, Property};
    use crate::ring::RingFactory;

    #[test]
    fn decomposition_round_trip() {
        let f = RingFactory::default();
        for text in ["Z25", "T2(Z2)", "prod(Z2,Z9)", "M2(Z2)"] {
            let r = crate::expr::build_str(text, &f).unwrap();
            for a in r.elements() {
                let d = decompose(&r, a, Kind::TwoTripotents, Scope::Unrestricted)
                    .unwrap()
                    .unwrap();
                let back = decomposition_from_json(&r, &decomposition_json(&r, &d)).unwrap();
                assert_eq!(back, d);
            }
        }
    }

    #[test]
    fn tampered_records_are_rejected() {
        let r = FiniteRing::zmod(25).unwrap();
        let d = decompose(&r, r.int_image(3), Kind::QuinticWitness, Scope::InZa)
            .unwrap()
            .unwrap();
        let mut v = decomposition_json(&r, &d);
        assert_eq!(v["parts"], json!([23]));
        v["nilpotent"] = json!(4);
        assert!(decomposition_from_json(&r, &v).is_err());
        v["nilpotent"] = json!(5);
        v["target"] = json!(4);
        assert_eq!(decomposition_from_json(&r, &v), Err(RecordError::Field("target")));
        v.as_object_mut().unwrap().remove("target");
        v["kind"] = json!("five_idempotents");
        assert_eq!(decomposition_from_json(&r, &v), Err(RecordError::Field("kind")));
    }

    #[test]
    fn verdict_keys_are_sorted() {
        let r = FiniteRing::zmod(6).unwrap();
        let v = check_property_with_witnesses(&r, Property::StronglyTwoNilClean);
        let text = serde_json::to_string(&Value::Object(verdict_json(&r, &v))).unwrap();
        assert!(text.starts_with(r#"{"a_minus_a3_nilpotent":true,"counterexample":null,"holds":true"#));
    }
}
