//! Canonical JSON for tensor elements and ħ-series.
//!
//! Keys are emitted in sorted order and terms in canonical monomial order,
//! so serializing a parsed document reproduces it byte for byte.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::tensor::element::TensorElement;
use crate::tensor::mono::{SlotMono, TensorMono};
use crate::tensor::series::HbarSeries;

fn bad(msg: &str) -> Error {
    Error::Invalid(format!("malformed JSON: {msg}"))
}

pub fn tensor_to_json(a: &TensorElement, dim: usize) -> Value {
    let terms: Vec<Value> = a
        .sorted_terms()
        .into_iter()
        .map(|(m, c)| {
            let mono: Vec<Vec<u32>> = m.0.iter().map(|s| s.dense(dim)).collect();
            json!({ "coef": c.to_string(), "mono": mono })
        })
        .collect();
    json!({ "k": a.k, "terms": terms })
}

pub fn tensor_from_json(v: &Value) -> Result<TensorElement> {
    let k = v
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing k"))? as usize;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing terms"))?;
    let mut out = TensorElement::zero(k);
    for t in terms {
        let coef: Rat = t
            .get("coef")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing coef"))?
            .parse()
            .map_err(|_| bad("bad coef"))?;
        let slots = t
            .get("mono")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing mono"))?;
        if slots.len() != k {
            return Err(bad("slot count"));
        }
        let mut m = TensorMono::one(k);
        for (s, exps) in slots.iter().enumerate() {
            let exps = exps.as_array().ok_or_else(|| bad("exponent vector"))?;
            let mut pairs = Vec::new();
            for (i, e) in exps.iter().enumerate() {
                let e = e.as_u64().ok_or_else(|| bad("exponent"))?;
                if e > 255 {
                    return Err(bad("exponent too large"));
                }
                pairs.push((i, e as u32));
            }
            m.0[s] = SlotMono::from_exps(&pairs);
        }
        out.add_term(m, coef);
    }
    Ok(out)
}

/// Series document; `meta` entries are merged at top level.
pub fn series_to_json(s: &HbarSeries, dim: usize, meta: Map<String, Value>) -> Value {
    let mut obj = meta;
    obj.insert("k".into(), json!(s.k));
    obj.insert("N".into(), json!(s.order()));
    obj.insert(
        "coeffs".into(),
        Value::Array(s.coeffs.iter().map(|c| tensor_to_json(c, dim)).collect()),
    );
    Value::Object(obj)
}

pub fn series_from_json(v: &Value) -> Result<HbarSeries> {
    let k = v
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing k"))? as usize;
    let n = v
        .get("N")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing N"))? as usize;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing coeffs"))?;
    if coeffs.len() != n + 1 {
        return Err(bad("coeffs length must be N+1"));
    }
    let cs: Vec<TensorElement> = coeffs.iter().map(tensor_from_json).collect::<Result<_>>()?;
    if cs.iter().any(|c| c.k != k) {
        return Err(bad("coefficient slot count"));
    }
    Ok(HbarSeries::from_coeffs(k, cs))
}

pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON serialization")
}
