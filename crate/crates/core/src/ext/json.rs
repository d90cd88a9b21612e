//! Canonical JSON for exterior elements.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ext::element::{ExtElement, Idx};
use crate::rational::Rat;

pub fn ext_to_json(a: &ExtElement) -> Value {
    let terms: Vec<Value> = a
        .terms
        .iter()
        .map(|(i, c)| json!({ "coef": c.to_string(), "idx": i.iter().map(|&b| b as u64).collect::<Vec<_>>() }))
        .collect();
    json!({ "deg": a.deg, "terms": terms })
}

pub fn ext_from_json(v: &Value) -> Result<ExtElement> {
    let bad = |m: &str| Error::Invalid(format!("malformed JSON: {m}"));
    let deg = v
        .get("deg")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing deg"))? as usize;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing terms"))?;
    let mut out = ExtElement::zero(deg);
    for t in terms {
        let coef: Rat = t
            .get("coef")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing coef"))?
            .parse()
            .map_err(|_| bad("coef"))?;
        let idx: Idx = t
            .get("idx")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing idx"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&b| b < 256)
                    .map(|b| b as u8)
                    .ok_or_else(|| bad("index"))
            })
            .collect::<Result<_>>()?;
        if idx.len() != deg || !idx.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad("index tuple must be strictly increasing of length deg"));
        }
        out.add_term(idx, coef);
    }
    Ok(out)
}
