//! Artifact documents for associators, twists and gauge witnesses.
//!
//! Each is a series document with metadata:
//! `cartan_type`, `D` (1-based nodes, comma separated), `form_scaling`
//! (rational strings per simple factor) and kind-specific `flags`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ext::json::{ext_from_json, ext_to_json};
use crate::lie::{LieAlgebra, Subdiagram};
use crate::rational::Rat;
use crate::tensor::json::{series_from_json, series_to_json};
use crate::twist::associator::{Associator, Invariance};
use crate::twist::build::Twist;
use crate::twist::gauge::GaugeWitness;

fn bad(msg: &str) -> Error {
    Error::Invalid(format!("malformed artifact: {msg}"))
}

/// Context shared by every artifact of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtifactContext {
    pub cartan_type: String,
    pub d: Subdiagram,
    pub form_scaling: Vec<Rat>,
}

impl ArtifactContext {
    pub fn new(g: &LieAlgebra, d: &Subdiagram) -> Self {
        Self {
            cartan_type: g.cartan_type.to_string(),
            d: d.clone(),
            form_scaling: g.form_scale.clone(),
        }
    }

    fn meta(&self, kind: &str, flags: Value) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("kind".into(), json!(kind));
        m.insert("cartan_type".into(), json!(self.cartan_type));
        m.insert("D".into(), json!(self.d.to_cli()));
        m.insert(
            "form_scaling".into(),
            json!(self
                .form_scaling
                .iter()
                .map(Rat::to_string)
                .collect::<Vec<_>>()),
        );
        m.insert("flags".into(), flags);
        m
    }

    /// Read the context and check the document kind. The subdiagram is
    /// parsed against `rank`.
    pub fn read(v: &Value, kind: &str, rank_of: impl Fn(&str) -> Result<usize>) -> Result<Self> {
        let got = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing kind"))?;
        if got != kind {
            return Err(bad(&format!("expected a {kind} document, found {got}")));
        }
        let cartan_type = v
            .get("cartan_type")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing cartan_type"))?;
        let d = v
            .get("D")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing D"))?;
        let d = Subdiagram::parse(d, rank_of(cartan_type)?)?;
        let form_scaling = v
            .get("form_scaling")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing form_scaling"))?
            .iter()
            .map(|x| {
                x.as_str()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("form_scaling entry"))
            })
            .collect::<Result<Vec<Rat>>>()?;
        Ok(Self {
            cartan_type: cartan_type.to_string(),
            d,
            form_scaling,
        })
    }
}

fn flag(v: &Value, name: &str) -> Result<bool> {
    v.get("flags")
        .and_then(|f| f.get(name))
        .and_then(Value::as_bool)
        .ok_or_else(|| bad(&format!("missing flag {name}")))
}

pub fn associator_to_json(phi: &Associator, ctx: &ArtifactContext, dim: usize) -> Value {
    let inv = match &phi.invariance {
        Invariance::G => json!("g"),
        Invariance::Gd(d) => json!(d.to_cli()),
    };
    let mut c = ctx.clone();
    c.form_scaling = phi.form_scaling.clone();
    series_to_json(
        &phi.series,
        dim,
        c.meta("associator", json!({ "invariance": inv })),
    )
}

pub fn associator_from_json(
    v: &Value,
    rank_of: impl Fn(&str) -> Result<usize>,
) -> Result<(Associator, ArtifactContext)> {
    let ctx = ArtifactContext::read(v, "associator", &rank_of)?;
    let series = series_from_json(v)?;
    if series.k != 3 {
        return Err(bad("associator must have k = 3"));
    }
    let inv = v
        .get("flags")
        .and_then(|f| f.get("invariance"))
        .and_then(Value::as_str)
        .unwrap_or("g");
    let invariance = if inv == "g" {
        Invariance::G
    } else {
        Invariance::Gd(Subdiagram::parse(inv, rank_of(&ctx.cartan_type)?)?)
    };
    Ok((
        Associator {
            series,
            invariance,
            form_scaling: ctx.form_scaling.clone(),
        },
        ctx,
    ))
}

pub fn twist_to_json(t: &Twist, ctx: &ArtifactContext, dim: usize) -> Value {
    let flags = json!({ "hc_normalized": t.hc_normalized, "theta_symmetric": t.theta_symmetric });
    series_to_json(&t.series, dim, ctx.meta("twist", flags))
}

pub fn twist_from_json(
    v: &Value,
    rank_of: impl Fn(&str) -> Result<usize>,
) -> Result<(Twist, ArtifactContext)> {
    let ctx = ArtifactContext::read(v, "twist", &rank_of)?;
    let series = series_from_json(v)?;
    if series.k != 2 {
        return Err(bad("twist must have k = 2"));
    }
    let t = Twist {
        series,
        d: ctx.d.clone(),
        hc_normalized: flag(v, "hc_normalized")?,
        theta_symmetric: flag(v, "theta_symmetric")?,
    };
    Ok((t, ctx))
}

pub fn witness_to_json(w: &GaugeWitness, ctx: &ArtifactContext, dim: usize) -> Value {
    let mut v = series_to_json(&w.u, dim, ctx.meta("gauge_witness", json!({})));
    v["lambda"] = Value::Array(w.lambda.iter().map(ext_to_json).collect());
    v
}

pub fn witness_from_json(
    v: &Value,
    rank_of: impl Fn(&str) -> Result<usize>,
) -> Result<(GaugeWitness, ArtifactContext)> {
    let ctx = ArtifactContext::read(v, "gauge_witness", &rank_of)?;
    let u = series_from_json(v)?;
    let lambda = v
        .get("lambda")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing lambda"))?
        .iter()
        .map(ext_from_json)
        .collect::<Result<Vec<_>>>()?;
    if lambda.len() != u.order() + 1 {
        return Err(bad("lambda length must be N+1"));
    }
    Ok((GaugeWitness { u, lambda }, ctx))
}
