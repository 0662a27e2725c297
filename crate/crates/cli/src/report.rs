//! JSON decision reports and the conversions of exact objects into them.
//!
//! Polynomials and scalars are written as strings in canonical form
//! (grevlex, descending), rational functions as `{"num", "den"}` pairs and
//! index sets 1-based.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use ylocal_core::exactalg::RationalFunction;
use ylocal_core::localmem::FailureWitness;
use ylocal_core::matspace::Rank1Idempotent;
use ylocal_core::polymat::ScalarMatrix;
use ylocal_core::{Field, FieldScalar, Polynomial};

/// Options a report was computed with, so that `verify` can recompute it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub method: Option<String>,
    pub budget: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub outcome: bool,
    pub witness: Value,
    pub failure_witness: Value,
    pub field: String,
    pub n: usize,
    pub d: usize,
    pub elapsed_ms: u64,
    pub instance: String,
    pub instance_digest: String,
    pub options: Options,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Human-readable rendering with the same content as the JSON form.
    pub fn to_text(&self) -> String {
        let show = |v: &Value| match v {
            Value::Null => "none".to_string(),
            other => serde_json::to_string_pretty(other).expect("value serializes"),
        };
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("outcome: {}\n", self.outcome));
        out.push_str(&format!("field: {}\n", self.field));
        out.push_str(&format!("n: {}\n", self.n));
        out.push_str(&format!("d: {}\n", self.d));
        out.push_str(&format!("witness: {}\n", show(&self.witness)));
        out.push_str(&format!(
            "failure_witness: {}\n",
            show(&self.failure_witness)
        ));
        out.push_str(&format!("elapsed_ms: {}\n", self.elapsed_ms));
        out.push_str(&format!("instance_digest: {}\n", self.instance_digest));
        out
    }
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn field_name(f: Field) -> String {
    f.to_string()
}

pub fn scalar(x: &FieldScalar) -> Value {
    Value::String(x.to_string())
}

pub fn scalars(xs: &[FieldScalar]) -> Value {
    Value::Array(xs.iter().map(scalar).collect())
}

pub fn poly(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

pub fn ratfun(r: &RationalFunction) -> Value {
    json!({ "num": r.numerator().to_string(), "den": r.denominator().to_string() })
}

pub fn matrix(m: &ScalarMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| scalars(m.row(i))).collect())
}

pub fn one_based(ix: &[usize]) -> Value {
    Value::Array(ix.iter().map(|&i| json!(i + 1)).collect())
}

pub fn failure(w: &FailureWitness) -> Value {
    json!({
        "stratum": w.stratum,
        "rows": one_based(&w.rows),
        "cols": one_based(&w.cols),
        "minor": poly(&w.minor),
        "point": w.point.as_deref().map_or(Value::Null, scalars),
    })
}

pub fn idempotent(e: &Rank1Idempotent) -> Value {
    json!({ "u": scalars(&e.u), "v": scalars(&e.v), "matrix": matrix(&e.matrix()) })
}
