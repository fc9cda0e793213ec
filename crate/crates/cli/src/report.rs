use invquant::linalg::{ExactMatrix, Inertia};
use invquant::scalar::{format_complex, format_rational, ComplexScalar, Rational};
use serde::Serialize;
use serde_json::{json, Value};

/// Top-level JSON document printed by every command.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub seed: Option<u64>,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, seed: Option<u64>) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results,
            seed,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// Outcome of a command: the report plus whether its checks held.
pub struct Outcome {
    pub report: Report,
    pub verified: bool,
}

pub fn float(value: f64, tol: f64) -> Value {
    json!({ "value": value, "tol": tol })
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn complex(z: &ComplexScalar) -> Value {
    json!(format_complex(z))
}

pub fn matrix(m: &ExactMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(complex).collect()))
            .collect(),
    )
}

pub fn inertia(i: &Inertia) -> Value {
    json!({ "positive": i.positive, "negative": i.negative, "zero": i.zero })
}
