//! Reading candidates from a path, stdin, or inline JSON.

use std::io::Read;

use mpflow::algebra::rational::{self, Rational};
use mpflow::flow::Candidate;
use serde_json::Value;

use crate::Failure;

fn raw(spec: &str) -> Result<String, Failure> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(spec.to_string());
    }
    if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(spec).map_err(|e| Failure::Input(format!("cannot read {spec}: {e}")))
}

/// Every JSON value in the input: one object, the items of an array, or
/// one value per nonblank line.
pub fn values(spec: &str) -> Result<Vec<Value>, Failure> {
    let text = raw(spec)?;
    let malformed = |e: serde_json::Error| Failure::Input(format!("malformed JSON: {e}"));
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Array(items)) => Ok(items),
        Ok(v) => Ok(vec![v]),
        Err(whole) => {
            let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
            if lines.len() < 2 {
                return Err(malformed(whole));
            }
            lines.into_iter().map(|l| serde_json::from_str(l).map_err(malformed)).collect()
        }
    }
}

pub fn candidate(mut v: Value, sigma: Option<&Rational>) -> Result<Candidate, Failure> {
    if let (Some(s), Value::Object(map)) = (sigma, &mut v) {
        map.insert("sigma".into(), Value::String(rational::to_string(s)));
    }
    serde_json::from_value(v).map_err(|e| Failure::Input(format!("invalid candidate: {e}")))
}

pub fn candidates(spec: &str, sigma: Option<&Rational>) -> Result<Vec<Candidate>, Failure> {
    values(spec)?.into_iter().map(|v| candidate(v, sigma)).collect()
}
