//! The one-line JSON verdict and helpers for its fields.
//!
//! Every command prints one object `{command, verdict, witness, details}`.
//! Rationals are written as `"p/q"` strings, integers included (`"3/1"`).

use polycut_core::orderchain::BadPair;
use polycut_core::{ElementSet, Hyperplane, Poset, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub command: String,
    pub verdict: String,
    pub witness: Value,
    pub details: Value,
}

impl Verdict {
    pub fn new(command: &str, verdict: &str, witness: Value, details: Value) -> Self {
        Verdict {
            command: command.to_string(),
            verdict: verdict.to_string(),
            witness,
            details,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }
}

pub fn separating_word(separating: bool) -> &'static str {
    if separating {
        "separating"
    } else {
        "not separating"
    }
}

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_fraction_string())
}

pub fn rationals<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(xs.into_iter().map(rational).collect())
}

pub fn hyperplane(h: &Hyperplane) -> Value {
    json!({
        "coeffs": rationals(h.coeffs().iter()),
        "rhs": rational(h.rhs()),
        "equation": h.to_string(),
    })
}

/// A hyperplane over poset elements; `equation` uses the element labels.
pub fn labeled_hyperplane(h: &Hyperplane, p: &Poset) -> Value {
    let mut terms = String::new();
    for (i, a) in h.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        let sign = match (terms.is_empty(), a.is_negative()) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let mag = a.abs();
        let coeff = if mag == 1 { String::new() } else { format!("{mag}*") };
        terms.push_str(&format!("{sign}{coeff}{}", p.label(i)));
    }
    json!({
        "labels": p.labels(),
        "coeffs": rationals(h.coeffs().iter()),
        "rhs": rational(h.rhs()),
        "equation": format!("{terms} = {}", h.rhs()),
    })
}

pub fn element_set(p: &Poset, s: ElementSet) -> Value {
    Value::Array(s.iter().map(|i| Value::String(p.label(i).to_string())).collect())
}

pub fn bad_pair(p: &Poset, pair: &BadPair) -> Value {
    json!({ "bad_pair": [element_set(p, pair.first), element_set(p, pair.second)] })
}
