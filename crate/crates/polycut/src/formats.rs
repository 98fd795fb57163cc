//! Text formats for posets and hyperplanes.
//!
//! ```text
//! poset v1
//! elements a b c
//! cover c a
//! cover c b
//! ```
//!
//! ```text
//! hyperplane v1
//! coeff a -1
//! coeff b -1
//! coeff c 1
//! rhs 0
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Hyperplane
//! coefficients that are not listed are zero.

use std::fmt::Write as _;

use polycut_core::poset::is_identifier;
use polycut_core::{Hyperplane, Poset, RatVector, Rational};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, kind: &str) -> Result<(), FormatError> {
    match lines.next() {
        Some((_, words)) if words == [kind, "v1"] => Ok(()),
        Some((n, words)) => Err(err(n, format!("expected `{kind} v1`, found `{}`", words.join(" ")))),
        None => Err(err(0, format!("empty input, expected `{kind} v1`"))),
    }
}

pub fn parse_poset(text: &str) -> Result<Poset, FormatError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "poset")?;
    let (elements_line, words) = lines.next().ok_or_else(|| err(0, "missing `elements` line"))?;
    let labels = match words.split_first() {
        Some((&"elements", rest)) if !rest.is_empty() => rest.to_vec(),
        _ => return Err(err(elements_line, "expected `elements <label> ...`")),
    };
    if let Some(bad) = labels.iter().find(|l| !is_identifier(l)) {
        return Err(err(elements_line, format!("`{bad}` is not an identifier")));
    }
    let mut covers = Vec::new();
    for (n, words) in lines {
        match words.as_slice() {
            ["cover", lo, hi] => {
                let index = |l: &str| {
                    labels
                        .iter()
                        .position(|x| *x == l)
                        .ok_or_else(|| err(n, format!("unknown element `{l}`")))
                };
                covers.push((index(lo)?, index(hi)?));
            }
            _ => {
                return Err(err(
                    n,
                    format!("expected `cover <lower> <upper>`, found `{}`", words.join(" ")),
                ))
            }
        }
    }
    Poset::new(labels.iter().map(|s| s.to_string()).collect(), covers).map_err(|e| err(elements_line, e.to_string()))
}

pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("poset v1\nelements {}\n", p.labels().join(" "));
    for &(lo, hi) in p.covers() {
        let _ = writeln!(out, "cover {} {}", p.label(lo), p.label(hi));
    }
    out
}

/// Reads a hyperplane whose coordinates are the elements of `p`.
pub fn parse_hyperplane(text: &str, p: &Poset) -> Result<Hyperplane, FormatError> {
    let mut lines = content_lines(text).peekable();
    expect_header(&mut lines, "hyperplane")?;
    let mut coeffs: Vec<Option<Rational>> = vec![None; p.len()];
    let mut rhs = None;
    let mut last_line = 0;
    for (n, words) in lines {
        last_line = n;
        if rhs.is_some() {
            return Err(err(n, "`rhs` must be the last line"));
        }
        match words.as_slice() {
            ["coeff", label, value] => {
                let i = p
                    .index_of(label)
                    .ok_or_else(|| err(n, format!("unknown element `{label}`")))?;
                if coeffs[i].is_some() {
                    return Err(err(n, format!("duplicate coefficient for `{label}`")));
                }
                coeffs[i] = Some(value.parse().map_err(|e: polycut_core::Error| err(n, e.to_string()))?);
            }
            ["rhs", value] => {
                rhs = Some(value.parse::<Rational>().map_err(|e| err(n, e.to_string()))?);
            }
            _ => {
                return Err(err(
                    n,
                    format!(
                        "expected `coeff <label> <rational>` or `rhs <rational>`, found `{}`",
                        words.join(" ")
                    ),
                ))
            }
        }
    }
    let rhs = rhs.ok_or_else(|| err(last_line, "missing `rhs` line"))?;
    let coeffs = coeffs.into_iter().map(Option::unwrap_or_default).collect();
    let coeffs = RatVector::new(coeffs).map_err(|e| err(0, e.to_string()))?;
    Hyperplane::new(coeffs, rhs).map_err(|e| err(last_line, e.to_string()))
}

pub fn write_hyperplane(h: &Hyperplane, p: &Poset) -> String {
    let mut out = String::from("hyperplane v1\n");
    for (i, c) in h.coeffs().iter().enumerate() {
        let _ = writeln!(out, "coeff {} {}", p.label(i), c);
    }
    let _ = writeln!(out, "rhs {}", h.rhs());
    out
}
