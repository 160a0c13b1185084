//! On-disk and printed formats: the JSON element envelope, check reports,
//! and SVG plots.
//!
//! Element documents look like
//!
//! ```json
//! { "N": 2, "breaks": [ { "x": "0", "y": "0" }, { "x": "1/2", "y": "1/4" }, ... ] }
//! ```
//!
//! with coordinates in the exact `m/n` text form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::element::{ElementError, PlElement};
use crate::nadic::{ParseRationalError, Rational};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("breakpoint {index}: {source}")]
    Rational {
        index: usize,
        source: ParseRationalError,
    },
    #[error(transparent)]
    Element(#[from] ElementError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointText {
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    #[serde(rename = "N")]
    pub base: u32,
    pub breaks: Vec<PointText>,
}

impl ElementDocument {
    pub fn from_element(f: &PlElement) -> Self {
        ElementDocument {
            base: f.base(),
            breaks: f
                .breaks()
                .iter()
                .map(|(x, y)| PointText {
                    x: x.to_string(),
                    y: y.to_string(),
                })
                .collect(),
        }
    }

    /// Parses coordinates and validates; the result is canonical.
    pub fn to_element(&self) -> Result<PlElement, DocumentError> {
        let breaks = self
            .breaks
            .iter()
            .enumerate()
            .map(|(index, p)| {
                let parse = |s: &str| {
                    s.parse::<Rational>()
                        .map_err(|source| DocumentError::Rational { index, source })
                };
                Ok((parse(&p.x)?, parse(&p.y)?))
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        Ok(PlElement::new(self.base, breaks)?)
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// Serializes an element in the canonical envelope.
pub fn serialize_element(f: &PlElement) -> String {
    ElementDocument::from_element(f).to_json()
}

/// Parses and validates an element from the envelope.
pub fn parse_element(text: &str) -> Result<PlElement, DocumentError> {
    ElementDocument::from_json(text)?.to_element()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub details: BTreeMap<String, String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        CheckRecord {
            name: name.into(),
            passed,
            details: BTreeMap::new(),
        }
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }
}

/// Result of one `check` invocation; `verdict` is pass iff every check passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, inputs: BTreeMap<String, String>) -> Self {
        ReportDocument {
            command: command.into(),
            inputs,
            verdict: Verdict::Pass,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        if !check.passed {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// SVG of the graph of `f`. Coordinates are scaled by the least common
/// denominator of all breakpoints, so every vertex is an exact integer.
pub fn render_svg(f: &PlElement) -> String {
    let scale = f
        .breaks()
        .iter()
        .flat_map(|(x, y)| [x.denom(), y.denom()])
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let scaled = |q: &Rational| q.numer() * (&scale / q.denom());
    let points: Vec<String> = f
        .breaks()
        .iter()
        .map(|(x, y)| format!("{},{}", scaled(x), scaled(y)))
        .collect();
    let exact: Vec<String> = f
        .breaks()
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect();

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 {scale} {scale}\">"
    );
    let _ = writeln!(out, "<title>element of F({})</title>", f.base());
    let _ = writeln!(out, "<desc>{}</desc>", exact.join(" "));
    let _ = writeln!(out, "<g transform=\"matrix(1 0 0 -1 0 {scale})\">");
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{scale}\" height=\"{scale}\" fill=\"white\" stroke=\"#999999\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>"
    );
    let _ = writeln!(
        out,
        "<line x1=\"0\" y1=\"0\" x2=\"{scale}\" y2=\"{scale}\" stroke=\"#cccccc\" stroke-width=\"1\" stroke-dasharray=\"4 4\" vector-effect=\"non-scaling-stroke\"/>"
    );
    let _ = writeln!(
        out,
        "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\" points=\"{}\"/>",
        points.join(" ")
    );
    out.push_str("</g>\n</svg>\n");
    out
}
