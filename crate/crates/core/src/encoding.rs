//! Canonical JSON encoding of a series.
//!
//! ```json
//! {"ramification":6,"trunc":"inf","domain":"exact",
//!  "terms":[{"exp":"-1/3","re":"-2","im":"0"},{"exp":"3/2","re":"3","im":"0"}]}
//! ```
//!
//! Exact coefficients are `"p/q"` strings, approximate ones JSON numbers.
//! Terms are sorted by exponent.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numeric::{Domain, Rational};
use crate::parser::parse_rational;
use crate::puiseux::{AnySeries, PuiseuxSeries, Trunc};

#[derive(Debug, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ramification: u64,
    pub trunc: String,
    pub domain: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: String,
    pub re: Value,
    pub im: Value,
}

fn exact_record(f: &PuiseuxSeries<Rational>) -> SeriesJson {
    SeriesJson {
        ramification: f.ramification(),
        trunc: f.trunc().to_string(),
        domain: Domain::Exact.to_string(),
        terms: f
            .terms()
            .map(|(q, c)| TermJson {
                exp: q.to_string(),
                re: Value::String(c.re.to_string()),
                im: Value::String(c.im.to_string()),
            })
            .collect(),
    }
}

fn approx_record(f: &PuiseuxSeries<f64>) -> SeriesJson {
    SeriesJson {
        ramification: f.ramification(),
        trunc: f.trunc().to_string(),
        domain: Domain::Approx.to_string(),
        terms: f
            .terms()
            .map(|(q, c)| TermJson {
                exp: q.to_string(),
                re: Value::from(c.re),
                im: Value::from(c.im),
            })
            .collect(),
    }
}

pub fn to_record(f: &AnySeries) -> SeriesJson {
    match f {
        AnySeries::Exact(f) => exact_record(f),
        AnySeries::Approx(f) => approx_record(f),
    }
}

pub fn to_value(f: &AnySeries) -> Value {
    serde_json::to_value(to_record(f)).expect("series record serialises")
}

/// Compact single-line JSON text.
pub fn to_json(f: &AnySeries) -> String {
    serde_json::to_string(&to_record(f)).expect("series record serialises")
}

pub fn from_json(text: &str) -> Result<AnySeries> {
    let record: SeriesJson = serde_json::from_str(text)
        .map_err(|e| Error::domain(format!("malformed series JSON: {e}")))?;
    from_record(&record)
}

pub fn from_record(record: &SeriesJson) -> Result<AnySeries> {
    let trunc = if record.trunc == "inf" {
        Trunc::Infinite
    } else {
        Trunc::Finite(parse_rational(&record.trunc)?)
    };
    match record.domain.as_str() {
        "exact" => {
            let mut terms = Vec::with_capacity(record.terms.len());
            for t in &record.terms {
                let c = Complex::new(exact_part(&t.re)?, exact_part(&t.im)?);
                terms.push((parse_rational(&t.exp)?, c));
            }
            Ok(AnySeries::Exact(PuiseuxSeries::from_parts(
                record.ramification,
                terms,
                trunc,
            )?))
        }
        "approx" => {
            let mut terms = Vec::with_capacity(record.terms.len());
            for t in &record.terms {
                let c = Complex::new(approx_part(&t.re)?, approx_part(&t.im)?);
                terms.push((parse_rational(&t.exp)?, c));
            }
            Ok(AnySeries::Approx(PuiseuxSeries::from_parts(
                record.ramification,
                terms,
                trunc,
            )?))
        }
        other => Err(Error::domain(format!("unknown domain tag `{other}`"))),
    }
}

fn exact_part(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        other => Err(Error::domain(format!(
            "exact coefficient must be a \"p/q\" string, got {other}"
        ))),
    }
}

fn approx_part(v: &Value) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::domain(format!("approx coefficient must be a number, got {v}")))
}
