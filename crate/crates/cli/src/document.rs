//! Scenario inputs: coefficient documents plus raw sequences and pole sets.

use jostlab::io::{cnums, input_to_json, parse_complex, parse_input_value, parse_series, pole_set_to_json};
use jostlab::model::{Input, Pole, PoleSet};
use jostlab::opuc::{sz2_forward, sz2_inverse};
use jostlab::scalar::cabs;
use jostlab::{JacobiParameters, JostError, Result, Scalar, VerblunskyCoefficients};
use num_complex::Complex;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Document<T> {
    Input(Input<T>),
    Sequence(Vec<Complex<T>>),
    Poles(PoleSet<T>),
}

impl<T: Scalar> Document<T> {
    /// Parse a JSON document. Besides the coefficient forms this accepts
    /// {"kind": "sequence", "x": [...]} or {"kind": "sequence", "series": {...}}
    /// (realized to `n` terms) and {"kind": "poles", "points": [...]}.
    pub fn parse(v: &Value, n: usize) -> Result<Self> {
        match v.get("kind").and_then(Value::as_str) {
            Some("sequence") => {
                let m = v.as_object().ok_or_else(|| JostError::parse("document must be an object"))?;
                for k in m.keys() {
                    if !["kind", "x", "series"].contains(&k.as_str()) {
                        return Err(JostError::Parse(format!("unknown key {k:?} in sequence document")));
                    }
                }
                match (m.get("x"), m.get("series")) {
                    (Some(Value::Array(xs)), None) => {
                        let x =
                            xs.iter().enumerate().map(|(i, e)| parse_complex(e, "x", i)).collect::<Result<Vec<_>>>()?;
                        Ok(Document::Sequence(x))
                    }
                    (None, Some(s)) => Ok(Document::Sequence(parse_series::<T>(s, None)?.realize(0, n))),
                    _ => Err(JostError::parse("a sequence document needs exactly one of \"x\" (array) or \"series\"")),
                }
            }
            Some("poles") => {
                let pts = v
                    .get("points")
                    .and_then(Value::as_array)
                    .ok_or_else(|| JostError::parse("a poles document needs \"points\""))?;
                let zs =
                    pts.iter().enumerate().map(|(i, e)| parse_complex(e, "points", i)).collect::<Result<Vec<_>>>()?;
                Self::poles(&zs)
            }
            _ => Ok(Document::Input(parse_input_value(v)?)),
        }
    }

    /// Pole set with conjugates added, cut off at the largest modulus.
    pub fn poles(zs: &[Complex<T>]) -> Result<Self> {
        let tol = T::of(1e-12);
        let mut pts: Vec<Pole<T>> = Vec::new();
        for z in zs.iter().flat_map(|z| [*z, z.conj()]) {
            if !pts.iter().any(|p| cabs(p.z - z) <= tol * cabs(z)) {
                pts.push(Pole { z, order: 1 });
            }
        }
        let cutoff = pts.iter().fold(T::one(), |m, p| m.max(cabs(p.z)));
        Ok(Document::Poles(PoleSet::new(pts, cutoff)?))
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Input(i) => input_to_json(i),
            Document::Sequence(x) => json!({"kind": "sequence", "x": cnums(x)}),
            Document::Poles(p) => json!({"kind": "poles", "set": pole_set_to_json(p)}),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Input(Input::Jacobi(_)) => "jacobi",
            Document::Input(Input::Verblunsky(_)) => "verblunsky",
            Document::Sequence(_) => "sequence",
            Document::Poles(_) => "poles",
        }
    }

    /// Jacobi parameters, taking Verblunsky input through Sz₂. The second
    /// value names the mapping applied, if any.
    pub fn jacobi(&self) -> Result<(JacobiParameters<T>, Option<&'static str>)> {
        match self {
            Document::Input(Input::Jacobi(p)) => Ok((p.clone(), None)),
            Document::Input(Input::Verblunsky(a)) => Ok((sz2_forward(a)?, Some("sz2_forward"))),
            other => Err(JostError::Invalid(format!(
                "this task needs Jacobi or Verblunsky input, got a {} document",
                other.kind()
            ))),
        }
    }

    /// Verblunsky coefficients, taking Jacobi input through the inverse of Sz₂.
    pub fn verblunsky(&self, tol: T) -> Result<(VerblunskyCoefficients<T>, Option<&'static str>)> {
        match self {
            Document::Input(Input::Verblunsky(a)) => Ok((a.clone(), None)),
            Document::Input(Input::Jacobi(p)) => Ok((sz2_inverse(p, tol)?, Some("sz2_inverse"))),
            other => Err(JostError::Invalid(format!(
                "this task needs Verblunsky or Jacobi input, got a {} document",
                other.kind()
            ))),
        }
    }
}
