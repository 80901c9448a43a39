//! JSON and CSV conversion for inputs and results.
//!
//! Numbers are written as decimal strings so that extended-precision values
//! survive a round trip; on input both JSON numbers and strings are accepted.

use num_complex::Complex;
use serde_json::{json, Map, Value};

use crate::error::{JostError, Result};
use crate::model::{
    AsymptoticSeries, Input, JacobiParameters, Parity, Pole, PoleSet, PowerSeriesModel, SeriesTerm, Tail,
    VerblunskyCoefficients,
};
use crate::scalar::Scalar;

pub fn num<T: Scalar>(x: T) -> Value {
    Value::String(x.to_decimal())
}

pub fn cnum<T: Scalar>(z: Complex<T>) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn cnums<T: Scalar>(zs: &[Complex<T>]) -> Value {
    Value::Array(zs.iter().map(|&z| cnum(z)).collect())
}

pub fn f64num(x: f64) -> Value {
    num(x)
}

pub fn parse_scalar<T: Scalar>(v: &Value, field: &str, index: usize) -> Result<T> {
    match v {
        Value::Number(n) => T::parse_decimal(&n.to_string()),
        Value::String(s) => T::parse_decimal(s),
        _ => Err(JostError::entry(field, index, "expected a number or decimal string")),
    }
    .map_err(|e| match e {
        JostError::Parse(m) => JostError::entry(field, index, m),
        other => other,
    })
}

pub fn parse_complex<T: Scalar>(v: &Value, field: &str, index: usize) -> Result<Complex<T>> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            Ok(Complex::new(parse_scalar(&a[0], field, index)?, parse_scalar(&a[1], field, index)?))
        }
        Value::Array(_) => Err(JostError::entry(field, index, "complex entries are [re, im]")),
        _ => Ok(Complex::new(parse_scalar(v, field, index)?, T::zero())),
    }
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| JostError::Parse(format!("{what} must be an object")))
}

fn reject_unknown(m: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    for k in m.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(JostError::Parse(format!("unknown key {k:?} in {what}")));
        }
    }
    Ok(())
}

fn parse_radius<T: Scalar>(v: Option<&Value>) -> Result<Option<T>> {
    match v {
        None | Some(Value::Null) => Ok(None),
        Some(x) => {
            let r: T = parse_scalar(x, "R", 0)?;
            Ok(if r.is_infinite() { None } else { Some(r) })
        }
    }
}

pub fn parse_series<T: Scalar>(v: &Value, parity: Option<Parity>) -> Result<AsymptoticSeries<T>> {
    let m = obj(v, "tail")?;
    reject_unknown(m, &["type", "terms", "R", "parity"], "tail")?;
    let terms =
        m.get("terms").and_then(Value::as_array).ok_or_else(|| JostError::parse("series tail needs \"terms\""))?;
    let mut out = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let tm = obj(t, "term")?;
        reject_unknown(tm, &["mu", "poly"], "term")?;
        let mu = parse_complex(tm.get("mu").ok_or_else(|| JostError::entry("terms", i, "missing mu"))?, "terms.mu", i)?;
        let poly = match tm.get("poly") {
            Some(Value::Array(cs)) => {
                cs.iter().map(|c| parse_complex(c, "terms.poly", i)).collect::<Result<Vec<_>>>()?
            }
            Some(x) => vec![parse_complex(x, "terms.poly", i)?],
            None => return Err(JostError::entry("terms", i, "missing poly")),
        };
        out.push(SeriesTerm::new(mu, poly));
    }
    let declared = match m.get("parity") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s == "interleaved" => Some(Parity::Interleaved),
        Some(other) => return Err(JostError::Parse(format!("unknown parity {other}"))),
    };
    if declared.is_some() && parity.is_none() {
        return Err(JostError::parse("parity marker is only meaningful for Jacobi tails"));
    }
    Ok(AsymptoticSeries::exact(out).with_remainder(parse_radius(m.get("R"))?).with_parity(parity))
}

fn parse_tail<T: Scalar>(v: Option<&Value>, parity: Option<Parity>) -> Result<Tail<T>> {
    match v {
        None => Ok(Tail::Free),
        Some(Value::String(s)) if s == "free" => Ok(Tail::Free),
        Some(Value::Object(m)) => match m.get("type").and_then(Value::as_str) {
            Some("free") => {
                reject_unknown(m, &["type"], "tail")?;
                Ok(Tail::Free)
            }
            Some("series") => Ok(Tail::Series(parse_series(v.unwrap(), parity)?)),
            _ => Err(JostError::parse("tail.type must be \"free\" or \"series\"")),
        },
        Some(_) => Err(JostError::parse("tail must be \"free\" or an object")),
    }
}

/// Parse an input document (canonical form or the documented short forms).
pub fn parse_input<T: Scalar>(text: &str) -> Result<Input<T>> {
    let v: Value = serde_json::from_str(text)?;
    parse_input_value(&v)
}

pub fn parse_input_value<T: Scalar>(v: &Value) -> Result<Input<T>> {
    let m = obj(v, "document")?;
    if let Some(spec) = m.get("alpha_odd") {
        reject_unknown(m, &["alpha_odd", "R", "kind"], "document")?;
        let s: String = spec.as_str().unwrap_or_default().chars().filter(|c| !c.is_whitespace()).collect();
        if s != "R^-(2n+1)" {
            return Err(JostError::Parse(format!("unsupported alpha_odd pattern {spec}")));
        }
        let r: T = parse_scalar(m.get("R").ok_or_else(|| JostError::parse("alpha_odd needs R"))?, "R", 0)?;
        return Ok(Input::Verblunsky(VerblunskyCoefficients::odd_geometric(r)?));
    }
    reject_unknown(m, &["kind", "head", "tail"], "document")?;
    let kind = match m.get("kind") {
        None => "jacobi",
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(JostError::parse("kind must be a string")),
    };
    let head = match m.get("head") {
        None => Vec::new(),
        Some(Value::Array(h)) => h.clone(),
        Some(_) => return Err(JostError::parse("head must be an array")),
    };
    match kind {
        "jacobi" => {
            let mut pairs = Vec::new();
            for (i, e) in head.iter().enumerate() {
                let em = obj(e, "head entry")?;
                reject_unknown(em, &["a", "b"], "head entry")?;
                let a = match em.get("a") {
                    Some(x) => parse_scalar(x, "a", i + 1)?,
                    None => T::one(),
                };
                let b = match em.get("b") {
                    Some(x) => parse_scalar(x, "b", i + 1)?,
                    None => T::zero(),
                };
                pairs.push((a, b));
            }
            let tail = parse_tail(m.get("tail"), Some(Parity::Interleaved))?;
            Ok(Input::Jacobi(JacobiParameters::new(pairs, tail)?))
        }
        "verblunsky" => {
            let alphas =
                head.iter().enumerate().map(|(i, x)| parse_scalar(x, "alpha", i)).collect::<Result<Vec<T>>>()?;
            let tail = parse_tail(m.get("tail"), None)?;
            Ok(Input::Verblunsky(VerblunskyCoefficients::new(alphas, tail)?))
        }
        other => Err(JostError::Parse(format!("unknown kind {other:?}"))),
    }
}

pub fn series_to_json<T: Scalar>(s: &AsymptoticSeries<T>) -> Value {
    let terms: Vec<Value> = s.terms.iter().map(|t| json!({"mu": cnum(t.mu), "poly": cnums(&t.poly)})).collect();
    let mut m = Map::new();
    m.insert("type".into(), json!("series"));
    m.insert("terms".into(), Value::Array(terms));
    m.insert("R".into(), s.remainder_radius.map(num).unwrap_or_else(|| json!("inf")));
    if s.parity == Some(Parity::Interleaved) {
        m.insert("parity".into(), json!("interleaved"));
    }
    Value::Object(m)
}

fn tail_to_json<T: Scalar>(t: &Tail<T>) -> Value {
    match t {
        Tail::Free => json!({"type": "free"}),
        Tail::Series(s) => series_to_json(s),
    }
}

/// Canonical serialization (all numbers as decimal strings).
pub fn input_to_json<T: Scalar>(input: &Input<T>) -> Value {
    match input {
        Input::Jacobi(p) => json!({
            "kind": "jacobi",
            "head": p.head().iter().map(|&(a, b)| json!({"a": num(a), "b": num(b)})).collect::<Vec<_>>(),
            "tail": tail_to_json(p.tail()),
        }),
        Input::Verblunsky(v) => json!({
            "kind": "verblunsky",
            "head": v.head().iter().map(|&a| num(a)).collect::<Vec<_>>(),
            "tail": tail_to_json(v.tail()),
        }),
    }
}

pub fn power_series_to_json<T: Scalar>(p: &PowerSeriesModel<T>) -> Value {
    json!({
        "coeffs": cnums(&p.coeffs),
        "inner_radius": num(p.inner_radius),
        "outer_radius": num(p.outer_radius),
        "precision_bits": p.precision_bits,
    })
}

pub fn pole_set_to_json<T: Scalar>(p: &PoleSet<T>) -> Value {
    json!({
        "cutoff": num(p.cutoff),
        "points": p.points().iter().map(|q: &Pole<T>| json!({"z": cnum(q.z), "order": q.order})).collect::<Vec<_>>(),
    })
}

/// CSV of realized coefficients: `n,a_n,b_n` or `n,alpha_n`.
pub fn realized_csv<T: Scalar>(input: &Input<T>, n: usize) -> Result<String> {
    let mut s = String::new();
    match input {
        Input::Jacobi(p) => {
            s.push_str("n,a_n,b_n\n");
            for (i, (a, b)) in p.realize(n)?.into_iter().enumerate() {
                s.push_str(&format!("{},{},{}\n", i + 1, a.to_decimal(), b.to_decimal()));
            }
        }
        Input::Verblunsky(v) => {
            s.push_str("n,alpha_n\n");
            for (i, a) in v.realize(n)?.into_iter().enumerate() {
                s.push_str(&format!("{},{}\n", i, a.to_decimal()));
            }
        }
    }
    Ok(s)
}

/// Serialize a JSON value deterministically (sorted keys, stable formatting).
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}
