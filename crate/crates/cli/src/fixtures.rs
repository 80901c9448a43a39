//! Named inputs used throughout the tests and examples.

use jostlab::io::parse_input_value;
use jostlab::model::{AsymptoticSeries, Input, SeriesTerm};
use jostlab::opuc::sz2_forward;
use jostlab::scalar::c;
use jostlab::{JacobiParameters, Result, Scalar, VerblunskyCoefficients};
use serde_json::json;

use crate::document::Document;

pub const FIXTURES: &[(&str, &str)] = &[
    ("free", "free Jacobi matrix: a_n = 1, b_n = 0"),
    ("rank-one-bound-state", "b_1 = 5/2, otherwise free: one bound state at z = 2/5"),
    ("rank-one-small", "b_1 = 3/10, otherwise free: no bound states"),
    ("example-3-4-R2", "Verblunsky coefficients alpha_{2n} = 0, alpha_{2n+1} = 2^-(2n+1)"),
    ("example-3-4-R2-image", "Jacobi parameters of the previous fixture under the second Szego map"),
    ("example-3-4-R2-bound-state", "the image with b_1 replaced by 5/2: one canonical bound state"),
    ("two-rate-sequence", "x_n = 3 2^-n + n 3^-n, n = 0..N"),
    ("omega-pm2", "the pole set {2, -2}"),
];

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn is_fixture(name: &str) -> bool {
    FIXTURES.iter().any(|(n, _)| *n == name)
}

fn example<T: Scalar>() -> Result<VerblunskyCoefficients<T>> {
    VerblunskyCoefficients::odd_geometric(T::of(2.0))
}

/// Image of the example with b_1 replaced.
pub fn example_image_with_b1<T: Scalar>(b1: T) -> Result<JacobiParameters<T>> {
    let j = sz2_forward(&example::<T>()?)?;
    let mut head = j.head().to_vec();
    if head.is_empty() {
        head.push((j.a(1), j.b(1)));
    }
    head[0].1 = b1;
    JacobiParameters::new(head, j.tail().clone())
}

/// Build fixture `name` in precision T; `n` sets sequence lengths.
pub fn build<T: Scalar>(name: &str, n: usize) -> Result<Document<T>> {
    let jacobi = |b1: f64| -> Result<Document<T>> {
        let doc = json!({"kind": "jacobi", "head": [{"a": "1", "b": b1.to_string()}], "tail": "free"});
        Ok(Document::Input(parse_input_value(&doc)?))
    };
    match name {
        "free" => Ok(Document::Input(Input::Jacobi(JacobiParameters::free()))),
        "rank-one-bound-state" => jacobi(2.5),
        "rank-one-small" => jacobi(0.3),
        "example-3-4-R2" => Ok(Document::Input(Input::Verblunsky(example()?))),
        "example-3-4-R2-image" => Ok(Document::Input(Input::Jacobi(sz2_forward(&example::<T>()?)?))),
        "example-3-4-R2-bound-state" => Ok(Document::Input(Input::Jacobi(example_image_with_b1(T::of(2.5))?))),
        "two-rate-sequence" => {
            let s = AsymptoticSeries::exact(vec![
                SeriesTerm::new(c(2.0, 0.0), vec![c(3.0, 0.0)]),
                SeriesTerm::new(c(3.0, 0.0), vec![c(0.0, 0.0), c(1.0, 0.0)]),
            ]);
            Ok(Document::Sequence(s.realize(0, n)))
        }
        "omega-pm2" => Document::poles(&[c(2.0, 0.0), c(-2.0, 0.0)]),
        other => Err(jostlab::JostError::Invalid(format!("unknown fixture {other:?}; known: {}", names().join(", ")))),
    }
}
