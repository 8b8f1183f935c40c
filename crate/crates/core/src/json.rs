//! JSON schema for lattice data.
//!
//! ```json
//! {"lambda": [["1","0"],["0","1"]], "lambda_dual": [["2","0"],["0","1"]] , "frobenius": [[1,0],[0,1]], "gram": null}
//! ```
//!
//! Matrices are row-major; the columns of `lambda` and `lambda_dual` are bases. Entries are
//! integers or `"p/q"` strings. Either `lambda_dual` or `gram` may be null, not both.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_linalg::RatMat;
use crate::pair::{Lattice, LatticePair};

fn schema(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            BigInt::from_str(&s).map(BigRational::from_integer).map_err(|_| schema(format!("{s} is not an integer")))
        }
        Value::String(s) => {
            let r = match s.split_once('/') {
                Some((a, b)) => {
                    let (a, b) = (BigInt::from_str(a.trim()), BigInt::from_str(b.trim()));
                    match (a, b) {
                        (Ok(a), Ok(b)) if b != BigInt::from(0) => Some(BigRational::new(a, b)),
                        _ => None,
                    }
                }
                None => BigInt::from_str(s.trim()).ok().map(BigRational::from_integer),
            };
            r.ok_or_else(|| schema(format!("cannot parse rational {s:?}")))
        }
        other => Err(schema(format!("expected a rational, got {other}"))),
    }
}

pub fn parse_integer(v: &Value) -> Result<BigInt> {
    let r = parse_rational(v)?;
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(schema(format!("expected an integer, got {r}")))
    }
}

pub fn parse_matrix(v: &Value) -> Result<RatMat> {
    let rows = v.as_array().ok_or_else(|| schema("matrix must be an array of rows"))?;
    let parsed: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.as_array().ok_or_else(|| schema("matrix row must be an array"))?.iter().map(parse_rational).collect()
        })
        .collect::<Result<_>>()?;
    let cols = parsed.first().map_or(0, Vec::len);
    if parsed.is_empty() || parsed.iter().any(|r| r.len() != cols) {
        return Err(schema("matrix must be nonempty and rectangular"));
    }
    Ok(RatMat::from_rows(&parsed))
}

pub fn rational_value(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

pub fn matrix_value(m: &RatMat) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(rational_value).collect())).collect())
}

fn integer_matrix_value(m: &RatMat) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|x| match (x.is_integer(), x.to_integer().to_string().parse::<i64>()) {
                            (true, Ok(i)) => json!(i),
                            _ => rational_value(x),
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Option<&'a Value> {
    obj.get(key).filter(|v| !v.is_null())
}

pub fn pair_from_value(v: &Value) -> Result<LatticePair> {
    let obj = v.as_object().ok_or_else(|| schema("lattice data must be a JSON object"))?;
    let lambda = Lattice::new(parse_matrix(field(obj, "lambda").ok_or_else(|| schema("missing \"lambda\""))?)?)?;
    let frobenius = parse_matrix(field(obj, "frobenius").ok_or_else(|| schema("missing \"frobenius\""))?)?;
    let gram = field(obj, "gram").map(parse_matrix).transpose()?;
    match (field(obj, "lambda_dual"), gram) {
        (Some(d), gram) => LatticePair::new(lambda, Lattice::new(parse_matrix(d)?)?, frobenius, gram),
        (None, Some(g)) => LatticePair::dual_pair(lambda, frobenius, g),
        (None, None) => Err(schema("one of \"lambda_dual\" and \"gram\" is required")),
    }
}

pub fn pair_from_json(s: &str) -> Result<LatticePair> {
    let v: Value = serde_json::from_str(s).map_err(|e| schema(format!("malformed JSON: {e}")))?;
    pair_from_value(&v)
}

pub fn pair_to_value(pair: &LatticePair) -> Value {
    json!({
        "lambda": matrix_value(pair.lambda.basis()),
        "lambda_dual": matrix_value(pair.lambda_prime.basis()),
        "frobenius": integer_matrix_value(&pair.frobenius),
        "gram": pair.gram.as_ref().map(matrix_value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::make_type;

    #[test]
    fn round_trip() {
        for t in ["1.2B:3,1", "6.6:2", "2:3"] {
            let pair = make_type(&t.parse().unwrap());
            let v = pair_to_value(&pair);
            let back = pair_from_value(&v).unwrap();
            assert_eq!(back, pair);
            assert_eq!(pair_to_value(&back).to_string(), v.to_string());
        }
    }

    #[test]
    fn gram_only() {
        let pair = pair_from_json(r#"{"lambda": [[1]], "lambda_dual": null, "frobenius": [[-1]], "gram": [["1/3"]]}"#)
            .unwrap();
        assert_eq!(pair.lambda.index(&pair.lambda_prime), BigInt::from(3));
        assert!(pair_from_json(r#"{"lambda": [[1]], "frobenius": [[1]]}"#).is_err());
        assert!(pair_from_json(r#"{"lambda": [["x"]], "frobenius": [[1]], "gram": [[1]]}"#).is_err());
    }
}
