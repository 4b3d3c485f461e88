//! JSON and CSV codecs. Every number is an exact string `p/q` (or `p`);
//! floating-point literals are rejected on input.

use circuitkit_core::lp::LpInstance;
use circuitkit_core::num::{self, Rational};
use circuitkit_core::{ElementaryVector, RatMatrix, Subspace};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn rational_from_json(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => num::parse_rational(s).map_err(|e| input(e.to_string())),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(num::rat(i)),
            (None, Some(u)) => Ok(Rational::from_integer(BigInt::from(u))),
            _ => Err(input(format!("floating-point literal {n} rejected; write an exact fraction string"))),
        },
        other => Err(input(format!("expected a number string, got {other}"))),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(num::fmt_rational(r))
}

pub fn int_to_json(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| input(format!("{what} must be an array")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| input(format!("missing field \"{key}\"")))
}

pub fn vec_from_json(v: &Value) -> Result<Vec<Rational>, CliError> {
    array(v, "vector")?.iter().map(rational_from_json).collect()
}

pub fn vec_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn int_vec_from_json(v: &Value) -> Result<Vec<BigInt>, CliError> {
    vec_from_json(v)?
        .into_iter()
        .map(|r| if r.is_integer() { Ok(r.to_integer()) } else { Err(input(format!("{} is not an integer", num::fmt_rational(&r)))) })
        .collect()
}

pub fn int_vec_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn bounds_from_json(v: &Value) -> Result<Vec<Option<Rational>>, CliError> {
    array(v, "u")?.iter().map(|x| if x.is_null() { Ok(None) } else { rational_from_json(x).map(Some) }).collect()
}

pub fn bounds_to_json(u: &[Option<Rational>]) -> Value {
    Value::Array(u.iter().map(|x| x.as_ref().map_or(Value::Null, rational_to_json)).collect())
}

pub fn indices_to_json(v: &[usize]) -> Value {
    json!(v)
}

pub fn circuit_to_json(g: &ElementaryVector) -> Value {
    int_vec_to_json(&g.vector)
}

pub fn matrix_from_json(v: &Value) -> Result<RatMatrix, CliError> {
    let dim = |key: &str| -> Result<usize, CliError> {
        field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| input(format!("\"{key}\" must be a nonnegative integer")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let entries = array(field(v, "entries")?, "entries")?;
    if entries.len() != rows {
        return Err(input(format!("matrix declares {rows} rows but lists {}", entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = vec_from_json(row)?;
        if row.len() != cols {
            return Err(input(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        data.extend(row);
    }
    RatMatrix::from_vec(rows, cols, data).map_err(|e| input(e.to_string()))
}

pub fn matrix_to_json(a: &RatMatrix) -> Value {
    json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "entries": (0..a.rows()).map(|i| vec_to_json(a.row(i))).collect::<Vec<_>>(),
    })
}

/// `{"kernel_of": M}`, `{"span_of": M}`, or a bare matrix read as its kernel.
pub fn subspace_from_json(v: &Value) -> Result<Subspace, CliError> {
    if let Some(m) = v.get("kernel_of") {
        Ok(Subspace::kernel_of(&matrix_from_json(m)?))
    } else if let Some(m) = v.get("span_of") {
        Ok(Subspace::span_of(&matrix_from_json(m)?))
    } else {
        Ok(Subspace::kernel_of(&matrix_from_json(v)?))
    }
}

pub fn subspace_to_json(w: &Subspace) -> Value {
    json!({ "kernel_of": matrix_to_json(w.kernel_rep()) })
}

/// `{"A", "b", "c", "u"?}`; with `u` the instance has upper bounds.
pub fn lp_from_json(v: &Value) -> Result<LpInstance, CliError> {
    let a = matrix_from_json(field(v, "A")?)?;
    let b = vec_from_json(field(v, "b")?)?;
    let c = vec_from_json(field(v, "c")?)?;
    let lp = match v.get("u") {
        Some(u) if !u.is_null() => LpInstance::bounded(a, b, c, bounds_from_json(u)?),
        _ => LpInstance::standard(a, b, c),
    };
    lp.map_err(|e| input(e.to_string()))
}

pub fn lp_to_json(lp: &LpInstance) -> Value {
    let (a, b, u) = lp.constraints();
    let mut obj = Map::new();
    obj.insert("A".into(), matrix_to_json(&a));
    obj.insert("b".into(), vec_to_json(&b));
    obj.insert("c".into(), vec_to_json(lp.cost()));
    if u.iter().any(Option::is_some) {
        obj.insert("u".into(), bounds_to_json(&u));
    }
    Value::Object(obj)
}

/// Rows of `p/q` cells.
pub fn matrix_from_csv(text: &str) -> Result<RatMatrix, CliError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| input(e.to_string()))?;
        let row = record.iter().map(|cell| num::parse_rational(cell).map_err(|e| input(e.to_string()))).collect::<Result<_, _>>()?;
        rows.push(row);
    }
    let cols = rows.first().map_or(0, Vec::len);
    RatMatrix::from_rows(cols, &rows).map_err(|e| input(e.to_string()))
}

pub fn matrix_to_csv(a: &RatMatrix) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for i in 0..a.rows() {
        writer.write_record(a.row(i).iter().map(num::fmt_rational)).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

/// A report envelope: schema version and verb first, then the body.
pub fn report(verb: &str, body: Value) -> Value {
    let mut obj = Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("verb".into(), json!(verb));
    if let Value::Object(fields) = body {
        obj.extend(fields);
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_rejected() {
        assert!(rational_from_json(&json!(1.5)).is_err());
        assert!(rational_from_json(&json!("1.5")).is_err());
        assert!(rational_from_json(&json!("1e3")).is_err());
        assert_eq!(rational_from_json(&json!("-3/6")).unwrap(), num::frac(-1, 2));
        assert_eq!(rational_from_json(&json!(7)).unwrap(), num::rat(7));
        assert!(matrix_from_csv("1, 2.0\n3, 4").is_err());
    }

    #[test]
    fn matrix_codecs_round_trip() {
        let a = RatMatrix::from_vec(2, 2, vec![num::frac(1, 3), num::rat(-2), num::rat(0), num::frac(7, 4)]).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
        assert_eq!(matrix_from_csv(&matrix_to_csv(&a).unwrap()).unwrap(), a);
        let text = serde_json::to_string(&matrix_to_json(&a)).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), matrix_to_json(&a));
    }

    #[test]
    fn shape_errors() {
        let bad = json!({"rows": 2, "cols": 2, "entries": [["1", "2"]]});
        assert!(matrix_from_json(&bad).is_err());
        let ragged = json!({"rows": 1, "cols": 2, "entries": [["1"]]});
        assert!(matrix_from_json(&ragged).is_err());
    }

    #[test]
    fn lp_round_trip() {
        let a = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        let lp = LpInstance::bounded(a, vec![num::rat(1), num::rat(2)], vec![num::rat(1); 3], vec![Some(num::rat(3)), None, None]).unwrap();
        assert_eq!(lp_from_json(&lp_to_json(&lp)).unwrap(), lp);
    }
}
