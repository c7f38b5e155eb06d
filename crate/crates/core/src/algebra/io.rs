use serde_json::{json, Map, Value};

use super::StructureAlgebra;
use crate::linalg::{Scalar, SparseVec};
use crate::{Error, Result};

fn err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

fn as_count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn as_integer_text(v: &Value, path: &str) -> Result<String> {
    match v {
        Value::Number(x) if x.is_i64() || x.is_u64() => Ok(x.to_string()),
        Value::String(s) if s.parse::<num_bigint::BigInt>().is_ok() => Ok(s.clone()),
        _ => Err(err(path, "expected an integer (number or decimal string)")),
    }
}

/// Parses the algebra file format. Syntax errors report line and column;
/// structural errors report the offending field path.
pub fn from_json_str(text: &str) -> Result<StructureAlgebra> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        err(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = root.as_object().ok_or_else(|| err("$", "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "n" | "dim" | "basis" | "brackets") {
            return Err(err(key.clone(), "unknown field"));
        }
    }
    let n = as_count(obj.get("n").ok_or_else(|| err("n", "missing field"))?, "n")?;
    if n < 2 {
        return Err(err("n", "arity must be at least 2"));
    }
    let dim = as_count(obj.get("dim").ok_or_else(|| err("dim", "missing field"))?, "dim")?;
    let names = match obj.get("basis") {
        None => (1..=dim).map(|i| format!("e{i}")).collect(),
        Some(Value::Array(items)) => {
            if items.len() != dim {
                return Err(err(
                    "basis",
                    format!("has {} names but dim is {dim}", items.len()),
                ));
            }
            items
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| err(format!("basis[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>>>()?
        }
        Some(_) => return Err(err("basis", "expected an array of names")),
    };
    let mut a = StructureAlgebra::new(n, names)?;
    let brackets = match obj.get("brackets") {
        None => &[][..],
        Some(Value::Array(items)) => items.as_slice(),
        Some(_) => return Err(err("brackets", "expected an array")),
    };
    for (b, entry) in brackets.iter().enumerate() {
        let here = format!("brackets[{b}]");
        let e = entry
            .as_object()
            .ok_or_else(|| err(&here, "expected an object with args and value"))?;
        for key in e.keys() {
            if !matches!(key.as_str(), "args" | "value") {
                return Err(err(format!("{here}.{key}"), "unknown field"));
            }
        }
        let args_path = format!("{here}.args");
        let args = e
            .get("args")
            .and_then(Value::as_array)
            .ok_or_else(|| err(&args_path, "expected an array of basis indices"))?;
        if args.len() != n {
            return Err(err(&args_path, format!("expected {n} indices, found {}", args.len())));
        }
        let mut idx = Vec::with_capacity(n);
        for (k, v) in args.iter().enumerate() {
            let p = format!("{args_path}[{k}]");
            let i = as_count(v, &p)?;
            if i < 1 || i > dim {
                return Err(err(p, format!("index {i} outside 1..={dim}")));
            }
            idx.push(i - 1);
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(args_path, "indices must be strictly increasing"));
        }
        if a.table.contains_key(&idx) {
            return Err(err(args_path, "duplicate bracket entry"));
        }
        let val_path = format!("{here}.value");
        let terms = e
            .get("value")
            .and_then(Value::as_array)
            .ok_or_else(|| err(&val_path, "expected an array of [num, den, index] triples"))?;
        let mut entries = Vec::with_capacity(terms.len());
        for (t, term) in terms.iter().enumerate() {
            let p = format!("{val_path}[{t}]");
            let triple = term
                .as_array()
                .filter(|x| x.len() == 3)
                .ok_or_else(|| err(&p, "expected [num, den, index]"))?;
            let num = as_integer_text(&triple[0], &format!("{p}[0]"))?;
            let den = as_integer_text(&triple[1], &format!("{p}[1]"))?;
            let x: Scalar = format!("{num}/{den}")
                .parse()
                .map_err(|_| err(format!("{p}[1]"), "denominator must be nonzero"))?;
            if den.starts_with('-') {
                return Err(err(format!("{p}[1]"), "denominator must be positive"));
            }
            let i = as_count(&triple[2], &format!("{p}[2]"))?;
            if i < 1 || i > dim {
                return Err(err(format!("{p}[2]"), format!("index {i} outside 1..={dim}")));
            }
            entries.push((i - 1, x));
        }
        let value = SparseVec::from_entries(entries);
        if !value.is_zero() {
            a.table.insert(idx, value);
        }
    }
    Ok(a)
}

fn integer_value(x: num_bigint::BigInt) -> Value {
    match i64::try_from(&x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn to_json_value(a: &StructureAlgebra) -> Value {
    let brackets: Vec<Value> = a
        .table
        .iter()
        .map(|(k, v)| {
            let args: Vec<usize> = k.iter().map(|i| i + 1).collect();
            let value: Vec<Value> = v
                .iter()
                .map(|(i, x)| json!([integer_value(x.numer()), integer_value(x.denom()), i + 1]))
                .collect();
            json!({"args": args, "value": value})
        })
        .collect();
    let mut m = Map::new();
    m.insert("n".into(), json!(a.n));
    m.insert("dim".into(), json!(a.dim()));
    m.insert("basis".into(), json!(a.names));
    m.insert("brackets".into(), Value::Array(brackets));
    Value::Object(m)
}

pub fn to_json_string(a: &StructureAlgebra) -> String {
    serde_json::to_string_pretty(&to_json_value(a)).expect("algebra JSON is serializable")
}
