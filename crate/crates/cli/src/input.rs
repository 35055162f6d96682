//! Input files: a JSON object describing either a tridiagonal spec or a dense pair.
//!
//! ```json
//! {"kind": "tridiagonal", "order": 3, "a": 4, "b": [[3, 1], [1, 0]], "c": [[-4, 1], [0, -1]]}
//! {"kind": "dense", "J": [1, -1], "A": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}
//! ```
//!
//! Complex entries are `[re, im]` pairs, plain numbers or strings such as `"3-2i"`.
//! A tridiagonal spec without `c` is taken as centrosymmetric.

use std::path::Path;

use knr_core::{CMatrix, Complex64, Metric, TridiagonalSpec};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Tridiagonal(TridiagonalSpec),
    Dense { a: CMatrix, j: Metric },
}

impl Input {
    pub fn matrix_metric(&self) -> (CMatrix, Metric) {
        match self {
            Input::Tridiagonal(spec) => (spec.matrix(), spec.metric()),
            Input::Dense { a, j } => (a.clone(), j.clone()),
        }
    }
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema {
        field: field.into(),
        message: message.into(),
    }
}

pub fn parse_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<Input, CliError> {
    let root: Value = serde_json::from_str(text).map_err(CliError::Json)?;
    let obj = root.as_object().ok_or_else(|| schema("$", "expected a JSON object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("kind", "expected \"tridiagonal\" or \"dense\""))?;
    match kind {
        "tridiagonal" => parse_tridiagonal(obj),
        "dense" => parse_dense(obj),
        other => Err(schema("kind", format!("unknown kind {other:?}"))),
    }
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, name: &str) -> Result<&'a Value, CliError> {
    obj.get(name).ok_or_else(|| schema(name, "missing field"))
}

fn parse_tridiagonal(obj: &serde_json::Map<String, Value>) -> Result<Input, CliError> {
    let order = field(obj, "order")?
        .as_u64()
        .ok_or_else(|| schema("order", "expected a positive integer"))? as usize;
    let a = field(obj, "a")?
        .as_f64()
        .ok_or_else(|| schema("a", "expected a real number"))?;
    let b = complex_list(field(obj, "b")?, "b")?;
    let spec = match obj.get("c") {
        Some(c) => TridiagonalSpec::new(order, a, b, complex_list(c, "c")?)?,
        None => TridiagonalSpec::centrosymmetric(order, a, b)?,
    };
    Ok(Input::Tridiagonal(spec))
}

fn parse_dense(obj: &serde_json::Map<String, Value>) -> Result<Input, CliError> {
    let j_entries = field(obj, "J")?
        .as_array()
        .ok_or_else(|| schema("J", "expected an array of ±1"))?
        .iter()
        .enumerate()
        .map(|(i, v)| v.as_f64().ok_or_else(|| schema(format!("J[{i}]"), "expected a number")))
        .collect::<Result<Vec<_>, _>>()?;
    let j = Metric::from_f64(&j_entries).map_err(|e| schema("J", e.to_string()))?;
    let rows = field(obj, "A")?
        .as_array()
        .ok_or_else(|| schema("A", "expected an array of rows"))?
        .iter()
        .enumerate()
        .map(|(i, row)| complex_list(row, &format!("A[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != j.n() {
        return Err(schema(
            "A",
            format!("{} rows but J has {} entries", rows.len(), j.n()),
        ));
    }
    let a = CMatrix::from_rows(rows).map_err(|e| schema("A", e.to_string()))?;
    Ok(Input::Dense { a, j })
}

fn complex_list(v: &Value, path: &str) -> Result<Vec<Complex64>, CliError> {
    v.as_array()
        .ok_or_else(|| schema(path, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, z)| parse_complex(z, &format!("{path}[{i}]")))
        .collect()
}

/// Parses `[re, im]`, a plain number or a string like `"1.5-2i"`.
pub fn parse_complex(v: &Value, path: &str) -> Result<Complex64, CliError> {
    let z = match v {
        Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)),
        Value::Array(pair) if pair.len() == 2 => match (pair[0].as_f64(), pair[1].as_f64()) {
            (Some(re), Some(im)) => Some(Complex64::new(re, im)),
            _ => None,
        },
        Value::String(s) => {
            let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            cleaned.parse::<Complex64>().ok()
        }
        _ => None,
    };
    match z {
        Some(z) if z.re.is_finite() && z.im.is_finite() => Ok(z),
        _ => Err(schema(path, format!("expected a complex number, got {v}"))),
    }
}
