//! JSON input documents.
//!
//! ```json
//! {"kind":"lie_algebra","dim":3,"brackets":[{"pair":[0,1],"result":{"2":"5"}}]}
//! {"kind":"ckf","dim":3,"alpha":["0","0","0"],"c":"1","B":[["0","0","0"],...],"gamma":[...]}
//! ```

use std::path::Path;

use lcwlab_core::ckf::CkField;
use lcwlab_core::liealg::LieAlgebra;
use lcwlab_core::ratmath::{Matrix, Rational, Vector};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputDoc {
    LieAlgebra(LieAlgebra),
    Ckf(CkField),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept brackets that violate Jacobi; for tests only.
    pub skip_jacobi: bool,
}

pub fn parse_input(path: &Path, opts: ParseOptions) -> Result<InputDoc, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text, opts)
}

pub fn parse_str(text: &str, opts: ParseOptions) -> Result<InputDoc, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::field("$", "top level must be an object"))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("lie_algebra") => parse_lie(obj, opts).map(InputDoc::LieAlgebra),
        Some("ckf") => parse_ckf(obj).map(InputDoc::Ckf),
        Some(other) => Err(CliError::field("kind", format!("unknown kind \"{other}\""))),
        None => Err(CliError::field(
            "kind",
            "missing; expected \"lie_algebra\" or \"ckf\"",
        )),
    }
}

fn rational(v: &Value, path: &str) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => s.parse().map_err(|e| CliError::field(path, e)),
        Value::Number(n) if n.is_i64() || n.is_u64() => Err(CliError::field(
            path,
            format!("write rationals as strings, e.g. \"{n}\""),
        )),
        Value::Number(n) => n
            .to_string()
            .parse::<Rational>()
            .map_err(|e| CliError::field(path, e)),
        _ => Err(CliError::field(
            path,
            "expected a rational string such as \"1/2\"",
        )),
    }
}

fn index(v: &Value, path: &str) -> Result<usize, CliError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::field(path, "expected a nonnegative integer index"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| CliError::field(key, "missing"))
}

fn dim(obj: &Map<String, Value>) -> Result<usize, CliError> {
    index(field(obj, "dim")?, "dim")
}

fn vector(v: &Value, path: &str, n: usize) -> Result<Vector, CliError> {
    let items = v
        .as_array()
        .ok_or_else(|| CliError::field(path, "expected an array"))?;
    if items.len() != n {
        return Err(CliError::field(
            path,
            format!("expected {n} entries, got {}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_lie(obj: &Map<String, Value>, opts: ParseOptions) -> Result<LieAlgebra, CliError> {
    let n = dim(obj)?;
    let brackets = field(obj, "brackets")?
        .as_array()
        .ok_or_else(|| CliError::field("brackets", "expected an array"))?;
    let mut parsed = Vec::with_capacity(brackets.len());
    for (b, entry) in brackets.iter().enumerate() {
        let at = format!("brackets[{b}]");
        let entry = entry
            .as_object()
            .ok_or_else(|| CliError::field(&at, "expected an object"))?;
        let pair = entry
            .get("pair")
            .and_then(Value::as_array)
            .filter(|p| p.len() == 2)
            .ok_or_else(|| CliError::field(format!("{at}.pair"), "expected [i, j]"))?;
        let i = index(&pair[0], &format!("{at}.pair[0]"))?;
        let j = index(&pair[1], &format!("{at}.pair[1]"))?;
        let result = entry
            .get("result")
            .and_then(Value::as_object)
            .ok_or_else(|| {
                CliError::field(
                    format!("{at}.result"),
                    "expected an object {\"k\": \"p/q\"}",
                )
            })?;
        let mut out = vec![Rational::zero(); n];
        for (k, v) in result {
            let path = format!("{at}.result.{k}");
            let k: usize = k.parse().ok().filter(|&k| k < n).ok_or_else(|| {
                CliError::field(&path, format!("key must be a frame index below {n}"))
            })?;
            out[k] = rational(v, &path)?;
        }
        parsed.push(((i, j), out));
    }
    LieAlgebra::load(n, &parsed, opts.skip_jacobi).map_err(|e| CliError::Validation(e.to_string()))
}

fn parse_ckf(obj: &Map<String, Value>) -> Result<CkField, CliError> {
    let n = dim(obj)?;
    let alpha = vector(field(obj, "alpha")?, "alpha", n)?;
    let c = rational(field(obj, "c")?, "c")?;
    let gamma = vector(field(obj, "gamma")?, "gamma", n)?;
    let rows = field(obj, "B")?
        .as_array()
        .filter(|r| r.len() == n)
        .ok_or_else(|| CliError::field("B", format!("expected {n} rows")))?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, &format!("B[{i}]"), n))
        .collect::<Result<Vec<_>, _>>()?;
    CkField::new(alpha, c, Matrix::from_rows(rows), gamma)
        .map_err(|e| CliError::Validation(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literal_rejected() {
        let doc =
            r#"{"kind":"lie_algebra","dim":3,"brackets":[{"pair":[0,1],"result":{"2":"0.5"}}]}"#;
        let err = parse_str(doc, ParseOptions::default()).unwrap_err();
        assert_eq!(
            err.to_string(),
            "brackets[0].result.2: decimals forbidden; write 1/2"
        );
        let doc =
            r#"{"kind":"lie_algebra","dim":3,"brackets":[{"pair":[0,1],"result":{"2":0.5}}]}"#;
        let err = parse_str(doc, ParseOptions::default()).unwrap_err();
        assert!(err.to_string().ends_with("decimals forbidden; write 1/2"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_str(
            "{\n  \"kind\": \"ckf\",\n  oops\n}",
            ParseOptions::default(),
        )
        .unwrap_err();
        match err {
            CliError::Json { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn non_skew_b_rejected() {
        let doc = r#"{"kind":"ckf","dim":3,"alpha":["0","0","0"],"c":"0",
            "B":[["0","1","0"],["1","0","0"],["0","0","0"]],"gamma":["0","0","0"]}"#;
        let err = parse_str(doc, ParseOptions::default()).unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn jacobi_failure_and_skip() {
        let doc = r#"{"kind":"lie_algebra","dim":3,"brackets":[
            {"pair":[0,1],"result":{"2":"1"}},{"pair":[1,2],"result":{"1":"1"}}]}"#;
        assert!(matches!(
            parse_str(doc, ParseOptions::default()),
            Err(CliError::Validation(_))
        ));
        assert!(parse_str(doc, ParseOptions { skip_jacobi: true }).is_ok());
    }
}
