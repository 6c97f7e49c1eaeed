//! System specification files and matrix interchange.
//!
//! Matrices travel as JSON arrays of arrays of decimal integer strings
//! (plain numbers are also accepted on input). A system file names the
//! matrix "A" and optionally "beta" (rational strings), a weight as
//! "L_x"/"L_d", a full-rank extension "breve_A", and binomial generators
//! "I" written in d1..dn.

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{format_rat, parse_rat, IntMatrix};
use crate::Rat;

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix needs at least one row".into()));
    }
    let mut entries: Vec<BigInt> = Vec::new();
    let mut width: Option<usize> = None;
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        match width {
            None => width = Some(cells.len()),
            Some(w) if w == cells.len() => {}
            Some(w) => {
                return Err(Error::Parse(format!(
                    "ragged matrix: expected {w} entries per row, found {}",
                    cells.len()
                )))
            }
        }
        for c in cells {
            let e: BigInt = match c {
                Value::String(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer entry '{s}'")))?,
                Value::Number(n) => {
                    let i = n
                        .as_i64()
                        .ok_or_else(|| Error::Parse(format!("non-integer entry {n}")))?;
                    BigInt::from(i)
                }
                other => {
                    return Err(Error::Parse(format!(
                        "matrix entry must be a string or integer, got {other}"
                    )))
                }
            };
            entries.push(e);
        }
    }
    IntMatrix::new(rows.len(), width.unwrap(), entries)
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| Value::String(m.at(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn rat_vec_from_json(v: &Value, what: &str) -> Result<Vec<Rat>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?;
    items
        .iter()
        .map(|item| match item {
            Value::String(s) => parse_rat(s),
            Value::Number(n) => n
                .as_i64()
                .map(|i| Rat::from(BigInt::from(i)))
                .ok_or_else(|| Error::Parse(format!("non-integer number in {what}"))),
            other => Err(Error::Parse(format!("bad entry {other} in {what}"))),
        })
        .collect()
}

pub fn rat_vec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rat(q))).collect())
}

/// A parsed system specification file.
#[derive(Clone, Debug)]
pub struct SystemSpec {
    pub a: IntMatrix,
    pub beta: Option<Vec<Rat>>,
    pub lx: Option<Vec<Rat>>,
    pub ld: Option<Vec<Rat>>,
    pub breve_a: Option<IntMatrix>,
    /// Binomial generators in d1..dn; absent means the toric ideal of A.
    pub binomial_gens: Option<Vec<String>>,
}

pub fn parse_system(text: &str) -> Result<SystemSpec> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("system file must be a JSON object".into()))?;
    let a = matrix_from_json(
        obj.get("A")
            .ok_or_else(|| Error::Parse("missing field \"A\"".into()))?,
    )?;
    let beta = obj
        .get("beta")
        .map(|b| rat_vec_from_json(b, "beta"))
        .transpose()?;
    let lx = obj
        .get("L_x")
        .map(|b| rat_vec_from_json(b, "L_x"))
        .transpose()?;
    let ld = obj
        .get("L_d")
        .map(|b| rat_vec_from_json(b, "L_d"))
        .transpose()?;
    let breve_a = obj.get("breve_A").map(matrix_from_json).transpose()?;
    let binomial_gens = obj
        .get("I")
        .map(|v| -> Result<Vec<String>> {
            v.as_array()
                .ok_or_else(|| Error::Parse("\"I\" must be an array of strings".into()))?
                .iter()
                .map(|g| {
                    g.as_str()
                        .map(|s| s.to_string())
                        .ok_or_else(|| Error::Parse("\"I\" entries must be strings".into()))
                })
                .collect()
        })
        .transpose()?;
    Ok(SystemSpec { a, beta, lx, ld, breve_a, binomial_gens })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = IntMatrix::from_rows(&[vec![1, -2], vec![30000000000, 4]]);
        let j = matrix_to_json(&m);
        let back = matrix_from_json(&j).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn parse_full_system() {
        let text = r#"{
            "A": [["1","1","1"],["0","1","2"]],
            "beta": ["1/2", "1/3"],
            "L_x": ["0","0","0"],
            "L_d": ["1","1","1"],
            "I": ["d1*d3 - d2^2"]
        }"#;
        let s = parse_system(text).unwrap();
        assert_eq!(s.a.rows(), 2);
        assert_eq!(s.beta.unwrap().len(), 2);
        assert_eq!(s.binomial_gens.unwrap().len(), 1);
    }

    #[test]
    fn rejects_ragged_matrix() {
        assert!(parse_system(r#"{"A": [["1","2"],["3"]]}"#).is_err());
    }
}
