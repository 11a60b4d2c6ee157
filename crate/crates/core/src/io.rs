//! JSON forms of tables, groups, linear maps and bialgebras.
//!
//! Tables: `{"kind":"ternary","order":n,"table":[[[...]]]}` with `table[x][y][z]`, and likewise
//! `"binary"` (two levels) and `"nary"` (with an `"arity"` field and that many levels).
//! Groups: `{"order":n,"mul":[[...]]}`. Maps: `{"rows":r,"cols":c,"matrix":[[...]]}` row by row.
//! Bialgebras: `{"dim":d,"T":[[...]],"delta":[[...]],"epsilon":[...]}` with an optional `"eta"`.
//! Rational entries are strings `"p/q"` or `"p"`; plain JSON integers are accepted on input.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linear::bialgebra::{Coalgebra, TernaryBialgebra};
use crate::linear::matrix::{LinearMap, Rational};
use crate::table::{BinaryTable, NaryTable, TernaryTable};

/// Any of the three table kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTable {
    Binary(BinaryTable),
    Ternary(TernaryTable),
    Nary(NaryTable),
}

fn usize_of(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("expected a nonnegative integer, got {v}")))
}

fn flatten_levels(v: &Value, depth: usize, n: usize, out: &mut Vec<usize>) -> Result<()> {
    if depth == 0 {
        out.push(usize_of(v)?);
        return Ok(());
    }
    let arr = v.as_array().ok_or_else(|| Error::Parse("table nesting is too shallow".into()))?;
    if arr.len() != n {
        return Err(Error::InvalidTable(format!("expected {n} entries per level, got {}", arr.len())));
    }
    for x in arr {
        flatten_levels(x, depth - 1, n, out)?;
    }
    Ok(())
}

fn nest(entries: &[usize], depth: usize, n: usize) -> Value {
    if depth == 0 {
        return json!(entries[0]);
    }
    let stride = n.pow(depth as u32 - 1);
    Value::Array((0..n).map(|i| nest(&entries[i * stride..(i + 1) * stride], depth - 1, n)).collect())
}

pub fn table_from_value(v: &Value) -> Result<AnyTable> {
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("ternary");
    let order = usize_of(v.get("order").ok_or_else(|| Error::Parse("missing \"order\"".into()))?)?;
    let table = v.get("table").ok_or_else(|| Error::Parse("missing \"table\"".into()))?;
    let arity = match kind {
        "binary" => 2,
        "ternary" => 3,
        "nary" => usize_of(v.get("arity").ok_or_else(|| Error::Parse("missing \"arity\"".into()))?)?,
        other => return Err(Error::Parse(format!("unknown table kind {other:?}"))),
    };
    let mut entries = Vec::with_capacity(order.pow(arity as u32));
    flatten_levels(table, arity, order, &mut entries)?;
    Ok(match kind {
        "binary" => AnyTable::Binary(BinaryTable::new(order, entries)?),
        "ternary" => AnyTable::Ternary(TernaryTable::new(order, entries)?),
        _ => AnyTable::Nary(NaryTable::new(arity, order, entries)?),
    })
}

pub fn table_to_value(t: &AnyTable) -> Value {
    match t {
        AnyTable::Binary(b) => json!({"kind": "binary", "order": b.order(), "table": nest(&b.entries(), 2, b.order())}),
        AnyTable::Ternary(t) => json!({"kind": "ternary", "order": t.order(), "table": nest(&t.entries(), 3, t.order())}),
        AnyTable::Nary(t) => json!({
            "kind": "nary",
            "arity": t.arity(),
            "order": t.order(),
            "table": nest(&t.entries(), t.arity(), t.order()),
        }),
    }
}

pub fn parse_table(text: &str) -> Result<AnyTable> {
    table_from_value(&serde_json::from_str(text)?)
}

/// Parses a table that must be ternary.
pub fn parse_ternary(text: &str) -> Result<TernaryTable> {
    match parse_table(text)? {
        AnyTable::Ternary(t) => Ok(t),
        _ => Err(Error::Parse("expected a ternary table".into())),
    }
}

pub fn ternary_to_json(t: &TernaryTable) -> String {
    table_to_value(&AnyTable::Ternary(t.clone())).to_string()
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    mul: Vec<Vec<usize>>,
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let g: GroupJson = serde_json::from_str(text)?;
    if g.mul.len() != g.order {
        return Err(Error::InvalidGroup(format!("order {} but {} rows", g.order, g.mul.len())));
    }
    FiniteGroup::from_nested(&g.mul)
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    serde_json::to_string(&GroupJson { order: g.order(), mul: g.to_nested() }).expect("plain data")
}

pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}; use a \"p/q\" string"))),
        Value::String(s) => {
            let s = s.trim();
            let (p, q) = s.split_once('/').unwrap_or((s, "1"));
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if q == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

/// Dense rows of strings.
pub fn map_rows(m: &LinearMap) -> Value {
    Value::Array(
        m.to_dense().iter().map(|row| Value::Array(row.iter().map(|q| Value::String(rational_to_string(q))).collect())).collect(),
    )
}

pub fn map_from_rows(v: &Value, rows: usize, cols: usize) -> Result<LinearMap> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    if arr.len() != rows {
        return Err(Error::DimensionMismatch(format!("expected {rows} rows, got {}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in arr {
        let r = r.as_array().ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        if r.len() != cols {
            return Err(Error::DimensionMismatch(format!("expected {cols} columns, got {}", r.len())));
        }
        for x in r {
            data.push(parse_rational(x)?);
        }
    }
    LinearMap::from_dense(rows, cols, &data)
}

pub fn map_to_value(m: &LinearMap) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "matrix": map_rows(m)})
}

pub fn map_from_value(v: &Value) -> Result<LinearMap> {
    let rows = usize_of(v.get("rows").ok_or_else(|| Error::Parse("missing \"rows\"".into()))?)?;
    let cols = usize_of(v.get("cols").ok_or_else(|| Error::Parse("missing \"cols\"".into()))?)?;
    map_from_rows(v.get("matrix").ok_or_else(|| Error::Parse("missing \"matrix\"".into()))?, rows, cols)
}

pub fn parse_map(text: &str) -> Result<LinearMap> {
    map_from_value(&serde_json::from_str(text)?)
}

pub fn bialgebra_to_value(b: &TernaryBialgebra) -> Value {
    let eps: Vec<Value> = (0..b.dim()).map(|i| Value::String(rational_to_string(&b.epsilon().get(0, i)))).collect();
    let mut v = json!({"dim": b.dim(), "T": map_rows(b.t()), "delta": map_rows(b.delta()), "epsilon": eps});
    if let Some(eta) = b.eta() {
        v["eta"] = Value::Array((0..b.dim()).map(|i| Value::String(rational_to_string(&eta.get(i, 0)))).collect());
    }
    v
}

pub fn bialgebra_from_value(v: &Value) -> Result<TernaryBialgebra> {
    let d = usize_of(v.get("dim").ok_or_else(|| Error::Parse("missing \"dim\"".into()))?)?;
    let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing {k:?}")));
    let t = map_from_rows(field("T")?, d, d.pow(3))?;
    let delta = map_from_rows(field("delta")?, d.pow(3), d)?;
    let eps_row = Value::Array(vec![field("epsilon")?.clone()]);
    let epsilon = map_from_rows(&eps_row, 1, d)?;
    let eta = match v.get("eta") {
        Some(e) => {
            let col: Vec<Value> = e
                .as_array()
                .ok_or_else(|| Error::Parse("\"eta\" must be an array".into()))?
                .iter()
                .map(|x| Value::Array(vec![x.clone()]))
                .collect();
            Some(map_from_rows(&Value::Array(col), d, 1)?)
        }
        None => None,
    };
    TernaryBialgebra::new(t, Coalgebra::new(delta, epsilon)?, eta)
}

pub fn parse_bialgebra(text: &str) -> Result<TernaryBialgebra> {
    bialgebra_from_value(&serde_json::from_str(text)?)
}
