use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bialgebra::{check_compatibility, check_linear_distributive, group_like_delta};
use super::matrix::{rat, LinearMap};
use crate::error::{Error, Result};

/// Value of `q` on a basis triple of the plane spanned by `x` (index 0) and `y` (index 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dim2Value {
    Zero,
    PlusX,
    MinusX,
    PlusY,
    MinusY,
}

impl Dim2Value {
    pub const ALL: [Dim2Value; 5] = [Self::Zero, Self::PlusX, Self::MinusX, Self::PlusY, Self::MinusY];

    fn vector(self) -> [i64; 2] {
        match self {
            Self::Zero => [0, 0],
            Self::PlusX => [1, 0],
            Self::MinusX => [-1, 0],
            Self::PlusY => [0, 1],
            Self::MinusY => [0, -1],
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Self::Zero => Self::Zero,
            Self::PlusX => Self::MinusX,
            Self::MinusX => Self::PlusX,
            Self::PlusY => Self::MinusY,
            Self::MinusY => Self::PlusY,
        }
    }

    pub fn swap_xy(self) -> Self {
        match self {
            Self::Zero => Self::Zero,
            Self::PlusX => Self::PlusY,
            Self::MinusX => Self::MinusY,
            Self::PlusY => Self::PlusX,
            Self::MinusY => Self::MinusX,
        }
    }
}

impl fmt::Display for Dim2Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zero => "0",
            Self::PlusX => "+x",
            Self::MinusX => "-x",
            Self::PlusY => "+y",
            Self::MinusY => "-y",
        })
    }
}

impl FromStr for Dim2Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "0" => Self::Zero,
            "+x" | "x" => Self::PlusX,
            "-x" => Self::MinusX,
            "+y" | "y" => Self::PlusY,
            "-y" => Self::MinusY,
            other => return Err(Error::Parse(format!("bad value {other:?}"))),
        })
    }
}

/// Values of `q` on the triples `xxx, xxy, xyx, xyy, yxx, yxy, yyx, yyy`, in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dim2Solution {
    pub values: [Dim2Value; 8],
}

impl Dim2Solution {
    pub fn zero() -> Self {
        Self { values: [Dim2Value::Zero; 8] }
    }

    pub fn constant(v: Dim2Value) -> Self {
        Self { values: [v; 8] }
    }

    pub fn to_linear_map(&self) -> LinearMap {
        let data: Vec<i64> = (0..2).flat_map(|r| self.values.iter().map(move |v| v.vector()[r])).collect();
        LinearMap::from_i64(2, 8, &data).expect("2x8 map")
    }

    /// Reads a `2×8` map whose columns all lie in `{0, ±x, ±y}`.
    pub fn from_linear_map(m: &LinearMap) -> Option<Self> {
        if m.rows() != 2 || m.cols() != 8 {
            return None;
        }
        let mut values = [Dim2Value::Zero; 8];
        for (c, slot) in values.iter_mut().enumerate() {
            let v = [m.get(0, c), m.get(1, c)];
            *slot = *Dim2Value::ALL.iter().find(|d| {
                let w = d.vector();
                v[0] == rat(w[0]) && v[1] == rat(w[1])
            })?;
        }
        Some(Self { values })
    }

    pub fn negate(&self) -> Self {
        Self { values: self.values.map(Dim2Value::negate) }
    }

    /// Conjugation by the basis swap `x ↔ y`.
    pub fn swap_xy(&self) -> Self {
        let mut values = [Dim2Value::Zero; 8];
        for (i, v) in self.values.iter().enumerate() {
            values[7 - i] = v.swap_xy();
        }
        Self { values }
    }
}

impl fmt::Display for Dim2Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Dim2Solution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 8 {
            return Err(Error::Parse(format!("expected 8 values, got {}", parts.len())));
        }
        let mut values = [Dim2Value::Zero; 8];
        for (slot, p) in values.iter_mut().zip(parts) {
            *slot = p.parse()?;
        }
        Ok(Self { values })
    }
}

/// Integer evaluation of the multilinear map with basis values `q`.
fn apply_int(q: &[[i64; 2]; 8], a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> [i64; 2] {
    let mut out = [0i64; 2];
    for (i, v) in q.iter().enumerate() {
        let coeff = a[i >> 2] * b[(i >> 1) & 1] * c[i & 1];
        if coeff != 0 {
            out[0] += coeff * v[0];
            out[1] += coeff * v[1];
        }
    }
    out
}

/// Exact integer screen: distributivity against group-like `Δ` on all 32 basis 5-tuples and
/// compatibility on all 8 basis triples.
fn passes_integer_screen(q: &[[i64; 2]; 8]) -> bool {
    const E: [[i64; 2]; 2] = [[1, 0], [0, 1]];
    for i in 0..32usize {
        let [a, b, c, u, v] = [i >> 4, (i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1].map(|k| E[k]);
        let lhs = apply_int(q, q[(i >> 2) & 7], u, v);
        let rhs = apply_int(q, apply_int(q, a, u, v), apply_int(q, b, u, v), apply_int(q, c, u, v));
        if lhs != rhs {
            return false;
        }
    }
    // Δ(w) = Σ w_i e_i⊗e_i⊗e_i against w⊗w⊗w
    q.iter().all(|w| {
        (0..8usize).all(|k| {
            let (i, j, l) = (k >> 2, (k >> 1) & 1, k & 1);
            let cube = w[i] * w[j] * w[l];
            let diag = if i == j && j == l { w[i] } else { 0 };
            cube == diag
        })
    })
}

/// Every assignment of `{0, ±x, ±y}` to the eight basis triples whose linear map is distributive
/// and compatible with the group-like comultiplication on the plane, sorted.
///
/// Candidates are screened with exact integer arithmetic, and each survivor is confirmed with the
/// rational matrix identities.
pub fn classify_dim2_maps() -> Vec<Dim2Solution> {
    let delta = group_like_delta(2);
    let mut out: Vec<Dim2Solution> = (0..5usize)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            for rest in 0..5usize.pow(7) {
                let mut values = [Dim2Value::ALL[first]; 8];
                let mut r = rest;
                for slot in values[1..].iter_mut().rev() {
                    *slot = Dim2Value::ALL[r % 5];
                    r /= 5;
                }
                let q = values.map(Dim2Value::vector);
                if passes_integer_screen(&q) {
                    found.push(Dim2Solution { values });
                }
            }
            found
        })
        .filter(|s| {
            let m = s.to_linear_map();
            check_linear_distributive(&m, &delta).expect("2-dimensional shapes")
                && check_compatibility(&m, &delta).expect("2-dimensional shapes")
        })
        .collect();
    out.sort();
    out
}
