use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Accumulates `(index, value)` pairs into a [`SparseVec`], dropping zeros.
#[derive(Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Rational>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, idx: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        match self.map.get_mut(&idx) {
            Some(e) => *e += v,
            None => {
                self.map.insert(idx, v.clone());
            }
        }
    }

    pub fn finish(self) -> SparseVec {
        self.map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// A linear map `K^cols → K^rows`, stored column by column.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for r in 0..self.rows {
                let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

impl LinearMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, Rational::one())]).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Result<Self> {
        for col in &columns {
            if col.windows(2).any(|w| w[0].0 >= w[1].0) || col.iter().any(|(r, v)| *r >= rows || v.is_zero()) {
                return Err(Error::DimensionMismatch("malformed sparse column".into()));
            }
        }
        Ok(Self { rows, cols: columns.len(), columns })
    }

    /// Dense row-major data.
    pub fn from_dense(rows: usize, cols: usize, data: &[Rational]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} map", data.len())));
        }
        let columns = (0..cols)
            .map(|c| (0..rows).filter_map(|r| {
                let v = &data[r * cols + c];
                (!v.is_zero()).then(|| (r, v.clone()))
            }).collect())
            .collect();
        Ok(Self { rows, cols, columns })
    }

    /// Dense row-major integer data.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        let data: Vec<Rational> = data.iter().map(|&v| rat(v)).collect();
        Self::from_dense(rows, cols, &data)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let columns = (0..cols)
            .map(|c| (0..rows).filter_map(|r| {
                let v = f(r, c);
                (!v.is_zero()).then_some((r, v))
            }).collect())
            .collect();
        Self { rows, cols, columns }
    }

    /// The map sending basis vector `c` to basis vector `images[c]` (or to zero for `None`).
    pub fn from_basis_images(rows: usize, images: &[Option<usize>]) -> Self {
        let columns = images.iter().map(|im| im.map(|r| vec![(r, Rational::one())]).unwrap_or_default()).collect();
        Self { rows, cols: images.len(), columns }
    }

    /// Column-major flattening `flat = col * rows + row`.
    pub fn from_flat(rows: usize, cols: usize, flat: &[Rational]) -> Result<Self> {
        if flat.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} map", flat.len())));
        }
        Ok(Self::from_fn(rows, cols, |r, c| flat[c * rows + r].clone()))
    }

    pub fn from_flat_sparse(rows: usize, cols: usize, flat: &SparseVec) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (i, v) in flat {
            columns[i / rows].push((i % rows, v.clone()));
        }
        Self { rows, cols, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::with_capacity(self.nnz());
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out.push((c * self.rows + r, v.clone()));
            }
        }
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in v {
            for (r, b) in &self.columns[*i] {
                acc.add(*r, &(a * b));
            }
        }
        acc.finish()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self { rows: self.rows, cols: other.cols, columns: other.columns.iter().map(|c| self.apply(c)).collect() })
    }

    /// Kronecker product; the left factor is most significant.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (ra, va) in a {
                    for (rb, vb) in b {
                        col.push((ra * other.rows + rb, va * vb));
                    }
                }
                columns.push(col);
            }
        }
        Self { rows, cols: self.cols * other.cols, columns }
    }

    pub fn kron_all(factors: &[&Self]) -> Self {
        let mut out = LinearMap::identity(1);
        for f in factors {
            out = out.kron(f);
        }
        out
    }

    fn zip(&self, other: &Self, sign: i64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let s = rat(sign);
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut acc = Accumulator::new();
                for (r, v) in a {
                    acc.add(*r, v);
                }
                for (r, v) in b {
                    acc.add(*r, &(v * &s));
                }
                acc.finish()
            })
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, columns })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, -1)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| c.iter().map(|(r, v)| (*r, v * k)).collect()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    /// First `(row, col)` where the maps differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        for c in 0..self.cols {
            if self.columns[c] != other.columns[c] {
                let d = self.sub(other).expect("same shape");
                let r = d.columns[c][0].0;
                return Some((r, c));
            }
        }
        None
    }

    /// Largest absolute value among the entries.
    pub fn max_abs_entry(&self) -> Rational {
        self.columns.iter().flatten().map(|(_, v)| v.abs()).max().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_kron() {
        let a = LinearMap::from_i64(2, 2, &[1, 2, 3, 4]).unwrap();
        let b = LinearMap::from_i64(2, 2, &[0, 1, 1, 0]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab, LinearMap::from_i64(2, 2, &[2, 1, 4, 3]).unwrap());
        let k = a.kron(&b);
        assert_eq!(k.get(0, 1), rat(1));
        assert_eq!(k.get(3, 2), rat(4));
        assert_eq!(k.get(2, 2), rat(0));
        assert!(a.compose(&LinearMap::zeros(3, 1)).is_err());
    }

    #[test]
    fn flatten_is_column_major() {
        let a = LinearMap::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]).unwrap();
        let flat = a.flatten();
        assert_eq!(flat[1], (1, rat(4)));
        assert_eq!(LinearMap::from_flat_sparse(2, 3, &flat), a);
        let dense: Vec<Rational> = (0..6).map(|i| a.get(i % 2, i / 2)).collect();
        assert_eq!(LinearMap::from_flat(2, 3, &dense).unwrap(), a);
    }

    #[test]
    fn arithmetic() {
        let a = LinearMap::from_i64(2, 2, &[1, 2, 3, 4]).unwrap();
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.add(&a).unwrap(), a.scale(&rat(2)));
        assert_eq!(a.first_difference(&a), None);
        assert_eq!(a.first_difference(&a.neg()), Some((0, 0)));
        assert_eq!(ratio(2, 4), ratio(1, 2));
    }
}
