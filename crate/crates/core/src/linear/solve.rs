//! Exact rank, kernel and linear solving.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{LinearMap, Rational, SparseVec};

type IntRow = Vec<(usize, BigInt)>;

/// Rows of `m` scaled to primitive integer vectors.
fn integer_rows(m: &LinearMap) -> Vec<IntRow> {
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m.rows()];
    for (c, col) in m.columns().iter().enumerate() {
        for (r, v) in col {
            rows[*r].push((c, v.clone()));
        }
    }
    rows.into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let ints: IntRow = r.into_iter().map(|(c, v)| (c, (v * Rational::from_integer(lcm.clone())).to_integer())).collect();
            primitive(ints)
        })
        .collect()
}

fn primitive(mut row: IntRow) -> IntRow {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
    row
}

/// `a*row - b*pivot` for sparse integer rows.
fn combine(a: &BigInt, row: &IntRow, b: &BigInt, pivot: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Rank by fraction-free integer elimination: each row is reduced against the pivot rows by
/// cross-multiplication and divided by its content, so no rational arithmetic is needed.
pub fn rank(m: &LinearMap) -> usize {
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for mut row in integer_rows(m) {
        while let Some((lead, lv)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&lv);
                    row = primitive(combine(&(pv / &g), &row, &(&lv / &g), p));
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Reduced row echelon form of `[m | rhs]` kept as pivot rows over the unknowns.
struct Echelon {
    ncols: usize,
    /// pivot column → normalized row (dense, length `ncols + 1`, last entry the right-hand side)
    rows: BTreeMap<usize, Vec<Rational>>,
    inconsistent: bool,
}

impl Echelon {
    fn build(m: &LinearMap, rhs: Option<&SparseVec>) -> Self {
        let ncols = m.cols();
        let mut dense: Vec<Vec<Rational>> = vec![vec![Rational::zero(); ncols + 1]; m.rows()];
        let mut nonzero = vec![false; m.rows()];
        for (c, col) in m.columns().iter().enumerate() {
            for (r, v) in col {
                dense[*r][c] = v.clone();
                nonzero[*r] = true;
            }
        }
        if let Some(b) = rhs {
            for (r, v) in b {
                dense[*r][ncols] = v.clone();
                nonzero[*r] = true;
            }
        }
        let mut e = Self { ncols, rows: BTreeMap::new(), inconsistent: false };
        for (row, nz) in dense.into_iter().zip(nonzero) {
            if nz {
                e.insert(row);
            }
        }
        e
    }

    fn insert(&mut self, mut row: Vec<Rational>) {
        for (&pc, prow) in &self.rows {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for (x, p) in row.iter_mut().zip(prow) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        let Some(lead) = (0..self.ncols).find(|&c| !row[c].is_zero()) else {
            if !row[self.ncols].is_zero() {
                self.inconsistent = true;
            }
            return;
        };
        let inv = Rational::one() / &row[lead];
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for prow in self.rows.values_mut() {
            if !prow[lead].is_zero() {
                let f = prow[lead].clone();
                for (x, r) in prow.iter_mut().zip(&row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.rows.insert(lead, row);
    }
}

/// A basis of `ker m`.
pub fn nullspace(m: &LinearMap) -> Vec<SparseVec> {
    let e = Echelon::build(m, None);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !e.rows.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v: Vec<(usize, Rational)> = vec![(f, Rational::one())];
            for (&pc, row) in &e.rows {
                if !row[f].is_zero() {
                    v.push((pc, -row[f].clone()));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent. Free unknowns are set to zero.
pub fn solve(m: &LinearMap, b: &SparseVec) -> Option<SparseVec> {
    let e = Echelon::build(m, Some(b));
    if e.inconsistent {
        return None;
    }
    let n = e.ncols;
    Some(e.rows.iter().filter(|(_, row)| !row[n].is_zero()).map(|(&pc, row)| (pc, row[n].clone())).collect())
}
