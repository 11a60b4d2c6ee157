//! Lazy evaluation of composites built from maps, Kronecker products and tensor-slot
//! permutations, without materializing large products such as `T⊗T⊗T` or `P_ρ`.
//!
//! Tensor bases are lexicographic with the leftmost factor most significant.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::matrix::{LinearMap, Rational, SparseVec};
use crate::error::{Error, Result};
use crate::table::RHO;

/// One tensor factor of a stage: a fixed map, or a formal variable `Hom(K^cols, K^rows)` whose
/// basis element `E_{r,c}` carries tag `c*rows + r`.
#[derive(Clone, Copy)]
pub enum Factor<'a> {
    Map(&'a LinearMap),
    Id(usize),
    Var { rows: usize, cols: usize },
}

impl Factor<'_> {
    fn dom(&self) -> usize {
        match self {
            Factor::Map(m) => m.cols(),
            Factor::Id(d) => *d,
            Factor::Var { cols, .. } => *cols,
        }
    }

    fn cod(&self) -> usize {
        match self {
            Factor::Map(m) => m.rows(),
            Factor::Id(d) => *d,
            Factor::Var { rows, .. } => *rows,
        }
    }
}

/// A step of a composite, applied in list order.
#[derive(Clone)]
pub enum Stage<'a> {
    Kron(Vec<Factor<'a>>),
    /// Permutes `perm.len()` tensor slots of dimension `dim`: output slot `i` reads input slot `perm[i]`.
    Slots { dim: usize, perm: Vec<usize> },
}

impl<'a> Stage<'a> {
    pub fn map(m: &'a LinearMap) -> Self {
        Stage::Kron(vec![Factor::Map(m)])
    }

    pub fn var(rows: usize, cols: usize) -> Self {
        Stage::Kron(vec![Factor::Var { rows, cols }])
    }

    pub fn rho(dim: usize) -> Self {
        Stage::Slots { dim, perm: RHO.to_vec() }
    }

    fn dims(&self) -> (usize, usize) {
        match self {
            Stage::Kron(fs) => (fs.iter().map(Factor::dom).product(), fs.iter().map(Factor::cod).product()),
            Stage::Slots { dim, perm } => {
                let n = dim.pow(perm.len() as u32);
                (n, n)
            }
        }
    }
}

/// Tag value for vectors that have not passed through a variable.
const UNTAGGED: usize = usize::MAX;

type Tagged = HashMap<(usize, usize), Rational>;

fn add_tagged(acc: &mut Tagged, key: (usize, usize), v: Rational) {
    if v.is_zero() {
        return;
    }
    let e = acc.entry(key).or_insert_with(Rational::zero);
    *e += v;
    if e.is_zero() {
        acc.remove(&key);
    }
}

fn apply_stage(stage: &Stage, input: Tagged) -> Result<Tagged> {
    let mut out = Tagged::with_capacity(input.len());
    match stage {
        Stage::Slots { dim, perm } => {
            let k = perm.len();
            let mut digits = vec![0usize; k];
            for ((tag, idx), v) in input {
                let mut r = idx;
                for s in (0..k).rev() {
                    digits[s] = r % dim;
                    r /= dim;
                }
                let new = perm.iter().fold(0, |acc, &p| acc * dim + digits[p]);
                add_tagged(&mut out, (tag, new), v);
            }
        }
        Stage::Kron(factors) => {
            let k = factors.len();
            let doms: Vec<usize> = factors.iter().map(Factor::dom).collect();
            let cods: Vec<usize> = factors.iter().map(Factor::cod).collect();
            let mut digits = vec![0usize; k];
            // images of each slot: (output index, coefficient, variable tag)
            let mut images: Vec<Vec<(usize, Rational, Option<usize>)>> = vec![Vec::new(); k];
            for ((tag, idx), v) in input {
                let mut r = idx;
                for s in (0..k).rev() {
                    digits[s] = r % doms[s];
                    r /= doms[s];
                }
                for s in 0..k {
                    images[s].clear();
                    match factors[s] {
                        Factor::Map(m) => {
                            images[s].extend(m.column(digits[s]).iter().map(|(i, c)| (*i, c.clone(), None)))
                        }
                        Factor::Id(_) => images[s].push((digits[s], Rational::one(), None)),
                        Factor::Var { rows, .. } => {
                            images[s].extend((0..rows).map(|row| (row, Rational::one(), Some(digits[s] * rows + row))))
                        }
                    }
                }
                if images.iter().any(Vec::is_empty) {
                    continue;
                }
                // odometer over the cartesian product of slot images
                let mut pos = vec![0usize; k];
                loop {
                    let mut out_idx = 0usize;
                    let mut coeff = v.clone();
                    let mut new_tag = tag;
                    for s in 0..k {
                        let (i, c, t) = &images[s][pos[s]];
                        out_idx = out_idx * cods[s] + i;
                        if !c.is_one() {
                            coeff *= c;
                        }
                        if let Some(t) = t {
                            if new_tag != UNTAGGED {
                                return Err(Error::Precondition("a composite may contain one variable".into()));
                            }
                            new_tag = *t;
                        }
                    }
                    add_tagged(&mut out, (new_tag, out_idx), coeff);
                    let mut s = k;
                    let exhausted = loop {
                        if s == 0 {
                            break true;
                        }
                        s -= 1;
                        pos[s] += 1;
                        if pos[s] < images[s].len() {
                            break false;
                        }
                        pos[s] = 0;
                    };
                    if exhausted {
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_chain(stages: &[Stage], dom: usize) -> Result<usize> {
    let mut cur = dom;
    for (i, s) in stages.iter().enumerate() {
        let (d, c) = s.dims();
        if d != cur {
            return Err(Error::DimensionMismatch(format!("stage {i} expects dimension {d}, got {cur}")));
        }
        cur = c;
    }
    Ok(cur)
}

fn push_basis(stages: &[Stage], basis: usize) -> Result<Tagged> {
    let mut v = Tagged::new();
    v.insert((UNTAGGED, basis), Rational::one());
    for s in stages {
        v = apply_stage(s, v)?;
        if v.is_empty() {
            break;
        }
    }
    Ok(v)
}

/// Matrix of the composite of `stages` (applied in order) on `K^dom`.
pub fn eval_pipeline(stages: &[Stage], dom: usize) -> Result<LinearMap> {
    let cod = check_chain(stages, dom)?;
    let mut columns = Vec::with_capacity(dom);
    for b in 0..dom {
        let v = push_basis(stages, b)?;
        let mut col: SparseVec = Vec::with_capacity(v.len());
        for ((tag, idx), c) in v {
            if tag != UNTAGGED {
                return Err(Error::Precondition("eval_pipeline called with a variable".into()));
            }
            col.push((idx, c));
        }
        col.sort_by_key(|(i, _)| *i);
        columns.push(col);
    }
    LinearMap::from_columns(cod, columns)
}

/// For a composite that is linear in one variable `ψ`, returns triplets
/// `(ψ-basis index, column-major index into the composite's matrix, value)`.
/// Untagged contributions (terms independent of `ψ`) are rejected.
pub fn eval_linear_in_var(stages: &[Stage], dom: usize) -> Result<(usize, Vec<(usize, usize, Rational)>)> {
    let cod = check_chain(stages, dom)?;
    let mut out = Vec::new();
    for b in 0..dom {
        for ((tag, idx), c) in push_basis(stages, b)? {
            if tag == UNTAGGED {
                return Err(Error::Precondition("composite has a part independent of the variable".into()));
            }
            out.push((tag, b * cod + idx, c));
        }
    }
    out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    Ok((cod, out))
}

/// `(A_1 ⊗ … ⊗ A_k) v` without forming the product.
pub fn kron_apply(factors: &[&LinearMap], v: &SparseVec) -> Result<SparseVec> {
    let stage = Stage::Kron(factors.iter().map(|m| Factor::Map(m)).collect());
    let (dom, _) = stage.dims();
    let mut input = Tagged::new();
    for (i, c) in v {
        if *i >= dom {
            return Err(Error::DimensionMismatch(format!("index {i} outside dimension {dom}")));
        }
        input.insert((UNTAGGED, *i), c.clone());
    }
    let mut out: SparseVec = apply_stage(&stage, input)?.into_iter().map(|((_, i), c)| (i, c)).collect();
    out.sort_by_key(|(i, _)| *i);
    Ok(out)
}

/// Index of a basis tensor after the ρ slot permutation on `dim^9`.
pub fn rho_index(dim: usize, idx: usize) -> usize {
    let mut digits = [0usize; 9];
    let mut r = idx;
    for s in (0..9).rev() {
        digits[s] = r % dim;
        r /= dim;
    }
    RHO.iter().fold(0, |acc, &p| acc * dim + digits[p])
}

/// Sparse permutation matrix of ρ on `dim^9`; intended for small `dim` and tests.
pub fn rho_matrix(dim: usize) -> LinearMap {
    let n = dim.pow(9);
    let images: Vec<Option<usize>> = (0..n).map(|i| Some(rho_index(dim, i))).collect();
    LinearMap::from_basis_images(n, &images)
}

#[cfg(test)]
mod tests {
    use super::super::matrix::rat;
    use super::*;

    #[test]
    fn lazy_kron_matches_materialized() {
        let a = LinearMap::from_i64(2, 2, &[1, 2, 0, -1]).unwrap();
        let b = LinearMap::from_i64(3, 2, &[1, 0, 4, 1, 0, 2]).unwrap();
        let full = a.kron(&b).kron(&a);
        let lazy = eval_pipeline(&[Stage::Kron(vec![Factor::Map(&a), Factor::Map(&b), Factor::Map(&a)])], 8).unwrap();
        assert_eq!(full, lazy);
        let v = vec![(1, rat(2)), (6, rat(-1))];
        assert_eq!(kron_apply(&[&a, &b, &a], &v).unwrap(), full.apply(&v));
    }

    #[test]
    fn rho_is_involution() {
        for i in 0..512 {
            assert_eq!(rho_index(2, rho_index(2, i)), i);
        }
        // slot 1 of the input lands in slot 3 of the output
        assert_eq!(rho_index(2, 1 << 7), 1 << 5);
        let p = rho_matrix(2);
        assert_eq!(p.compose(&p).unwrap(), LinearMap::identity(512));
    }

    #[test]
    fn variable_tags_are_column_major() {
        // ψ ∘ id on K^2 → K^2: E_{r,c} applied to e_c gives e_r
        let (cod, trips) = eval_linear_in_var(&[Stage::var(2, 2)], 2).unwrap();
        assert_eq!(cod, 2);
        for (tag, flat, v) in trips {
            assert_eq!(tag, flat);
            assert_eq!(v, rat(1));
        }
        assert!(eval_pipeline(&[Stage::var(2, 2)], 2).is_err());
    }

    #[test]
    fn dimension_checks() {
        let a = LinearMap::zeros(2, 3);
        assert!(eval_pipeline(&[Stage::map(&a)], 2).is_err());
        assert!(eval_pipeline(&[Stage::map(&a), Stage::map(&a)], 3).is_err());
    }
}
