use num_traits::{One, Zero};

use super::bialgebra::{Coalgebra, TernaryBialgebra};
use super::matrix::{rat, Accumulator, LinearMap, Rational, SparseVec};
use crate::error::{Error, Result};

/// Ternary bracket `[e_i,e_j,e_k] = Σ_l c[i][j][k][l] e_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeLieAlgebra {
    dim: usize,
    c: Vec<Rational>,
}

fn sign_of(p: [usize; 3]) -> i64 {
    let inv = (p[0] > p[1]) as i64 + (p[0] > p[2]) as i64 + (p[1] > p[2]) as i64;
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl ThreeLieAlgebra {
    /// Validates total antisymmetry and the fundamental identity.
    pub fn new(dim: usize, constants: Vec<Rational>) -> Result<Self> {
        let l = Self::new_unchecked(dim, constants)?;
        if let Some([i, j, k]) = l.antisymmetry_violation() {
            return Err(Error::Precondition(format!("bracket is not antisymmetric at ({i},{j},{k})")));
        }
        if let Some(w) = l.fundamental_identity_violation() {
            return Err(Error::Precondition(format!("fundamental identity fails at {w:?}")));
        }
        Ok(l)
    }

    /// Checks only the shape of the structure constants.
    pub fn new_unchecked(dim: usize, constants: Vec<Rational>) -> Result<Self> {
        if constants.len() != dim.pow(4) {
            return Err(Error::DimensionMismatch(format!("{} structure constants for dim {dim}", constants.len())));
        }
        Ok(Self { dim, c: constants })
    }

    pub fn abelian(dim: usize) -> Self {
        Self { dim, c: vec![Rational::zero(); dim.pow(4)] }
    }

    /// The 4-dimensional algebra `[e_i,e_j,e_k] = sign(i,j,k,l) e_l` with the Levi-Civita symbol.
    pub fn levi_civita() -> Self {
        let mut c = vec![Rational::zero(); 256];
        for i in 0..4usize {
            for j in 0..4usize {
                for k in 0..4usize {
                    for l in 0..4usize {
                        let p = [i, j, k, l];
                        let distinct = (0..4).all(|a| (a + 1..4).all(|b| p[a] != p[b]));
                        if distinct {
                            let inv: usize = (0..4).map(|a| (a + 1..4).filter(|&b| p[a] > p[b]).count()).sum();
                            c[((i * 4 + j) * 4 + k) * 4 + l] = rat(if inv % 2 == 0 { 1 } else { -1 });
                        }
                    }
                }
            }
        }
        Self { dim: 4, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.c[((i * self.dim + j) * self.dim + k) * self.dim + l]
    }

    /// Adds `delta` to the coefficient of `e_l` in `[e_i,e_j,e_k]` and to its antisymmetric images,
    /// without validation.
    pub fn perturbed(&self, [i, j, k]: [usize; 3], l: usize, delta: &Rational) -> Self {
        let mut out = self.clone();
        let ijk = [i, j, k];
        for p in PERMS3 {
            let (a, b, c) = (ijk[p[0]], ijk[p[1]], ijk[p[2]]);
            let idx = ((a * self.dim + b) * self.dim + c) * self.dim + l;
            out.c[idx] += delta * rat(sign_of(p));
        }
        out
    }

    pub fn bracket_basis(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let d = self.dim;
        (0..d).filter_map(|l| {
            let v = self.constant(i, j, k, l);
            (!v.is_zero()).then(|| (l, v.clone()))
        }).collect()
    }

    pub fn bracket(&self, a: &SparseVec, b: &SparseVec, c: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, z) in c {
                    let s = x * y * z;
                    for (l, v) in self.bracket_basis(*i, *j, *k) {
                        acc.add(l, &(&s * v));
                    }
                }
            }
        }
        acc.finish()
    }

    pub fn antisymmetry_violation(&self) -> Option<[usize; 3]> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let base = self.bracket_basis(i, j, k);
                    let ijk = [i, j, k];
                    for p in PERMS3 {
                        let other = self.bracket_basis(ijk[p[0]], ijk[p[1]], ijk[p[2]]);
                        let expected: SparseVec = base.iter().map(|(l, v)| (*l, v * rat(sign_of(p)))).collect();
                        if other != expected {
                            return Some([i, j, k]);
                        }
                    }
                }
            }
        }
        None
    }

    /// First basis 5-tuple violating
    /// `[[x1,x2,x3],x4,x5] = [[x1,x4,x5],x2,x3] + [x1,[x2,x4,x5],x3] + [x1,x2,[x3,x4,x5]]`.
    pub fn fundamental_identity_violation(&self) -> Option<[usize; 5]> {
        let d = self.dim;
        let e = |i: usize| vec![(i, Rational::one())];
        for idx in 0..d.pow(5) {
            let mut x = [0usize; 5];
            let mut r = idx;
            for s in (0..5).rev() {
                x[s] = r % d;
                r /= d;
            }
            let [x1, x2, x3, x4, x5] = x.map(e);
            let lhs = self.bracket(&self.bracket(&x1, &x2, &x3), &x4, &x5);
            let mut acc = Accumulator::new();
            for term in [
                self.bracket(&self.bracket(&x1, &x4, &x5), &x2, &x3),
                self.bracket(&x1, &self.bracket(&x2, &x4, &x5), &x3),
                self.bracket(&x1, &x2, &self.bracket(&x3, &x4, &x5)),
            ] {
                for (l, v) in &term {
                    acc.add(*l, v);
                }
            }
            if lhs != acc.finish() {
                return Some(x);
            }
        }
        None
    }
}

/// `N = K·1 ⊕ L` (basis index 0 is `1`) with `T(1⊗1⊗1) = 1`, `T(x⊗1⊗1) = x`,
/// `T(x⊗y⊗z) = [x,y,z]`, zero on other basis triples; `Δ(1) = 1⊗1⊗1`,
/// `Δ(x) = x⊗1⊗1 + 1⊗x⊗1 + 1⊗1⊗x`; `ε(1) = 1`, `ε(x) = 0`.
pub fn three_lie_to_ternary(l: &ThreeLieAlgebra) -> Result<TernaryBialgebra> {
    if let Some(w) = l.fundamental_identity_violation() {
        return Err(Error::Precondition(format!("fundamental identity fails at {w:?}")));
    }
    Ok(three_lie_to_ternary_unchecked(l))
}

pub fn three_lie_to_ternary_unchecked(l: &ThreeLieAlgebra) -> TernaryBialgebra {
    let n = l.dim();
    let d = n + 1;
    let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
    let mut columns: Vec<SparseVec> = vec![Vec::new(); d * d * d];
    columns[idx(0, 0, 0)] = vec![(0, Rational::one())];
    for i in 1..d {
        columns[idx(i, 0, 0)] = vec![(i, Rational::one())];
        for j in 1..d {
            for k in 1..d {
                columns[idx(i, j, k)] = l.bracket_basis(i - 1, j - 1, k - 1).into_iter().map(|(m, v)| (m + 1, v)).collect();
            }
        }
    }
    let t = LinearMap::from_columns(d, columns).expect("sorted columns");
    let mut dcols: Vec<SparseVec> = vec![vec![(idx(0, 0, 0), Rational::one())]];
    for i in 1..d {
        let mut col = vec![(idx(i, 0, 0), Rational::one()), (idx(0, i, 0), Rational::one()), (idx(0, 0, i), Rational::one())];
        col.sort_by_key(|(r, _)| *r);
        dcols.push(col);
    }
    let delta = LinearMap::from_columns(d * d * d, dcols).expect("sorted columns");
    let eps = LinearMap::from_basis_images(1, &(0..d).map(|i| (i == 0).then_some(0)).collect::<Vec<_>>());
    TernaryBialgebra::new(t, Coalgebra::new(delta, eps).expect("shapes agree"), None).expect("shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levi_civita_is_a_three_lie_algebra() {
        let l = ThreeLieAlgebra::levi_civita();
        assert_eq!(l.antisymmetry_violation(), None);
        assert_eq!(l.fundamental_identity_violation(), None);
        assert_eq!(l.constant(0, 1, 2, 3), &rat(1));
        assert_eq!(l.constant(1, 0, 2, 3), &rat(-1));
        assert!(ThreeLieAlgebra::new(4, l.c.clone()).is_ok());
    }

    #[test]
    fn abelian_construction_passes() {
        let b = three_lie_to_ternary(&ThreeLieAlgebra::abelian(3)).unwrap();
        assert!(b.is_distributive());
        assert!(b.is_compatible());
        assert!(b.coalgebra().coassociative() && b.coalgebra().counital());
    }

    #[test]
    fn perturbation_keeps_antisymmetry() {
        let p = ThreeLieAlgebra::levi_civita().perturbed([0, 1, 2], 0, &rat(1));
        assert_eq!(p.antisymmetry_violation(), None);
        assert!(p.fundamental_identity_violation().is_some());
        assert!(three_lie_to_ternary(&p).is_err());
        assert!(ThreeLieAlgebra::new(4, p.c.clone()).is_err());
    }

    #[test]
    fn non_antisymmetric_rejected() {
        let mut c = vec![Rational::zero(); 81];
        c[((0 * 3 + 1) * 3 + 2) * 3] = rat(1);
        assert!(ThreeLieAlgebra::new(3, c).is_err());
    }

    #[test]
    fn cross_product_style_bracket() {
        // [e1,e2,e3] = e1 with antisymmetrizations: the only nonzero bracket is on {e1,e2,e3}
        let p = ThreeLieAlgebra::abelian(3).perturbed([0, 1, 2], 0, &rat(1));
        let fi = p.fundamental_identity_violation();
        // the verdict of the validator decides acceptance
        assert_eq!(three_lie_to_ternary(&p).is_ok(), fi.is_none());
        if fi.is_none() {
            assert!(three_lie_to_ternary(&p).unwrap().is_distributive());
        }
    }
}
