//! The low-degree complex `C¹ → C² → C³` of a ternary bialgebra `(A, T, Δ)`.
//!
//! `C¹ = Hom(A,A)`, `C² = Hom(A⊗³,A) ⊕ Hom(A,A⊗³)`,
//! `C³ = Hom(A⊗⁵,A) ⊕ Hom(A⊗³,A⊗³) ⊕ Hom(A,A⊗⁵)`. Each summand is flattened column-major
//! (`flat = col*rows + row`) and the summands are concatenated in the order listed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::bialgebra::TernaryBialgebra;
use crate::linear::matrix::{rat, Accumulator, LinearMap, Rational, SparseVec};
use crate::linear::solve::rank;
use crate::linear::tensor::{eval_linear_in_var, eval_pipeline, Factor, Stage};

/// Largest dimension for which `D²` (`3d⁶ × 2d⁴`) is assembled.
pub const MAX_COHOMOLOGY_DIM: usize = 4;

/// Coordinates of the cochain spaces of a `d`-dimensional bialgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainLayout {
    pub dim: usize,
}

/// Position of a coordinate inside a cochain space: summand, row and column of that Hom block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainCoord {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

impl CochainLayout {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }

    /// `(rows, cols)` of each summand of `C^degree`.
    pub fn blocks(&self, degree: usize) -> Vec<(usize, usize)> {
        let d = self.dim;
        match degree {
            1 => vec![(d, d)],
            2 => vec![(d, d.pow(3)), (d.pow(3), d)],
            3 => vec![(d, d.pow(5)), (d.pow(3), d.pow(3)), (d.pow(5), d)],
            _ => Vec::new(),
        }
    }

    pub fn offsets(&self, degree: usize) -> Vec<usize> {
        let mut acc = 0;
        self.blocks(degree)
            .iter()
            .map(|(r, c)| {
                let o = acc;
                acc += r * c;
                o
            })
            .collect()
    }

    pub fn dim_c(&self, degree: usize) -> usize {
        self.blocks(degree).iter().map(|(r, c)| r * c).sum()
    }

    pub fn flat_index(&self, degree: usize, coord: CochainCoord) -> Option<usize> {
        let blocks = self.blocks(degree);
        let (rows, cols) = *blocks.get(coord.block)?;
        if coord.row >= rows || coord.col >= cols {
            return None;
        }
        Some(self.offsets(degree)[coord.block] + coord.col * rows + coord.row)
    }

    pub fn coord(&self, degree: usize, flat: usize) -> Option<CochainCoord> {
        let blocks = self.blocks(degree);
        let mut rest = flat;
        for (block, (rows, cols)) in blocks.into_iter().enumerate() {
            if rest < rows * cols {
                return Some(CochainCoord { block, row: rest % rows, col: rest / rows });
            }
            rest -= rows * cols;
        }
        None
    }

    /// Concatenates flattened maps, one per summand of `C^degree`.
    pub fn pack(&self, degree: usize, parts: &[&LinearMap]) -> Result<SparseVec> {
        let blocks = self.blocks(degree);
        if parts.len() != blocks.len() {
            return Err(Error::DimensionMismatch(format!("C^{degree} has {} summands", blocks.len())));
        }
        let mut out = Vec::new();
        for ((m, (rows, cols)), off) in parts.iter().zip(&blocks).zip(self.offsets(degree)) {
            if m.rows() != *rows || m.cols() != *cols {
                return Err(Error::DimensionMismatch(format!(
                    "summand should be {rows}x{cols}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            out.extend(m.flatten().into_iter().map(|(i, v)| (i + off, v)));
        }
        Ok(out)
    }

    /// Splits a vector of `C^degree` into its summands.
    pub fn unpack(&self, degree: usize, v: &SparseVec) -> Vec<LinearMap> {
        let blocks = self.blocks(degree);
        let offsets = self.offsets(degree);
        blocks
            .iter()
            .zip(offsets)
            .map(|((rows, cols), off)| {
                let part: SparseVec =
                    v.iter().filter(|(i, _)| *i >= off && *i < off + rows * cols).map(|(i, x)| (i - off, x.clone())).collect();
                LinearMap::from_flat_sparse(*rows, *cols, &part)
            })
            .collect()
    }
}

/// A summand of a composite that is linear in one cochain variable.
struct Term<'a> {
    sign: i64,
    /// Which summand of the source space carries the variable.
    source: usize,
    stages: Vec<Stage<'a>>,
}

fn term<'a>(sign: i64, source: usize, stages: Vec<Stage<'a>>) -> Term<'a> {
    Term { sign, source, stages }
}

/// Assembles the matrix of `Σ sign·term` from per-target-block term lists.
fn assemble(layout: &CochainLayout, src: usize, targets: Vec<(usize, Vec<Term>)>) -> Result<LinearMap> {
    let src_offsets = layout.offsets(src);
    let tgt_blocks = layout.blocks(src + 1);
    let tgt_offsets = layout.offsets(src + 1);
    let jobs: Vec<(usize, &Term)> = targets.iter().flat_map(|(b, ts)| ts.iter().map(move |t| (*b, t))).collect();
    let pieces: Vec<Vec<(usize, usize, Rational)>> = jobs
        .par_iter()
        .map(|(b, t)| {
            let dom = tgt_blocks[*b].1;
            let (cod, trips) = eval_linear_in_var(&t.stages, dom)?;
            debug_assert_eq!(cod, tgt_blocks[*b].0);
            let s = rat(t.sign);
            Ok(trips.into_iter().map(|(tag, flat, v)| (src_offsets[t.source] + tag, tgt_offsets[*b] + flat, v * &s)).collect())
        })
        .collect::<Result<_>>()?;
    let mut cols: Vec<Accumulator> = (0..layout.dim_c(src)).map(|_| Accumulator::new()).collect();
    for (c, r, v) in pieces.into_iter().flatten() {
        cols[c].add(r, &v);
    }
    LinearMap::from_columns(layout.dim_c(src + 1), cols.into_iter().map(Accumulator::finish).collect())
}

fn check_dim(b: &TernaryBialgebra) -> Result<usize> {
    let d = b.dim();
    if d > MAX_COHOMOLOGY_DIM {
        return Err(Error::ResourceLimit(format!("cohomology is assembled for dim ≤ {MAX_COHOMOLOGY_DIM}, got {d}")));
    }
    Ok(d)
}

/// `D¹ f = (δ¹ₘ f, −δ¹꜀ f)` as a `2d⁴ × d²` matrix.
pub fn build_d1(b: &TernaryBialgebra) -> Result<LinearMap> {
    let d = check_dim(b)?;
    let layout = CochainLayout::new(d);
    let (t, dl) = (b.t(), b.delta());
    let (i, f) = (Factor::Id(d), Factor::Var { rows: d, cols: d });
    let dm = vec![
        term(1, 0, vec![Stage::Kron(vec![f, i, i]), Stage::map(t)]),
        term(1, 0, vec![Stage::Kron(vec![i, f, i]), Stage::map(t)]),
        term(1, 0, vec![Stage::Kron(vec![i, i, f]), Stage::map(t)]),
        term(-1, 0, vec![Stage::map(t), Stage::Kron(vec![f])]),
    ];
    let neg_dc = vec![
        term(-1, 0, vec![Stage::map(dl), Stage::Kron(vec![f, i, i])]),
        term(-1, 0, vec![Stage::map(dl), Stage::Kron(vec![i, f, i])]),
        term(-1, 0, vec![Stage::map(dl), Stage::Kron(vec![i, i, f])]),
        term(1, 0, vec![Stage::Kron(vec![f]), Stage::map(dl)]),
    ];
    assemble(&layout, 1, vec![(0, dm), (1, neg_dc)])
}

/// `D²(ψ₁,ψ₂) = (d²'¹, d²'², d²'³)` as a `3d⁶ × 2d⁴` matrix.
pub fn build_d2(b: &TernaryBialgebra) -> Result<LinearMap> {
    let d = check_dim(b)?;
    let layout = CochainLayout::new(d);
    let (t, dl) = (b.t(), b.delta());
    let (i, tm, dm) = (Factor::Id(d), Factor::Map(t), Factor::Map(dl));
    let p1 = Factor::Var { rows: d, cols: d.pow(3) };
    let p2 = Factor::Var { rows: d.pow(3), cols: d };
    let r = || vec![Stage::Kron(vec![i, i, i, dm, dm]), Stage::rho(d)];
    let d21 = vec![
        term(1, 0, vec![Stage::Kron(vec![tm, i, i]), Stage::Kron(vec![p1])]),
        term(1, 0, vec![Stage::Kron(vec![p1, i, i]), Stage::map(t)]),
        term(-1, 0, [r(), vec![Stage::Kron(vec![tm, tm, tm]), Stage::Kron(vec![p1])]].concat()),
        term(-1, 0, [r(), vec![Stage::Kron(vec![p1, tm, tm]), Stage::map(t)]].concat()),
        term(-1, 0, [r(), vec![Stage::Kron(vec![tm, p1, tm]), Stage::map(t)]].concat()),
        term(-1, 0, [r(), vec![Stage::Kron(vec![tm, tm, p1]), Stage::map(t)]].concat()),
        term(-1, 1, vec![Stage::Kron(vec![i, i, i, p2, dm]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm]), Stage::map(t)]),
        term(-1, 1, vec![Stage::Kron(vec![i, i, i, dm, p2]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm]), Stage::map(t)]),
    ];
    let ddd = || vec![Stage::Kron(vec![dm, dm, dm]), Stage::rho(d)];
    let d22 = vec![
        term(1, 1, vec![Stage::map(t), Stage::Kron(vec![p2])]),
        term(1, 0, vec![Stage::Kron(vec![p1]), Stage::map(dl)]),
        term(-1, 0, [ddd(), vec![Stage::Kron(vec![p1, tm, tm])]].concat()),
        term(-1, 0, [ddd(), vec![Stage::Kron(vec![tm, p1, tm])]].concat()),
        term(-1, 0, [ddd(), vec![Stage::Kron(vec![tm, tm, p1])]].concat()),
        term(-1, 1, vec![Stage::Kron(vec![p2, dm, dm]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm])]),
        term(-1, 1, vec![Stage::Kron(vec![dm, p2, dm]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm])]),
        term(-1, 1, vec![Stage::Kron(vec![dm, dm, p2]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm])]),
    ];
    let d23 = vec![
        term(1, 1, vec![Stage::map(dl), Stage::Kron(vec![p2, i, i])]),
        term(1, 1, vec![Stage::Kron(vec![p2]), Stage::Kron(vec![dm, i, i])]),
        term(-1, 1, vec![Stage::map(dl), Stage::Kron(vec![i, i, p2])]),
        term(-1, 1, vec![Stage::Kron(vec![p2]), Stage::Kron(vec![i, i, dm])]),
    ];
    assemble(&layout, 2, vec![(0, d21), (1, d22), (2, d23)])
}

fn sum(terms: &[(i64, LinearMap)]) -> Result<LinearMap> {
    let mut it = terms.iter();
    let (s0, m0) = it.next().expect("nonempty sum");
    let mut acc = m0.scale(&rat(*s0));
    for (s, m) in it {
        acc = acc.add(&m.scale(&rat(*s)))?;
    }
    Ok(acc)
}

/// `δ¹ₘ f = T(f⊗id⊗id) + T(id⊗f⊗id) + T(id⊗id⊗f) − f∘T`, computed directly.
pub fn delta_m(b: &TernaryBialgebra, f: &LinearMap) -> Result<LinearMap> {
    let d = b.dim();
    let t = b.t();
    let (i, fm) = (Factor::Id(d), Factor::Map(f));
    let mut terms = Vec::new();
    for fs in [vec![fm, i, i], vec![i, fm, i], vec![i, i, fm]] {
        terms.push((1, eval_pipeline(&[Stage::Kron(fs), Stage::map(t)], d.pow(3))?));
    }
    terms.push((-1, f.compose(t)?));
    sum(&terms)
}

/// `δ¹꜀ f = (f⊗id⊗id)Δ + (id⊗f⊗id)Δ + (id⊗id⊗f)Δ − Δ∘f`, computed directly.
pub fn delta_c(b: &TernaryBialgebra, f: &LinearMap) -> Result<LinearMap> {
    let d = b.dim();
    let dl = b.delta();
    let (i, fm) = (Factor::Id(d), Factor::Map(f));
    let mut terms = Vec::new();
    for fs in [vec![fm, i, i], vec![i, fm, i], vec![i, i, fm]] {
        terms.push((1, eval_pipeline(&[Stage::map(dl), Stage::Kron(fs)], d)?));
    }
    terms.push((-1, dl.compose(f)?));
    sum(&terms)
}

/// `D¹ f = (δ¹ₘ f, −δ¹꜀ f)` on a concrete `f`.
pub fn apply_d1(b: &TernaryBialgebra, f: &LinearMap) -> Result<(LinearMap, LinearMap)> {
    Ok((delta_m(b, f)?, delta_c(b, f)?.neg()))
}

/// `(d²'¹, d²'², d²'³)` on concrete `(ψ₁, ψ₂)`, evaluated term by term.
pub fn apply_d2(b: &TernaryBialgebra, psi1: &LinearMap, psi2: &LinearMap) -> Result<[LinearMap; 3]> {
    let d = b.dim();
    let (t, dl) = (b.t(), b.delta());
    let (i, tm, dm, p1, p2) = (Factor::Id(d), Factor::Map(t), Factor::Map(dl), Factor::Map(psi1), Factor::Map(psi2));
    let d5 = d.pow(5);
    let d3 = d.pow(3);
    let e = |stages: &[Stage], dom: usize| eval_pipeline(stages, dom);
    let r = [Stage::Kron(vec![i, i, i, dm, dm]), Stage::rho(d)];
    let d21 = sum(&[
        (1, e(&[Stage::Kron(vec![tm, i, i]), Stage::map(psi1)], d5)?),
        (1, e(&[Stage::Kron(vec![p1, i, i]), Stage::map(t)], d5)?),
        (-1, e(&[r[0].clone(), r[1].clone(), Stage::Kron(vec![tm, tm, tm]), Stage::map(psi1)], d5)?),
        (-1, e(&[r[0].clone(), r[1].clone(), Stage::Kron(vec![p1, tm, tm]), Stage::map(t)], d5)?),
        (-1, e(&[r[0].clone(), r[1].clone(), Stage::Kron(vec![tm, p1, tm]), Stage::map(t)], d5)?),
        (-1, e(&[r[0].clone(), r[1].clone(), Stage::Kron(vec![tm, tm, p1]), Stage::map(t)], d5)?),
        (-1, e(&[Stage::Kron(vec![i, i, i, p2, dm]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm]), Stage::map(t)], d5)?),
        (-1, e(&[Stage::Kron(vec![i, i, i, dm, p2]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm]), Stage::map(t)], d5)?),
    ])?;
    let ddd = [Stage::Kron(vec![dm, dm, dm]), Stage::rho(d)];
    let d22 = sum(&[
        (1, psi2.compose(t)?),
        (1, dl.compose(psi1)?),
        (-1, e(&[ddd[0].clone(), ddd[1].clone(), Stage::Kron(vec![p1, tm, tm])], d3)?),
        (-1, e(&[ddd[0].clone(), ddd[1].clone(), Stage::Kron(vec![tm, p1, tm])], d3)?),
        (-1, e(&[ddd[0].clone(), ddd[1].clone(), Stage::Kron(vec![tm, tm, p1])], d3)?),
        (-1, e(&[Stage::Kron(vec![p2, dm, dm]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm])], d3)?),
        (-1, e(&[Stage::Kron(vec![dm, p2, dm]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm])], d3)?),
        (-1, e(&[Stage::Kron(vec![dm, dm, p2]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm])], d3)?),
    ])?;
    let d23 = sum(&[
        (1, e(&[Stage::map(dl), Stage::Kron(vec![p2, i, i])], d)?),
        (1, e(&[Stage::map(psi2), Stage::Kron(vec![dm, i, i])], d)?),
        (-1, e(&[Stage::map(dl), Stage::Kron(vec![i, i, p2])], d)?),
        (-1, e(&[Stage::map(psi2), Stage::Kron(vec![i, i, dm])], d)?),
    ])?;
    Ok([d21, d22, d23])
}

/// Both differentials of a bialgebra together with `D²∘D¹`.
#[derive(Clone, Debug)]
pub struct DifferentialPair {
    pub layout: CochainLayout,
    pub d1: LinearMap,
    pub d2: LinearMap,
    /// `D²∘D¹`; zero exactly when the chain condition holds.
    pub residual: LinearMap,
}

impl DifferentialPair {
    pub fn new(b: &TernaryBialgebra) -> Result<Self> {
        let d1 = build_d1(b)?;
        let d2 = build_d2(b)?;
        let residual = d2.compose(&d1)?;
        Ok(Self { layout: CochainLayout::new(b.dim()), d1, d2, residual })
    }

    pub fn chain_condition_holds(&self) -> bool {
        self.residual.is_zero()
    }

    /// First column of `D²∘D¹` that is nonzero.
    pub fn chain_witness(&self) -> Option<usize> {
        (0..self.residual.cols()).find(|&c| !self.residual.column(c).is_empty())
    }

    /// The `δ¹ₘ` rows of `D¹` (the first `d⁴` rows).
    pub fn delta_m_matrix(&self) -> LinearMap {
        row_block(&self.d1, 0, self.layout.dim.pow(4))
    }

    /// `δ¹꜀` as its own matrix (the second `d⁴` rows of `D¹`, negated back).
    pub fn delta_c_matrix(&self) -> LinearMap {
        let n = self.layout.dim.pow(4);
        row_block(&self.d1, n, 2 * n).neg()
    }
}

/// Rows `start..end` of `m`.
pub fn row_block(m: &LinearMap, start: usize, end: usize) -> LinearMap {
    let cols = m.columns().iter().map(|c| c.iter().filter(|(r, _)| *r >= start && *r < end).map(|(r, v)| (r - start, v.clone())).collect()).collect();
    LinearMap::from_columns(end - start, cols).expect("rows stay sorted")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub dim: usize,
    pub dim_c1: usize,
    pub dim_c2: usize,
    pub dim_c3: usize,
    pub dim_z1_m: usize,
    pub dim_z1_c: usize,
    /// `dim Z¹ₘ + dim Z¹꜀`.
    pub dim_h1: usize,
    pub rank_d1: usize,
    pub dim_ker_d2: usize,
    pub rank_d2: usize,
    pub dim_h2: usize,
}

/// Exact dimensions from fraction-free ranks; fails with the first column of `D²∘D¹` that is
/// nonzero when the chain condition does not hold.
pub fn cohomology_report(b: &TernaryBialgebra) -> Result<CohomologyReport> {
    let pair = DifferentialPair::new(b)?;
    report_from_pair(&pair)
}

pub fn report_from_pair(pair: &DifferentialPair) -> Result<CohomologyReport> {
    if let Some(column) = pair.chain_witness() {
        return Err(Error::ChainCondition { column });
    }
    let layout = pair.layout;
    let (c1, c2, c3) = (layout.dim_c(1), layout.dim_c(2), layout.dim_c(3));
    let dim_z1_m = c1 - rank(&pair.delta_m_matrix());
    let dim_z1_c = c1 - rank(&pair.delta_c_matrix());
    let rank_d1 = rank(&pair.d1);
    let rank_d2 = rank(&pair.d2);
    let dim_ker_d2 = c2 - rank_d2;
    Ok(CohomologyReport {
        dim: layout.dim,
        dim_c1: c1,
        dim_c2: c2,
        dim_c3: c3,
        dim_z1_m,
        dim_z1_c,
        dim_h1: dim_z1_m + dim_z1_c,
        rank_d1,
        dim_ker_d2,
        rank_d2,
        dim_h2: dim_ker_d2 - rank_d1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::heap;
    use crate::group::FiniteGroup;
    use crate::linear::bialgebra::{linearize_set, Coalgebra};
    use crate::linear::solve::nullspace;
    use crate::table::TernaryTable;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scalar_bialgebra(t: i64, delta: i64) -> TernaryBialgebra {
        let t = LinearMap::from_i64(1, 1, &[t]).unwrap();
        let dl = LinearMap::from_i64(1, 1, &[delta]).unwrap();
        TernaryBialgebra::new(t, Coalgebra::new(dl, LinearMap::identity(1)).unwrap(), None).unwrap()
    }

    fn random_map(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> LinearMap {
        let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
        LinearMap::from_i64(rows, cols, &data).unwrap()
    }

    #[test]
    fn layout_round_trip() {
        let l = CochainLayout::new(2);
        assert_eq!((l.dim_c(1), l.dim_c(2), l.dim_c(3)), (4, 32, 192));
        for deg in 1..=3 {
            for flat in 0..l.dim_c(deg) {
                let c = l.coord(deg, flat).unwrap();
                assert_eq!(l.flat_index(deg, c), Some(flat));
            }
            assert_eq!(l.coord(deg, l.dim_c(deg)), None);
        }
    }

    #[test]
    fn one_dimensional_example() {
        let b = scalar_bialgebra(1, 1);
        let d1 = build_d1(&b).unwrap();
        assert_eq!(d1, LinearMap::from_i64(2, 1, &[2, -2]).unwrap());
        let d2 = build_d2(&b).unwrap();
        assert_eq!(d2, LinearMap::from_i64(3, 2, &[-2, -2, -2, -2, 0, 0]).unwrap());
        let r = cohomology_report(&b).unwrap();
        assert_eq!((r.dim_c2, r.dim_c3), (2, 3));
        assert_eq!((r.rank_d1, r.rank_d2, r.dim_ker_d2, r.dim_h2), (1, 1, 1, 0));
    }

    #[test]
    fn zero_bialgebra_has_full_h2() {
        let z = TernaryBialgebra::new(
            LinearMap::zeros(2, 8),
            Coalgebra::new(LinearMap::zeros(8, 2), LinearMap::zeros(1, 2)).unwrap(),
            None,
        )
        .unwrap();
        let r = cohomology_report(&z).unwrap();
        assert_eq!(r.rank_d1, 0);
        assert_eq!(r.rank_d2, 0);
        assert_eq!(r.dim_h2, 32);
        assert_eq!(r.dim_h1, 8);
    }

    #[test]
    fn matrices_agree_with_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = linearize_set(&heap(&FiniteGroup::cyclic(2))).unwrap();
        let l = CochainLayout::new(2);
        let d1 = build_d1(&b).unwrap();
        let d2 = build_d2(&b).unwrap();
        for _ in 0..5 {
            let f = random_map(&mut rng, 2, 2);
            let (a, c) = apply_d1(&b, &f).unwrap();
            assert_eq!(d1.apply(&f.flatten()), l.pack(2, &[&a, &c]).unwrap());
            let p1 = random_map(&mut rng, 2, 8);
            let p2 = random_map(&mut rng, 8, 2);
            let [x, y, z] = apply_d2(&b, &p1, &p2).unwrap();
            let v = l.pack(2, &[&p1, &p2]).unwrap();
            assert_eq!(d2.apply(&v), l.pack(3, &[&x, &y, &z]).unwrap());
        }
    }

    #[test]
    fn identity_cochain_on_projection() {
        let b = linearize_set(&TernaryTable::projection(2)).unwrap();
        let (dm, _) = apply_d1(&b, &LinearMap::identity(2)).unwrap();
        assert_eq!(dm, b.t().scale(&rat(2)));
    }

    #[test]
    fn chain_condition_on_order_two() {
        for t in [heap(&FiniteGroup::cyclic(2)), TernaryTable::projection(2)] {
            let b = linearize_set(&t).unwrap();
            let pair = DifferentialPair::new(&b).unwrap();
            assert!(pair.chain_condition_holds());
            let r = report_from_pair(&pair).unwrap();
            assert_eq!(r.rank_d1 + nullspace(&pair.d1).len(), r.dim_c1);
            assert!(r.dim_h2 <= r.dim_c2);
        }
    }

    #[test]
    fn last_block_ignores_psi1() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = linearize_set(&heap(&FiniteGroup::cyclic(2))).unwrap();
        let p1 = random_map(&mut rng, 2, 8);
        let [_, _, z] = apply_d2(&b, &p1, &LinearMap::zeros(8, 2)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn report_is_invariant_under_relabeling() {
        let t = heap(&FiniteGroup::cyclic(3));
        let p = crate::perm::Permutation::new(vec![2, 0, 1]).unwrap();
        let u = t.relabel(&p).unwrap();
        let a = cohomology_report(&linearize_set(&t).unwrap()).unwrap();
        let b = cohomology_report(&linearize_set(&u).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_limit() {
        let b = linearize_set(&TernaryTable::projection(5)).unwrap();
        assert!(matches!(build_d2(&b), Err(Error::ResourceLimit(_))));
    }
}
