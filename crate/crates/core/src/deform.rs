//! One-parameter formal deformations `T_t = T + Σ tⁱ Tᵢ`, `Δ_t = Δ + Σ tⁱ Δᵢ`, truncated mod `t^{N+1}`.
//!
//! Coefficients of products of series are computed by convolution over all index compositions,
//! independently of the matrices assembled in [`crate::cohomology`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{build_d1, CochainLayout};
use crate::error::{Error, Result};
use crate::linear::bialgebra::TernaryBialgebra;
use crate::linear::matrix::{LinearMap, SparseVec};
use crate::linear::solve::solve;
use crate::linear::tensor::{eval_pipeline, Factor, Stage};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: TernaryBialgebra,
    t_terms: Vec<LinearMap>,
    delta_terms: Vec<LinearMap>,
}

impl TruncatedDeformation {
    /// `t_terms[i-1] = Tᵢ` and `delta_terms[i-1] = Δᵢ` for `i = 1..=N`.
    pub fn new(base: TernaryBialgebra, t_terms: Vec<LinearMap>, delta_terms: Vec<LinearMap>) -> Result<Self> {
        let d = base.dim();
        if t_terms.is_empty() || t_terms.len() != delta_terms.len() {
            return Err(Error::Precondition(format!(
                "need N ≥ 1 terms of each kind, got {} and {}",
                t_terms.len(),
                delta_terms.len()
            )));
        }
        for m in &t_terms {
            if m.rows() != d || m.cols() != d.pow(3) {
                return Err(Error::DimensionMismatch(format!("T term is {}x{}", m.rows(), m.cols())));
            }
        }
        for m in &delta_terms {
            if m.rows() != d.pow(3) || m.cols() != d {
                return Err(Error::DimensionMismatch(format!("Δ term is {}x{}", m.rows(), m.cols())));
            }
        }
        Ok(Self { base, t_terms, delta_terms })
    }

    /// Deforms only the operation; every `Δᵢ` is zero.
    pub fn operation_only(base: TernaryBialgebra, t_terms: Vec<LinearMap>) -> Result<Self> {
        let d = base.dim();
        let zeros = vec![LinearMap::zeros(d.pow(3), d); t_terms.len()];
        Self::new(base, t_terms, zeros)
    }

    /// The undeformed series to order `n`.
    pub fn trivial(base: TernaryBialgebra, n: usize) -> Result<Self> {
        let d = base.dim();
        Self::operation_only(base, vec![LinearMap::zeros(d, d.pow(3)); n])
    }

    pub fn base(&self) -> &TernaryBialgebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.t_terms.len()
    }

    /// `Tᵢ`, with `T₀ = T`.
    pub fn t(&self, i: usize) -> &LinearMap {
        if i == 0 {
            self.base.t()
        } else {
            &self.t_terms[i - 1]
        }
    }

    /// `Δᵢ`, with `Δ₀ = Δ`.
    pub fn delta(&self, i: usize) -> &LinearMap {
        if i == 0 {
            self.base.delta()
        } else {
            &self.delta_terms[i - 1]
        }
    }

    pub fn t_terms(&self) -> &[LinearMap] {
        &self.t_terms
    }

    pub fn delta_terms(&self) -> &[LinearMap] {
        &self.delta_terms
    }

    /// Smallest `p ≥ 1` with `T_p ≠ 0` or `Δ_p ≠ 0`.
    pub fn first_nonzero(&self) -> Option<usize> {
        (1..=self.order()).find(|&i| !self.t(i).is_zero() || !self.delta(i).is_zero())
    }
}

/// `Φ_t = id + Σ tⁱ Φᵢ` mod `t^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalIsomorphism {
    dim: usize,
    phi_terms: Vec<LinearMap>,
}

impl FormalIsomorphism {
    pub fn new(dim: usize, phi_terms: Vec<LinearMap>) -> Result<Self> {
        if phi_terms.is_empty() {
            return Err(Error::Precondition("a formal isomorphism needs N ≥ 1".into()));
        }
        if let Some(m) = phi_terms.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch(format!("Φ term is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
        }
        Ok(Self { dim, phi_terms })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        Self { dim, phi_terms: vec![LinearMap::zeros(dim, dim); order.max(1)] }
    }

    /// `id + t^p g`, truncated at `order`.
    pub fn monomial(order: usize, p: usize, g: LinearMap) -> Result<Self> {
        let dim = g.rows();
        if p == 0 || p > order {
            return Err(Error::Precondition(format!("power {p} outside 1..={order}")));
        }
        let mut terms = vec![LinearMap::zeros(dim, dim); order];
        terms[p - 1] = g;
        Self::new(dim, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.phi_terms.len()
    }

    pub fn phi_terms(&self) -> &[LinearMap] {
        &self.phi_terms
    }

    fn series(&self) -> Vec<LinearMap> {
        let mut s = vec![LinearMap::identity(self.dim)];
        s.extend(self.phi_terms.iter().cloned());
        s
    }

    /// `self ∘ other` as series.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() || self.dim != other.dim {
            return Err(Error::Precondition("isomorphisms of different order or dimension".into()));
        }
        let (a, b) = (self.series(), other.series());
        let terms = (1..=self.order())
            .map(|k| {
                let mut acc = LinearMap::zeros(self.dim, self.dim);
                for i in 0..=k {
                    acc = acc.add(&a[i].compose(&b[k - i])?)?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Self::new(self.dim, terms)
    }

    /// Series inverse: `Ψ₀ = id`, `Ψₖ = −Σ_{i=1..k} Φᵢ Ψ_{k−i}`.
    pub fn inverse(&self) -> Self {
        let phi = self.series();
        let mut psi = vec![LinearMap::identity(self.dim)];
        for k in 1..=self.order() {
            let mut acc = LinearMap::zeros(self.dim, self.dim);
            for i in 1..=k {
                acc = acc.sub(&phi[i].compose(&psi[k - i]).expect("square")).expect("square");
            }
            psi.push(acc);
        }
        psi.remove(0);
        Self { dim: self.dim, phi_terms: psi }
    }
}

/// Coefficients of the three deformation equations at one power of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionTriple {
    /// Distributivity defect, `A⊗⁵ → A`.
    pub phi1: LinearMap,
    /// Compatibility defect, `A⊗³ → A⊗³`.
    pub phi2: LinearMap,
    /// Coassociativity defect, `A → A⊗⁵`.
    pub phi3: LinearMap,
}

impl ObstructionTriple {
    pub fn is_zero(&self) -> bool {
        self.phi1.is_zero() && self.phi2.is_zero() && self.phi3.is_zero()
    }

    /// Names of the nonzero components.
    pub fn failing_blocks(&self) -> Vec<&'static str> {
        [("phi1", &self.phi1), ("phi2", &self.phi2), ("phi3", &self.phi3)]
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    /// The triple as a vector of `C³`.
    pub fn pack(&self) -> SparseVec {
        let layout = CochainLayout::new(self.phi1.rows());
        layout.pack(3, &[&self.phi1, &self.phi2, &self.phi3]).expect("shapes fixed by construction")
    }
}

/// All `m`-tuples of nonnegative integers summing to `k`.
fn compositions(k: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![k]];
    }
    (0..=k)
        .flat_map(|first| {
            compositions(k - first, m - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `Σ` over compositions of `k` into `parts` indices of the maps produced by `build`,
/// skipping any composition that selects a zero term.
fn convolve<F>(k: usize, parts: usize, rows: usize, cols: usize, is_zero: impl Fn(usize, usize) -> bool + Sync, build: F) -> Result<LinearMap>
where
    F: Fn(&[usize]) -> Result<LinearMap> + Sync,
{
    let pieces: Vec<LinearMap> = compositions(k, parts)
        .into_par_iter()
        .filter(|c| !c.iter().enumerate().any(|(slot, &i)| is_zero(slot, i)))
        .map(|c| build(&c))
        .collect::<Result<_>>()?;
    pieces.iter().try_fold(LinearMap::zeros(rows, cols), |acc, m| acc.add(m))
}

/// Coefficient of `t^k` in the three deformation equations:
/// `T_t(T_t⊗id⊗id) − T_t(T_t⊗T_t⊗T_t)P_ρ(id⊗id⊗id⊗Δ_t⊗Δ_t)`,
/// `Δ_t T_t − (T_t⊗T_t⊗T_t)P_ρ(Δ_t⊗Δ_t⊗Δ_t)` and `(Δ_t⊗id⊗id)Δ_t − (id⊗id⊗Δ_t)Δ_t`.
pub fn deformation_defect(def: &TruncatedDeformation, k: usize) -> Result<ObstructionTriple> {
    if k == 0 || k > def.order() {
        return Err(Error::Precondition(format!("order {k} outside 1..={}", def.order())));
    }
    let d = def.base.dim();
    let (d3, d5) = (d.pow(3), d.pow(5));
    let i = Factor::Id(d);
    let tz = |n: usize| def.t(n).is_zero();
    let dz = |n: usize| def.delta(n).is_zero();

    let lhs1 = convolve(k, 2, d, d5, |_, n| tz(n), |c| {
        eval_pipeline(&[Stage::Kron(vec![Factor::Map(def.t(c[1])), i, i]), Stage::map(def.t(c[0]))], d5)
    })?;
    // slots: outer T, three inner T, two Δ
    let rhs1 = convolve(k, 6, d, d5, |s, n| if s < 4 { tz(n) } else { dz(n) }, |c| {
        let tm = |s: usize| Factor::Map(def.t(c[s]));
        let dm = |s: usize| Factor::Map(def.delta(c[s]));
        eval_pipeline(
            &[
                Stage::Kron(vec![i, i, i, dm(4), dm(5)]),
                Stage::rho(d),
                Stage::Kron(vec![tm(1), tm(2), tm(3)]),
                Stage::map(def.t(c[0])),
            ],
            d5,
        )
    })?;

    let lhs2 = convolve(k, 2, d3, d3, |s, n| if s == 0 { tz(n) } else { dz(n) }, |c| def.delta(c[1]).compose(def.t(c[0])))?;
    let rhs2 = convolve(k, 6, d3, d3, |s, n| if s < 3 { dz(n) } else { tz(n) }, |c| {
        let tm = |s: usize| Factor::Map(def.t(c[s]));
        let dm = |s: usize| Factor::Map(def.delta(c[s]));
        eval_pipeline(&[Stage::Kron(vec![dm(0), dm(1), dm(2)]), Stage::rho(d), Stage::Kron(vec![tm(3), tm(4), tm(5)])], d3)
    })?;

    let lhs3 = convolve(k, 2, d5, d, |_, n| dz(n), |c| {
        eval_pipeline(&[Stage::map(def.delta(c[0])), Stage::Kron(vec![Factor::Map(def.delta(c[1])), i, i])], d)
    })?;
    let rhs3 = convolve(k, 2, d5, d, |_, n| dz(n), |c| {
        eval_pipeline(&[Stage::map(def.delta(c[0])), Stage::Kron(vec![i, i, Factor::Map(def.delta(c[1]))])], d)
    })?;

    Ok(ObstructionTriple { phi1: lhs1.sub(&rhs1)?, phi2: lhs2.sub(&rhs2)?, phi3: lhs3.sub(&rhs3)? })
}

/// Whether the deformation equations hold mod `t^{N+1}`.
pub fn is_valid_mod(def: &TruncatedDeformation) -> Result<bool> {
    for k in 1..=def.order() {
        if !deformation_defect(def, k)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleCheck {
    /// Order of the first nonzero term.
    pub order: usize,
    pub is_cocycle: bool,
    /// Components of `D²(T_p, Δ_p)` that are nonzero.
    pub failing_blocks: Vec<String>,
}

/// `D²(T_p, Δ_p)` for the first nonzero order `p`, evaluated as the defect at `p`; the lower
/// terms vanish, so that defect is linear in `(T_p, Δ_p)`.
pub fn infinitesimal_cocycle_check(def: &TruncatedDeformation) -> Result<CocycleCheck> {
    match def.first_nonzero() {
        None => Ok(CocycleCheck { order: def.order(), is_cocycle: true, failing_blocks: Vec::new() }),
        Some(p) => infinitesimal_cocycle_check_at(def, p),
    }
}

/// As [`infinitesimal_cocycle_check`] at an explicit order `p`; every lower term must be zero.
pub fn infinitesimal_cocycle_check_at(def: &TruncatedDeformation, p: usize) -> Result<CocycleCheck> {
    if let Some(q) = def.first_nonzero().filter(|&q| q < p) {
        return Err(Error::Precondition(format!("term at order {q} is nonzero, below {p}")));
    }
    let defect = deformation_defect(def, p)?;
    let failing: Vec<String> = defect.failing_blocks().into_iter().map(String::from).collect();
    Ok(CocycleCheck { order: p, is_cocycle: failing.is_empty(), failing_blocks: failing })
}

/// `T'_t = Φ_t T_t (Φ_t⁻¹)^{⊗3}` and `Δ'_t = Φ_t^{⊗3} Δ_t Φ_t⁻¹`, truncated at `t^{N+1}`.
/// To first order `(T'₁, Δ'₁) = (T₁, Δ₁) − D¹(Φ₁)`.
pub fn apply_equivalence(phi: &FormalIsomorphism, def: &TruncatedDeformation) -> Result<TruncatedDeformation> {
    if phi.order() != def.order() || phi.dim() != def.base.dim() {
        return Err(Error::Precondition(format!(
            "isomorphism of order {} and dim {} against deformation of order {} and dim {}",
            phi.order(),
            phi.dim(),
            def.order(),
            def.base.dim()
        )));
    }
    let d = phi.dim();
    let (d3, n) = (d.pow(3), def.order());
    let f = phi.series();
    let g = phi.inverse().series();
    let zero = |m: &LinearMap| m.is_zero();
    let mut t_terms = Vec::with_capacity(n);
    let mut delta_terms = Vec::with_capacity(n);
    for k in 1..=n {
        // slots: Φ, T, Ψ, Ψ, Ψ
        t_terms.push(convolve(
            k,
            5,
            d,
            d3,
            |s, i| match s {
                0 => zero(&f[i]),
                1 => def.t(i).is_zero(),
                _ => zero(&g[i]),
            },
            |c| {
                eval_pipeline(
                    &[
                        Stage::Kron(vec![Factor::Map(&g[c[2]]), Factor::Map(&g[c[3]]), Factor::Map(&g[c[4]])]),
                        Stage::map(def.t(c[1])),
                        Stage::map(&f[c[0]]),
                    ],
                    d3,
                )
            },
        )?);
        // slots: Ψ, Δ, Φ, Φ, Φ
        delta_terms.push(convolve(
            k,
            5,
            d3,
            d,
            |s, i| match s {
                0 => zero(&g[i]),
                1 => def.delta(i).is_zero(),
                _ => zero(&f[i]),
            },
            |c| {
                eval_pipeline(
                    &[
                        Stage::map(&g[c[0]]),
                        Stage::map(def.delta(c[1])),
                        Stage::Kron(vec![Factor::Map(&f[c[2]]), Factor::Map(&f[c[3]]), Factor::Map(&f[c[4]])]),
                    ],
                    d,
                )
            },
        )?);
    }
    TruncatedDeformation::new(def.base.clone(), t_terms, delta_terms)
}

/// For the first nonzero order `p`, solves `D¹ g = (T_p, Δ_p)` and returns `id + t^p g`, which
/// [`apply_equivalence`] maps to a deformation vanishing through order `p`. `None` when
/// `(T_p, Δ_p)` is not a coboundary. A deformation with no nonzero term gives the identity.
pub fn trivialize_coboundary(def: &TruncatedDeformation) -> Result<Option<FormalIsomorphism>> {
    let d = def.base.dim();
    let Some(p) = def.first_nonzero() else {
        return Ok(Some(FormalIsomorphism::identity(d, def.order())));
    };
    let d1 = build_d1(&def.base)?;
    let rhs = CochainLayout::new(d).pack(2, &[def.t(p), def.delta(p)])?;
    match solve(&d1, &rhs) {
        None => Ok(None),
        Some(g) => Ok(Some(FormalIsomorphism::monomial(def.order(), p, LinearMap::from_flat_sparse(d, d, &g))?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{apply_d1, build_d2};
    use crate::construct::heap;
    use crate::group::FiniteGroup;
    use crate::linear::bialgebra::linearize_set;
    use crate::linear::matrix::rat;
    use crate::table::TernaryTable;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heap2() -> TernaryBialgebra {
        linearize_set(&heap(&FiniteGroup::cyclic(2))).unwrap()
    }

    fn random_map(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> LinearMap {
        let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
        LinearMap::from_i64(rows, cols, &data).unwrap()
    }

    #[test]
    fn compositions_are_complete() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 4), vec![vec![0; 4]]);
        assert!(compositions(3, 3).iter().all(|c| c.iter().sum::<usize>() == 3));
    }

    #[test]
    fn zero_deformation_is_valid() {
        let def = TruncatedDeformation::trivial(heap2(), 3).unwrap();
        assert!(is_valid_mod(&def).unwrap());
        assert!(deformation_defect(&def, 0).is_err());
        assert!(deformation_defect(&def, 4).is_err());
        assert!(trivialize_coboundary(&def).unwrap().unwrap().phi_terms().iter().all(LinearMap::is_zero));
    }

    #[test]
    fn first_order_defect_is_d2() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let base = heap2();
        let d2 = build_d2(&base).unwrap();
        let layout = CochainLayout::new(2);
        for _ in 0..5 {
            let t1 = random_map(&mut rng, 2, 8);
            let dl1 = random_map(&mut rng, 8, 2);
            let v = layout.pack(2, &[&t1, &dl1]).unwrap();
            let def = TruncatedDeformation::new(base.clone(), vec![t1], vec![dl1]).unwrap();
            assert_eq!(deformation_defect(&def, 1).unwrap().pack(), d2.apply(&v));
        }
    }

    #[test]
    fn rescaling_direction_fails() {
        let base = heap2();
        let def = TruncatedDeformation::operation_only(base.clone(), vec![base.t().clone()]).unwrap();
        let defect = deformation_defect(&def, 1).unwrap();
        let tt = eval_pipeline(&[Stage::Kron(vec![Factor::Map(base.t()), Factor::Id(2), Factor::Id(2)]), Stage::map(base.t())], 32)
            .unwrap();
        assert_eq!(defect.phi1, tt.scale(&rat(-2)));
        assert!(!is_valid_mod(&def).unwrap());
    }

    #[test]
    fn full_coboundary_is_cocycle_and_trivializes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let base = heap2();
        for _ in 0..5 {
            let g = random_map(&mut rng, 2, 2);
            let (a, c) = apply_d1(&base, &g).unwrap();
            let def = TruncatedDeformation::new(base.clone(), vec![a], vec![c]).unwrap();
            assert!(infinitesimal_cocycle_check(&def).unwrap().is_cocycle);
            let phi = trivialize_coboundary(&def).unwrap().expect("coboundary");
            let pushed = apply_equivalence(&phi, &def).unwrap();
            assert_eq!(pushed.first_nonzero(), None);
        }
    }

    #[test]
    fn equivalence_first_order_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let base = heap2();
        let def = TruncatedDeformation::trivial(base.clone(), 2).unwrap();
        let g = random_map(&mut rng, 2, 2);
        let phi = FormalIsomorphism::monomial(2, 1, g.clone()).unwrap();
        let out = apply_equivalence(&phi, &def).unwrap();
        let (a, c) = apply_d1(&base, &g).unwrap();
        assert_eq!(out.t(1), &a.neg());
        assert_eq!(out.delta(1), &c.neg());
        assert!(is_valid_mod(&out).unwrap());
    }

    #[test]
    fn equivalence_is_an_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let base = heap2();
        let def = TruncatedDeformation::new(
            base,
            vec![random_map(&mut rng, 2, 8), random_map(&mut rng, 2, 8)],
            vec![random_map(&mut rng, 8, 2), random_map(&mut rng, 8, 2)],
        )
        .unwrap();
        let f = FormalIsomorphism::new(2, vec![random_map(&mut rng, 2, 2), random_map(&mut rng, 2, 2)]).unwrap();
        let h = FormalIsomorphism::new(2, vec![random_map(&mut rng, 2, 2), random_map(&mut rng, 2, 2)]).unwrap();
        let lhs = apply_equivalence(&f.compose(&h).unwrap(), &def).unwrap();
        let rhs = apply_equivalence(&f, &apply_equivalence(&h, &def).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(apply_equivalence(&FormalIsomorphism::identity(2, 2), &def).unwrap(), def);
        let inv = f.inverse();
        assert_eq!(f.compose(&inv).unwrap(), FormalIsomorphism::identity(2, 2));
    }

    #[test]
    fn cocycle_check_rejects_lower_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let base = linearize_set(&TernaryTable::projection(2)).unwrap();
        let t1 = random_map(&mut rng, 2, 8);
        let def = TruncatedDeformation::operation_only(base, vec![t1, LinearMap::zeros(2, 8)]).unwrap();
        assert!(infinitesimal_cocycle_check_at(&def, 2).is_err());
        let check = infinitesimal_cocycle_check(&def).unwrap();
        assert_eq!(check.order, 1);
        assert_eq!(check.is_cocycle, check.failing_blocks.is_empty());
    }

    #[test]
    fn shape_validation() {
        let base = heap2();
        assert!(TruncatedDeformation::new(base.clone(), vec![], vec![]).is_err());
        assert!(TruncatedDeformation::operation_only(base, vec![LinearMap::zeros(2, 2)]).is_err());
        assert!(FormalIsomorphism::monomial(2, 3, LinearMap::zeros(2, 2)).is_err());
    }
}
