use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{rat, LinearMap, Rational};
use super::tensor::{eval_pipeline, Factor, Stage};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::is_shelf;
use crate::table::TernaryTable;

fn cube(d: usize) -> usize {
    d * d * d
}

fn require_shape(m: &LinearMap, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "{what} should be {rows}x{cols}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn dim_of_ternary(t: &LinearMap) -> Result<usize> {
    let d = t.rows();
    require_shape(t, d, cube(d), "ternary operation")?;
    Ok(d)
}

/// Group-like comultiplication `b ↦ b⊗b⊗b`.
pub fn group_like_delta(dim: usize) -> LinearMap {
    let images: Vec<Option<usize>> = (0..dim).map(|b| Some((b * dim + b) * dim + b)).collect();
    LinearMap::from_basis_images(cube(dim), &images)
}

/// Counit with `ε(b) = 1` on every basis vector.
pub fn constant_counit(dim: usize) -> LinearMap {
    LinearMap::from_fn(1, dim, |_, _| Rational::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoassocReport {
    pub total: bool,
    pub weak: bool,
    pub counital: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssocReport {
    pub total: bool,
    pub weak: bool,
    /// `T(η⊗η⊗id) = T(η⊗id⊗η) = T(id⊗η⊗η) = id`, when a unit is supplied.
    pub unit: Option<bool>,
}

/// Ternary coalgebra `Δ: A → A⊗A⊗A` with counit `ε: A → K`; flags are computed, never supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    dim: usize,
    delta: LinearMap,
    epsilon: LinearMap,
    report: CoassocReport,
}

impl Coalgebra {
    pub fn new(delta: LinearMap, epsilon: LinearMap) -> Result<Self> {
        let report = check_coassoc(&delta, &epsilon)?;
        Ok(Self { dim: delta.cols(), delta, epsilon, report })
    }

    pub fn group_like(dim: usize) -> Self {
        Self::new(group_like_delta(dim), constant_counit(dim)).expect("shapes agree")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    pub fn epsilon(&self) -> &LinearMap {
        &self.epsilon
    }

    pub fn coassociative(&self) -> bool {
        self.report.total
    }

    pub fn weak_coassociative(&self) -> bool {
        self.report.weak
    }

    pub fn counital(&self) -> bool {
        self.report.counital
    }

    pub fn report(&self) -> CoassocReport {
        self.report
    }
}

/// `(Δ⊗id⊗id)Δ = (id⊗Δ⊗id)Δ = (id⊗id⊗Δ)Δ` (total), the outer equality alone (weak), and the
/// three counit laws `(ε⊗ε⊗id)Δ = (ε⊗id⊗ε)Δ = (id⊗ε⊗ε)Δ = id`.
pub fn check_coassoc(delta: &LinearMap, epsilon: &LinearMap) -> Result<CoassocReport> {
    let d = delta.cols();
    require_shape(delta, cube(d), d, "comultiplication")?;
    require_shape(epsilon, 1, d, "counit")?;
    let (dl, id) = (Factor::Map(delta), Factor::Id(d));
    let side = |fs: Vec<Factor>| eval_pipeline(&[Stage::map(delta), Stage::Kron(fs)], d);
    let l1 = side(vec![dl, id, id])?;
    let l2 = side(vec![id, dl, id])?;
    let l3 = side(vec![id, id, dl])?;
    let e = Factor::Map(epsilon);
    let ident = LinearMap::identity(d);
    let counital = [vec![e, e, id], vec![e, id, e], vec![id, e, e]]
        .into_iter()
        .map(side)
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|m| *m == ident);
    Ok(CoassocReport { total: l1 == l2 && l2 == l3, weak: l1 == l3, counital })
}

/// `T(T⊗id⊗id) = T(id⊗T⊗id) = T(id⊗id⊗T)` (total) and the outer equality alone (weak).
pub fn check_ternary_assoc(t: &LinearMap, eta: Option<&LinearMap>) -> Result<AssocReport> {
    let d = dim_of_ternary(t)?;
    let (tm, id) = (Factor::Map(t), Factor::Id(d));
    let side = |fs: Vec<Factor>| eval_pipeline(&[Stage::Kron(fs), Stage::map(t)], d.pow(5));
    let m1 = side(vec![tm, id, id])?;
    let m2 = side(vec![id, tm, id])?;
    let m3 = side(vec![id, id, tm])?;
    let unit = match eta {
        None => None,
        Some(eta) => {
            require_shape(eta, d, 1, "unit")?;
            let e = Factor::Map(eta);
            let ident = LinearMap::identity(d);
            let mut ok = true;
            for fs in [vec![e, e, id], vec![e, id, e], vec![id, e, e]] {
                ok &= eval_pipeline(&[Stage::Kron(fs), Stage::map(t)], d)? == ident;
            }
            Some(ok)
        }
    };
    Ok(AssocReport { total: m1 == m2 && m2 == m3, weak: m1 == m3, unit })
}

/// `T(T⊗id⊗id)` on `A^{⊗5}`.
pub fn distributivity_lhs(t: &LinearMap) -> Result<LinearMap> {
    let d = dim_of_ternary(t)?;
    eval_pipeline(&[Stage::Kron(vec![Factor::Map(t), Factor::Id(d), Factor::Id(d)]), Stage::map(t)], d.pow(5))
}

/// `T(T⊗T⊗T)P_ρ(id⊗id⊗id⊗Δ⊗Δ)` on `A^{⊗5}`.
pub fn distributivity_rhs(t: &LinearMap, delta: &LinearMap) -> Result<LinearMap> {
    let d = dim_of_ternary(t)?;
    require_shape(delta, cube(d), d, "comultiplication")?;
    let (id, dl, tm) = (Factor::Id(d), Factor::Map(delta), Factor::Map(t));
    eval_pipeline(
        &[Stage::Kron(vec![id, id, id, dl, dl]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm]), Stage::map(t)],
        d.pow(5),
    )
}

/// First basis 5-tuple on which `T(T⊗id⊗id)` and `T(T⊗T⊗T)P_ρ(id⊗id⊗id⊗Δ⊗Δ)` differ.
pub fn linear_distributivity_witness(t: &LinearMap, delta: &LinearMap) -> Result<Option<[usize; 5]>> {
    let d = dim_of_ternary(t)?;
    let lhs = distributivity_lhs(t)?;
    let rhs = distributivity_rhs(t, delta)?;
    Ok(lhs.first_difference(&rhs).map(|(_, c)| {
        let mut out = [0usize; 5];
        let mut r = c;
        for s in (0..5).rev() {
            out[s] = r % d;
            r /= d;
        }
        out
    }))
}

pub fn check_linear_distributive(t: &LinearMap, delta: &LinearMap) -> Result<bool> {
    Ok(linear_distributivity_witness(t, delta)?.is_none())
}

/// First basis triple on which `Δ∘T` and `(T⊗T⊗T)P_ρ(Δ⊗Δ⊗Δ)` differ.
pub fn compatibility_witness(t: &LinearMap, delta: &LinearMap) -> Result<Option<[usize; 3]>> {
    let d = dim_of_ternary(t)?;
    require_shape(delta, cube(d), d, "comultiplication")?;
    let lhs = eval_pipeline(&[Stage::map(t), Stage::map(delta)], cube(d))?;
    let (dl, tm) = (Factor::Map(delta), Factor::Map(t));
    let rhs = eval_pipeline(&[Stage::Kron(vec![dl, dl, dl]), Stage::rho(d), Stage::Kron(vec![tm, tm, tm])], cube(d))?;
    Ok(lhs.first_difference(&rhs).map(|(_, c)| [c / (d * d), (c / d) % d, c % d]))
}

pub fn check_compatibility(t: &LinearMap, delta: &LinearMap) -> Result<bool> {
    Ok(compatibility_witness(t, delta)?.is_none())
}

/// A ternary operation `T: A^{⊗3} → A` with a coalgebra and an optional unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryBialgebra {
    dim: usize,
    t: LinearMap,
    coalgebra: Coalgebra,
    eta: Option<LinearMap>,
}

impl TernaryBialgebra {
    pub fn new(t: LinearMap, coalgebra: Coalgebra, eta: Option<LinearMap>) -> Result<Self> {
        let d = dim_of_ternary(&t)?;
        if coalgebra.dim() != d {
            return Err(Error::DimensionMismatch(format!("operation on dim {d}, coalgebra on dim {}", coalgebra.dim())));
        }
        if let Some(e) = &eta {
            require_shape(e, d, 1, "unit")?;
        }
        Ok(Self { dim: d, t, coalgebra, eta })
    }

    pub fn from_maps(t: LinearMap, delta: LinearMap, epsilon: LinearMap) -> Result<Self> {
        Self::new(t, Coalgebra::new(delta, epsilon)?, None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t(&self) -> &LinearMap {
        &self.t
    }

    pub fn delta(&self) -> &LinearMap {
        self.coalgebra.delta()
    }

    pub fn epsilon(&self) -> &LinearMap {
        self.coalgebra.epsilon()
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn eta(&self) -> Option<&LinearMap> {
        self.eta.as_ref()
    }

    pub fn is_distributive(&self) -> bool {
        check_linear_distributive(&self.t, self.delta()).expect("shapes checked at construction")
    }

    pub fn is_compatible(&self) -> bool {
        check_compatibility(&self.t, self.delta()).expect("shapes checked at construction")
    }

    pub fn assoc_report(&self) -> AssocReport {
        check_ternary_assoc(&self.t, self.eta.as_ref()).expect("shapes checked at construction")
    }
}

/// Linearization of any ternary table: basis triples map to basis vectors, group-like `Δ`, `ε ≡ 1`.
pub fn linearize_table(t: &TernaryTable) -> TernaryBialgebra {
    let n = t.order();
    let images: Vec<Option<usize>> = (0..cube(n)).map(|i| Some(t.get(i / (n * n), (i / n) % n, i % n))).collect();
    let op = LinearMap::from_basis_images(n, &images);
    TernaryBialgebra::new(op, Coalgebra::group_like(n), None).expect("shapes agree")
}

/// Linearization of a ternary shelf.
pub fn linearize_set(t: &TernaryTable) -> Result<TernaryBialgebra> {
    if !is_shelf(t) {
        return Err(Error::Precondition("linearization needs a ternary shelf".into()));
    }
    Ok(linearize_table(t))
}

/// `K[G]` with `T(g,h,k) = g h⁻¹ k`, group-like `Δ`, `ε ≡ 1`, unit `η(1) = e`.
pub fn group_algebra_bialgebra(g: &FiniteGroup) -> TernaryBialgebra {
    let n = g.order();
    let images: Vec<Option<usize>> =
        (0..cube(n)).map(|i| Some(g.mul(g.mul(i / (n * n), g.inv((i / n) % n)), i % n))).collect();
    let op = LinearMap::from_basis_images(n, &images);
    let eta = LinearMap::from_basis_images(n, &[Some(g.identity())]);
    TernaryBialgebra::new(op, Coalgebra::group_like(n), Some(eta)).expect("shapes agree")
}

/// Functions on `G` in the basis of indicators: `Δ(δ_h) = Σ_{uvw=h} δ_u⊗δ_v⊗δ_w`, `ε(δ_h) = [h = e]`.
pub fn function_algebra_coalgebra(g: &FiniteGroup) -> Coalgebra {
    let n = g.order();
    let delta = LinearMap::from_fn(cube(n), n, |r, h| {
        let (u, v, w) = (r / (n * n), (r / n) % n, r % n);
        if g.mul(g.mul(u, v), w) == h {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let eps = LinearMap::from_basis_images(1, &(0..n).map(|h| (h == g.identity()).then_some(0)).collect::<Vec<_>>());
    Coalgebra::new(delta, eps).expect("shapes agree")
}

/// The extension `W = K·1 ⊕ K[X]` of a shelf together with the counit defect `ε∘q − ε⊗ε⊗ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedConstruction {
    pub bialgebra: TernaryBialgebra,
    pub counit_defect: LinearMap,
}

/// `q(x⊗y⊗z) = T(x,y,z)`, `q(1⊗1⊗x) = 1`, `q = 0` on every other basis triple; basis index 0 is `1`.
/// `Δ` is group-like on all basis vectors and `ε ≡ 1`.
pub fn augmented_construction(t: &TernaryTable) -> Result<AugmentedConstruction> {
    if !is_shelf(t) {
        return Err(Error::Precondition("augmented construction needs a ternary shelf".into()));
    }
    let n = t.order();
    let d = n + 1;
    let images: Vec<Option<usize>> = (0..cube(d))
        .map(|i| {
            let (a, b, c) = (i / (d * d), (i / d) % d, i % d);
            match (a, b, c) {
                (0, 0, c) if c > 0 => Some(0),
                (a, b, c) if a > 0 && b > 0 && c > 0 => Some(t.get(a - 1, b - 1, c - 1) + 1),
                _ => None,
            }
        })
        .collect();
    let q = LinearMap::from_basis_images(d, &images);
    let eps = constant_counit(d);
    let eps3 = LinearMap::kron_all(&[&eps, &eps, &eps]);
    let counit_defect = eps.compose(&q)?.sub(&eps3)?;
    let bialgebra = TernaryBialgebra::new(q, Coalgebra::group_like(d), None)?;
    Ok(AugmentedConstruction { bialgebra, counit_defect })
}

/// `T` supported on one basis triple: `T(e_a⊗e_b⊗e_c) = value`, zero elsewhere.
pub fn single_entry_ternary(d: usize, triple: [usize; 3], value: &[(usize, i64)]) -> LinearMap {
    let idx = (triple[0] * d + triple[1]) * d + triple[2];
    LinearMap::from_fn(d, cube(d), |r, c| {
        if c == idx {
            value.iter().find(|(i, _)| *i == r).map_or_else(Rational::zero, |(_, v)| rat(*v))
        } else {
            Rational::zero()
        }
    })
}
