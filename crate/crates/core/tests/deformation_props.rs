use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ternary_core::cohomology::{apply_d1, cohomology_report, delta_c, delta_m, CochainLayout, DifferentialPair};
use ternary_core::construct::heap;
use ternary_core::deform::{
    apply_equivalence, deformation_defect, infinitesimal_cocycle_check, is_valid_mod, trivialize_coboundary,
    FormalIsomorphism, TruncatedDeformation,
};
use ternary_core::linear::bialgebra::{linearize_set, TernaryBialgebra};
use ternary_core::linear::solve::{nullspace, solve};
use ternary_core::linear::{rat, LinearMap, SparseVec};
use ternary_core::FiniteGroup;

fn heap2() -> TernaryBialgebra {
    linearize_set(&heap(&FiniteGroup::cyclic(2))).unwrap()
}

fn random_map(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> LinearMap {
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
    LinearMap::from_i64(rows, cols, &data).unwrap()
}

/// Random integer combination of a kernel basis of `D²`.
fn random_cocycle(rng: &mut ChaCha8Rng, kernel: &[SparseVec]) -> SparseVec {
    let mut acc = ternary_core::linear::matrix::Accumulator::new();
    for v in kernel {
        let k = rat(rng.gen_range(-2..=2));
        for (i, x) in v {
            acc.add(*i, &(x * &k));
        }
    }
    acc.finish()
}

#[test]
fn equivalence_preserves_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let base = heap2();
    let layout = CochainLayout::new(2);
    let kernel = nullspace(&DifferentialPair::new(&base).unwrap().d2);
    assert!(!kernel.is_empty());
    for _ in 0..20 {
        let parts = layout.unpack(2, &random_cocycle(&mut rng, &kernel));
        let def = TruncatedDeformation::new(base.clone(), vec![parts[0].clone()], vec![parts[1].clone()]).unwrap();
        assert!(is_valid_mod(&def).unwrap());
        assert!(infinitesimal_cocycle_check(&def).unwrap().is_cocycle);
        let phi = FormalIsomorphism::new(2, vec![random_map(&mut rng, 2, 2)]).unwrap();
        assert!(is_valid_mod(&apply_equivalence(&phi, &def).unwrap()).unwrap());
    }
}

#[test]
fn operation_only_coboundary_defect_comes_from_the_coalgebra_part() {
    // D²D¹ = 0 gives D²(δ¹ₘ g, 0) = D²(0, δ¹꜀ g)
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let base = heap2();
    for _ in 0..10 {
        let g = random_map(&mut rng, 2, 2);
        let op = TruncatedDeformation::operation_only(base.clone(), vec![delta_m(&base, &g).unwrap()]).unwrap();
        let co = TruncatedDeformation::new(base.clone(), vec![LinearMap::zeros(2, 8)], vec![delta_c(&base, &g).unwrap()])
            .unwrap();
        assert_eq!(deformation_defect(&op, 1).unwrap(), deformation_defect(&co, 1).unwrap());
    }
}

#[test]
fn trivialization_clears_orders_up_to_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let base = heap2();
    for _ in 0..5 {
        let g = random_map(&mut rng, 2, 2);
        let (a, c) = apply_d1(&base, &g).unwrap();
        let def = TruncatedDeformation::new(
            base.clone(),
            vec![LinearMap::zeros(2, 8), a, random_map(&mut rng, 2, 8)],
            vec![LinearMap::zeros(8, 2), c, random_map(&mut rng, 8, 2)],
        )
        .unwrap();
        let phi = trivialize_coboundary(&def).unwrap().expect("coboundary at order 2");
        let out = apply_equivalence(&phi, &def).unwrap();
        for k in 1..=2 {
            assert!(out.t(k).is_zero() && out.delta(k).is_zero());
        }
    }
}

#[test]
fn cocycles_outside_the_image_are_not_trivialized() {
    let base = heap2();
    let report = cohomology_report(&base).unwrap();
    let pair = DifferentialPair::new(&base).unwrap();
    let layout = CochainLayout::new(2);
    let outside: Vec<SparseVec> = nullspace(&pair.d2).into_iter().filter(|v| solve(&pair.d1, v).is_none()).collect();
    assert_eq!(outside.is_empty(), report.dim_h2 == 0);
    for v in outside {
        let parts = layout.unpack(2, &v);
        let def = TruncatedDeformation::new(base.clone(), vec![parts[0].clone()], vec![parts[1].clone()]).unwrap();
        assert!(infinitesimal_cocycle_check(&def).unwrap().is_cocycle);
        assert!(trivialize_coboundary(&def).unwrap().is_none());
    }
}

#[test]
fn cocycle_check_matches_validity_at_first_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let base = heap2();
    for _ in 0..20 {
        let def =
            TruncatedDeformation::new(base.clone(), vec![random_map(&mut rng, 2, 8)], vec![random_map(&mut rng, 8, 2)]).unwrap();
        let check = infinitesimal_cocycle_check(&def).unwrap();
        assert_eq!(check.is_cocycle, is_valid_mod(&def).unwrap());
        if !check.is_cocycle {
            assert!(!check.failing_blocks.is_empty());
        }
    }
}
