use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qra_coop::equivalence::{
    degenerate_blocks, evaluate_max, misplaced_third_block, prove_j2_ordering_invariance,
    prove_ordering_invariance, prove_swap13, symbolic_blocks, symbolic_equal, Point,
};
use qra_coop::gates::{entangler_blocks, serial, swap_general};
use qra_coop::oracle::qra_to_matrix;
use qra_coop::{Angle, Multivector, TrigPoly};

#[test]
fn every_ordering_gives_the_same_element() {
    let proof = prove_j2_ordering_invariance().unwrap();
    assert_eq!(proof.orderings.len(), 6);
    assert!(proof.all_equal());
    for r in proof.operator_reports.iter().chain(&proof.state_reports) {
        assert!(r.residual.is_zero());
    }
}

/// Numeric operator built from the same blocks, ordered by `perm`.
fn numeric_product(perm: [usize; 3], g: [f64; 3]) -> qra_coop::oracle::DenseOperator {
    let blocks = entangler_blocks::<f64>(
        &Angle::radians(g[0]),
        &Angle::radians(g[1]),
        &Angle::radians(g[2]),
    )
    .unwrap();
    let product = serial(&perm.map(|k| blocks[k].clone())).unwrap();
    qra_to_matrix(&product).unwrap()
}

#[test]
fn symbolic_equality_is_sound_numerically() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..20 {
        let g: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.0..=std::f64::consts::FRAC_PI_2));
        let reference = numeric_product([0, 1, 2], g);
        for perm in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let d = numeric_product(perm, g).max_abs_diff(&reference).unwrap();
            assert!(d <= 1e-10, "{perm:?} at {g:?}: {d}");
        }
    }
}

#[test]
fn residual_vanishes_at_random_points() {
    let [a, b, c] = symbolic_blocks().unwrap();
    let lhs = serial(&[a.clone(), b.clone(), c.clone()]).unwrap();
    let rhs = serial(&[c, a, b]).unwrap();
    let raw: Multivector<TrigPoly> = lhs.element().try_sub(rhs.element()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let point: Point = ["g12", "g13", "g23"]
            .iter()
            .map(|n| (n.to_string(), rng.gen_range(0.0..=std::f64::consts::FRAC_PI_2)))
            .collect();
        assert!(evaluate_max(&raw, &point).unwrap() <= 1e-10);
    }
}

#[test]
fn degenerate_and_misplaced_variants_still_commute() {
    assert!(prove_ordering_invariance(&degenerate_blocks().unwrap())
        .unwrap()
        .all_equal());
    let misplaced = prove_ordering_invariance(&misplaced_third_block().unwrap()).unwrap();
    assert!(misplaced.all_equal());
}

#[test]
fn misplaced_block_is_a_different_circuit() {
    let [_, _, c] = symbolic_blocks().unwrap();
    let [_, _, wrong] = misplaced_third_block().unwrap();
    let r = symbolic_equal(&c, &wrong).unwrap();
    assert!(!r.equal);
    assert!(r.witness.is_some());
}

#[test]
fn general_swap_equals_adjacent_composition() {
    assert!(prove_swap13(&swap_general(1, 3, 3).unwrap()).unwrap().equal);
}
